#pragma once

// Piecewise-constant complex functions on the dyadic grid of [0, L), the
// (lambda, beta) parameter pair, the projection P_0 and CSV serialization.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/core.hpp"

namespace dyadic {

using complex = std::complex<double>;

/// Complex values on the L 2^J cells of width 2^-J covering [0, L).
class GridFunction {
public:
    GridFunction() : GridFunction(0, 1) {}

    GridFunction(int resolution, std::int64_t domain_length)
        : resolution_(resolution), domain_length_(domain_length) {
        validate_shape(resolution, domain_length);
        values_.assign(static_cast<std::size_t>(domain_length << resolution), complex{});
    }

    GridFunction(int resolution, std::int64_t domain_length, std::vector<complex> values)
        : resolution_(resolution), domain_length_(domain_length), values_(std::move(values)) {
        validate_shape(resolution, domain_length);
        if (values_.size() != static_cast<std::size_t>(domain_length << resolution))
            throw usage_error("GridFunction: expected " + std::to_string(domain_length << resolution) +
                              " values, got " + std::to_string(values_.size()));
    }

    /// Samples fn at the left endpoint of every cell.
    template <class Fn>
    static GridFunction sample(int resolution, std::int64_t domain_length, Fn&& fn) {
        GridFunction g(resolution, domain_length);
        for (std::size_t i = 0; i < g.values_.size(); ++i)
            g.values_[i] = complex(fn(std::ldexp(static_cast<double>(i), -resolution)));
        return g;
    }

    int resolution() const { return resolution_; }
    std::int64_t domain_length() const { return domain_length_; }
    std::size_t size() const { return values_.size(); }
    std::size_t cells_per_unit() const { return std::size_t{1} << resolution_; }
    double cell_width() const { return pow2(-resolution_); }

    std::span<const complex> values() const { return values_; }
    const complex& operator[](std::size_t i) const { return values_[i]; }

    bool same_grid(const GridFunction& o) const {
        return resolution_ == o.resolution_ && domain_length_ == o.domain_length_;
    }

    /// Largest cell magnitude; the reference scale for tolerances.
    double scale() const {
        double s = 0.0;
        for (const auto& v : values_) s = std::max(s, std::abs(v));
        return s;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const auto& v : values_) s += std::norm(v);
        return std::sqrt(s * cell_width());
    }

    /// P_0 f = 0 up to tol * scale on every unit interval.
    bool mean_zero_per_unit(double tol = 1e-12) const {
        const std::size_t m = cells_per_unit();
        const double bound = tol * std::max(scale(), 1e-300) * static_cast<double>(m);
        for (std::size_t u = 0; u < static_cast<std::size_t>(domain_length_); ++u) {
            complex s{};
            for (std::size_t i = u * m; i < (u + 1) * m; ++i) s += values_[i];
            if (std::abs(s) > bound) return false;
        }
        return true;
    }

    GridFunction& operator+=(const GridFunction& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    GridFunction& operator*=(complex a) {
        for (auto& v : values_) v *= a;
        return *this;
    }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(complex s, GridFunction a) { return a *= s; }

private:
    static void validate_shape(int resolution, std::int64_t domain_length) {
        if (resolution < 0 || resolution > 30) throw usage_error("resolution must be in [0, 30]");
        if (!is_power_of_two(domain_length)) throw usage_error("domain length must be a power of two");
        if ((domain_length << resolution) > (std::int64_t{1} << 32))
            throw usage_error("grid too large");
    }
    void require_same_grid(const GridFunction& o) const {
        if (!same_grid(o)) throw usage_error("grid functions live on different grids");
    }

    int resolution_;
    std::int64_t domain_length_;
    std::vector<complex> values_;
};

/// max_i |a_i - b_i|.
inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    if (!a.same_grid(b)) throw usage_error("grid functions live on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Smoothness lambda and operator order beta with 0 < beta < lambda < 1.
class BesovParams {
public:
    BesovParams(double lambda, double beta) : lambda_(lambda), beta_(beta) {
        if (!(beta > 0.0 && beta < lambda && lambda < 1.0))
            throw usage_error("need 0 < beta < lambda < 1 (got lambda=" + std::to_string(lambda) +
                              ", beta=" + std::to_string(beta) + ")");
    }

    double lambda() const { return lambda_; }
    double beta() const { return beta_; }

    /// 2 / (2^(2 lambda) - 1).
    double c_lambda() const { return 2.0 / (std::pow(2.0, 2.0 * lambda_) - 1.0); }

    /// 1 / (2^(2 lambda) - 1): the constant that enters the exact Haar weight.
    double cross_constant() const { return c_lambda() / 2.0; }

    /// 2 sum_j 2^-(lambda-beta) j = 2^(lambda-beta+1) / (2^(lambda-beta) - 1).
    double c_max() const {
        const double g = std::pow(2.0, lambda_ - beta_);
        return 2.0 * g / (g - 1.0);
    }

    /// 2 * 2^(lambda-beta) / (1 - 2^-(lambda-beta)), the rate-bound constant.
    double rate_constant() const {
        const double g = std::pow(2.0, lambda_ - beta_);
        return 2.0 * g / (1.0 - 1.0 / g);
    }

private:
    double lambda_;
    double beta_;
};

/// Projection onto functions constant on each unit interval.
inline GridFunction project_P0(const GridFunction& f) {
    const std::size_t m = f.cells_per_unit();
    std::vector<complex> out(f.size());
    for (std::size_t u = 0; u < static_cast<std::size_t>(f.domain_length()); ++u) {
        complex s{};
        for (std::size_t i = u * m; i < (u + 1) * m; ++i) s += f[i];
        s /= static_cast<double>(m);
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(u * m),
                  out.begin() + static_cast<std::ptrdiff_t>((u + 1) * m), s);
    }
    return {f.resolution(), f.domain_length(), std::move(out)};
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Parses "# <kind> v1 J=<int> L=<int>".
inline std::pair<int, std::int64_t> parse_header(const std::string& line, const std::string& kind) {
    std::istringstream in(line);
    std::string hash, k, version, jtok, ltok, extra;
    if (!(in >> hash >> k >> version >> jtok >> ltok) || (in >> extra) || hash != "#" || k != kind ||
        version != "v1" || jtok.rfind("J=", 0) != 0 || ltok.rfind("L=", 0) != 0)
        throw format_error("bad " + kind + " header: '" + line + "'");
    try {
        std::size_t used = 0;
        const int J = std::stoi(jtok.substr(2), &used);
        if (used != jtok.size() - 2) throw format_error("bad J");
        const std::int64_t L = std::stoll(ltok.substr(2), &used);
        if (used != ltok.size() - 2) throw format_error("bad L");
        if (J < 0 || J > 30) throw format_error("J out of range in header");
        if (!is_power_of_two(L)) throw format_error("L is not a power of two: " + ltok.substr(2));
        return {J, L};
    } catch (const std::logic_error&) {
        throw format_error("bad " + kind + " header: '" + line + "'");
    }
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw format_error("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw format_error("bad number '" + s + "'");
    }
}

inline std::int64_t parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(s, &used);
        if (used != s.size()) throw format_error("trailing characters in integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw format_error("bad integer '" + s + "'");
    }
}

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace detail

// CSV: "# gridfunction v1 J=<int> L=<int>" then "index,re,im" per cell.

inline void write_csv(const GridFunction& f, std::ostream& out) {
    out << "# gridfunction v1 J=" << f.resolution() << " L=" << f.domain_length() << '\n';
    for (std::size_t i = 0; i < f.size(); ++i)
        out << i << ',' << detail::format_double(f[i].real()) << ','
            << detail::format_double(f[i].imag()) << '\n';
}

inline GridFunction read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw format_error("empty gridfunction file");
    const auto [J, L] = detail::parse_header(detail::strip_cr(line), "gridfunction");
    const std::size_t n = static_cast<std::size_t>(L << J);
    std::vector<complex> values;
    values.reserve(n);
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 3) throw format_error("expected 'index,re,im': '" + line + "'");
        if (detail::parse_int(fields[0]) != static_cast<std::int64_t>(values.size()))
            throw format_error("cell indices must be 0..n-1 in order");
        if (values.size() == n) throw format_error("more rows than L*2^J");
        values.emplace_back(detail::parse_double(fields[1]), detail::parse_double(fields[2]));
    }
    if (values.size() != n)
        throw format_error("value count mismatch: header implies " + std::to_string(n) + ", found " +
                           std::to_string(values.size()));
    return {J, L, std::move(values)};
}

inline void write_csv(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot open '" + path + "' for writing");
    write_csv(f, out);
}

inline GridFunction read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open '" + path + "'");
    return read_csv(in);
}

}  // namespace dyadic
