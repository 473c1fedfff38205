#pragma once

// Haar analysis and synthesis on the dyadic grid.
//
// h_I = |I|^-1/2 (X_{I-} - X_{I+}) is positive on the LEFT half of I. A grid
// function of resolution J on [0, L) is represented exactly by its unit
// means (the P_0 part) and the detail coefficients <f, h^j_k> for 0 <= j < J.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "dyadic/core.hpp"
#include "dyadic/grid.hpp"

namespace dyadic {

/// Coarse (per unit) means plus detail coefficients stored level-major:
/// level j occupies L 2^j consecutive slots, ordered by position.
class HaarCoefficients {
public:
    HaarCoefficients() : HaarCoefficients(0, 1) {}

    HaarCoefficients(int resolution, std::int64_t domain_length)
        : resolution_(resolution), domain_length_(domain_length) {
        GridFunction probe(resolution, domain_length);  // validates the shape
        coarse_.assign(static_cast<std::size_t>(domain_length), complex{});
        detail_.assign(static_cast<std::size_t>(domain_length * ((std::int64_t{1} << resolution) - 1)),
                       complex{});
    }

    int resolution() const { return resolution_; }
    std::int64_t domain_length() const { return domain_length_; }

    std::size_t level_size(int level) const { return static_cast<std::size_t>(domain_length_) << level; }
    std::size_t level_offset(int level) const {
        return static_cast<std::size_t>(domain_length_) * ((std::size_t{1} << level) - 1);
    }

    std::span<complex> coarse() { return coarse_; }
    std::span<const complex> coarse() const { return coarse_; }

    std::span<complex> level(int j) {
        check_level(j);
        return std::span<complex>(detail_).subspan(level_offset(j), level_size(j));
    }
    std::span<const complex> level(int j) const {
        check_level(j);
        return std::span<const complex>(detail_).subspan(level_offset(j), level_size(j));
    }

    std::span<complex> detail() { return detail_; }
    std::span<const complex> detail() const { return detail_; }

    /// Coefficient of h^j_k (k is 1-based).
    complex& at(int j, std::int64_t k) { return detail_[index(j, k)]; }
    const complex& at(int j, std::int64_t k) const { return detail_[index(j, k)]; }
    complex& at(const DyadicInterval& I) { return at(I.level(), I.position()); }
    const complex& at(const DyadicInterval& I) const { return at(I.level(), I.position()); }

    bool coarse_is_zero(double tol = 0.0) const {
        double s = 0.0;
        for (const auto& v : detail_) s = std::max(s, std::abs(v));
        for (const auto& v : coarse_) s = std::max(s, std::abs(v));
        for (const auto& v : coarse_)
            if (std::abs(v) > tol * s) return false;
        return true;
    }

    /// Sum of squared moduli of all coefficients (= ||f||^2 by Parseval).
    double energy() const {
        double s = 0.0;
        for (const auto& v : coarse_) s += std::norm(v);
        for (const auto& v : detail_) s += std::norm(v);
        return s;
    }

    /// fn(level, position, coefficient) over all detail slots, level-major.
    template <class Fn>
    void for_each_detail(Fn&& fn) const {
        for (int j = 0; j < resolution_; ++j) {
            const auto lv = level(j);
            for (std::size_t p = 0; p < lv.size(); ++p) fn(j, static_cast<std::int64_t>(p) + 1, lv[p]);
        }
    }

    bool same_shape(const HaarCoefficients& o) const {
        return resolution_ == o.resolution_ && domain_length_ == o.domain_length_;
    }

    HaarCoefficients& operator+=(const HaarCoefficients& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < coarse_.size(); ++i) coarse_[i] += o.coarse_[i];
        for (std::size_t i = 0; i < detail_.size(); ++i) detail_[i] += o.detail_[i];
        return *this;
    }
    HaarCoefficients& operator*=(complex a) {
        for (auto& v : coarse_) v *= a;
        for (auto& v : detail_) v *= a;
        return *this;
    }
    friend HaarCoefficients operator+(HaarCoefficients a, const HaarCoefficients& b) { return a += b; }
    friend HaarCoefficients operator*(complex s, HaarCoefficients a) { return a *= s; }

private:
    void check_level(int j) const {
        if (j < 0 || j >= resolution_) throw usage_error("detail level out of range");
    }
    std::size_t index(int j, std::int64_t k) const {
        check_level(j);
        if (k < 1 || static_cast<std::size_t>(k) > level_size(j))
            throw usage_error("dyadic position outside the domain");
        return level_offset(j) + static_cast<std::size_t>(k - 1);
    }
    void require_same_shape(const HaarCoefficients& o) const {
        if (!same_shape(o)) throw usage_error("coefficient sets have different shapes");
    }

    int resolution_;
    std::int64_t domain_length_;
    std::vector<complex> coarse_;
    std::vector<complex> detail_;
};

/// h_I on the cell x. Throws resolution_error when the cell straddles the
/// midpoint or an endpoint of I.
inline double haar_eval(const DyadicInterval& I, const GridPoint& x) {
    const double a = x.left();
    const double b = a + x.width();
    if (b <= I.left() || a >= I.right()) return 0.0;
    const double amp = std::pow(2.0, 0.5 * I.level());
    const DyadicInterval lo = I.left_half();
    const DyadicInterval hi = I.right_half();
    if (a >= lo.left() && b <= lo.right()) return amp;
    if (a >= hi.left() && b <= hi.right()) return -amp;
    throw resolution_error("grid cell straddles a half of the Haar interval");
}

/// h_I sampled on the grid (J > j(I) required).
inline GridFunction haar_function(const DyadicInterval& I, int resolution, std::int64_t domain_length) {
    if (I.level() >= resolution) throw resolution_error("Haar function finer than the grid");
    GridFunction probe(resolution, domain_length);
    std::vector<complex> v(probe.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = haar_eval(I, GridPoint{resolution, static_cast<std::int64_t>(i)});
    return {resolution, domain_length, std::move(v)};
}

/// Exact Haar coefficients of a grid function by the pairwise-average cascade.
inline HaarCoefficients analyze(const GridFunction& f) {
    const int J = f.resolution();
    HaarCoefficients c(J, f.domain_length());
    std::vector<complex> avg(f.values().begin(), f.values().end());
    for (int j = J - 1; j >= 0; --j) {
        auto lv = c.level(j);
        const double s = std::pow(2.0, -0.5 * j) / 2.0;  // |I|^{1/2} / 2
        for (std::size_t p = 0; p < lv.size(); ++p) {
            const complex l = avg[2 * p];
            const complex r = avg[2 * p + 1];
            lv[p] = s * (l - r);
            avg[p] = (l + r) / 2.0;
        }
    }
    auto coarse = c.coarse();
    for (std::size_t u = 0; u < coarse.size(); ++u) coarse[u] = avg[u];
    return c;
}

/// Inverse of analyze; levels above max_level are treated as zero and the
/// coarse part is dropped when include_coarse is false.
inline GridFunction synthesize_levels(const HaarCoefficients& c, int max_level, bool include_coarse) {
    const int J = c.resolution();
    const auto coarse = c.coarse();
    std::vector<complex> avg(static_cast<std::size_t>(c.domain_length()) << J);
    for (std::size_t u = 0; u < coarse.size(); ++u) avg[u] = include_coarse ? coarse[u] : complex{};
    for (int j = 0; j < J; ++j) {
        const auto lv = c.level(j);
        const double s = std::pow(2.0, 0.5 * j);  // |I|^{-1/2}
        for (std::size_t p = lv.size(); p-- > 0;) {
            const complex a = avg[p];
            const complex d = j <= max_level ? s * lv[p] : complex{};
            avg[2 * p] = a + d;
            avg[2 * p + 1] = a - d;
        }
    }
    return {J, c.domain_length(), std::move(avg)};
}

inline GridFunction synthesize(const HaarCoefficients& c) {
    return synthesize_levels(c, c.resolution(), true);
}

/// sum_{j <= N} sum_k <f, h^j_k> h^j_k, i.e. P_{N+1} f - P_0 f. Empty for N < 0.
inline GridFunction partial_sum(const HaarCoefficients& c, int max_level) {
    return synthesize_levels(c, max_level, false);
}

// Coefficient CSV: "# haarcoeffs v1 J=<int> L=<int>" then "j,k,re,im"; coarse
// rows use j=-1 with k the 1-based unit index.

inline void write_coeffs_csv(const HaarCoefficients& c, std::ostream& out) {
    out << "# haarcoeffs v1 J=" << c.resolution() << " L=" << c.domain_length() << '\n';
    const auto coarse = c.coarse();
    for (std::size_t u = 0; u < coarse.size(); ++u)
        out << "-1," << u + 1 << ',' << detail::format_double(coarse[u].real()) << ','
            << detail::format_double(coarse[u].imag()) << '\n';
    c.for_each_detail([&](int j, std::int64_t k, const complex& v) {
        out << j << ',' << k << ',' << detail::format_double(v.real()) << ','
            << detail::format_double(v.imag()) << '\n';
    });
}

/// Rows may come in any order; missing rows are zero, duplicates are rejected.
inline HaarCoefficients read_coeffs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw format_error("empty haarcoeffs file");
    const auto [J, L] = detail::parse_header(detail::strip_cr(line), "haarcoeffs");
    HaarCoefficients c(J, L);
    std::vector<bool> seen_coarse(static_cast<std::size_t>(L), false);
    std::vector<bool> seen(c.detail().size(), false);
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 4) throw format_error("expected 'j,k,re,im': '" + line + "'");
        const std::int64_t j = detail::parse_int(fields[0]);
        const std::int64_t k = detail::parse_int(fields[1]);
        const complex v(detail::parse_double(fields[2]), detail::parse_double(fields[3]));
        if (j == -1) {
            if (k < 1 || k > L) throw format_error("coarse index out of range");
            if (seen_coarse[static_cast<std::size_t>(k - 1)]) throw format_error("duplicate coarse row");
            seen_coarse[static_cast<std::size_t>(k - 1)] = true;
            c.coarse()[static_cast<std::size_t>(k - 1)] = v;
            continue;
        }
        if (j < 0 || j >= J || k < 1 || static_cast<std::size_t>(k) > c.level_size(static_cast<int>(j)))
            throw format_error("coefficient index out of range: '" + line + "'");
        const std::size_t slot = c.level_offset(static_cast<int>(j)) + static_cast<std::size_t>(k - 1);
        if (seen[slot]) throw format_error("duplicate coefficient row");
        seen[slot] = true;
        c.at(static_cast<int>(j), k) = v;
    }
    return c;
}

inline void write_coeffs_csv(const HaarCoefficients& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot open '" + path + "' for writing");
    write_coeffs_csv(c, out);
}

inline HaarCoefficients read_coeffs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open '" + path + "'");
    return read_coeffs_csv(in);
}

}  // namespace dyadic
