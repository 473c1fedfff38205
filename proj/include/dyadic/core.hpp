#pragma once

// Dyadic intervals, the dyadic distance and the level-set geometry on grids.
//
// A point of [0, L) is represented by the cell of width 2^-J that contains it.
// The dyadic distance between two distinct cells is the length of the smallest
// dyadic interval containing both, which is constant over the pair of cells.
// Everything here is computed from powers of two and is exact in binary
// floating point.

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

/// Invalid arguments or mismatched inputs supplied by the caller.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mathematical precondition of an operation not met (e.g. nonzero P_0 part).
struct precondition_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// The grid is too coarse to resolve the requested object.
struct resolution_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Malformed serialized data.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double pow2(int e) { return std::ldexp(1.0, e); }

inline bool is_power_of_two(std::int64_t v) {
    return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v));
}

/// log2 of a power of two.
inline int log2_exact(std::int64_t v) {
    if (!is_power_of_two(v)) throw usage_error("not a power of two: " + std::to_string(v));
    return std::countr_zero(static_cast<std::uint64_t>(v));
}

struct GridPoint;

/// I^j_k = [(k-1) 2^-j, k 2^-j), k >= 1. The level may be negative.
class DyadicInterval {
public:
    DyadicInterval(int level, std::int64_t position) : level_(level), position_(position) {
        if (position < 1) throw usage_error("dyadic interval position must be >= 1");
        if (level < -60 || level > 60) throw usage_error("dyadic interval level out of range");
    }

    /// The interval of the given level containing the real point x >= 0.
    static DyadicInterval containing(double x, int level) {
        if (!(x >= 0.0)) throw usage_error("point must be non-negative");
        return {level, static_cast<std::int64_t>(std::floor(std::ldexp(x, level))) + 1};
    }

    int level() const { return level_; }
    std::int64_t position() const { return position_; }
    double length() const { return pow2(-level_); }
    double left() const { return std::ldexp(static_cast<double>(position_ - 1), -level_); }
    double right() const { return std::ldexp(static_cast<double>(position_), -level_); }

    DyadicInterval left_half() const { return {level_ + 1, 2 * position_ - 1}; }
    DyadicInterval right_half() const { return {level_ + 1, 2 * position_}; }

    DyadicInterval ancestor(int level) const {
        if (level > level_) throw usage_error("ancestor level must not exceed the interval level");
        return {level, ((position_ - 1) >> (level_ - level)) + 1};
    }

    bool contains(const DyadicInterval& other) const {
        return other.level_ >= level_ && other.ancestor(level_) == *this;
    }
    bool contains(double x) const { return left() <= x && x < right(); }

    /// Intervals at levels >= 0, i.e. of length at most one.
    bool in_unit_family() const { return level_ >= 0; }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

private:
    int level_;
    std::int64_t position_;
};

/// The cell [i 2^-J, (i+1) 2^-J).
struct GridPoint {
    int resolution = 0;
    std::int64_t cell = 0;

    static GridPoint from_real(double x, int resolution) {
        if (!(x >= 0.0)) throw usage_error("point must be non-negative");
        return {resolution, static_cast<std::int64_t>(std::floor(std::ldexp(x, resolution)))};
    }

    double left() const { return std::ldexp(static_cast<double>(cell), -resolution); }
    double width() const { return pow2(-resolution); }

    /// The dyadic interval of the given level that contains this cell.
    DyadicInterval ancestor(int level) const {
        if (level > resolution) throw resolution_error("ancestor finer than the grid");
        return {level, (cell >> (resolution - level)) + 1};
    }

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Level j* of the smallest dyadic interval containing cells a != b at
/// resolution J, so that delta = 2^-j*. May be negative.
inline int common_level(std::int64_t a, std::int64_t b, int resolution) {
    auto diff = static_cast<std::uint64_t>(a ^ b);
    return resolution - static_cast<int>(std::bit_width(diff));
}

/// delta(x, y); zero on the diagonal.
inline double dyadic_distance(const GridPoint& x, const GridPoint& y) {
    if (x.resolution != y.resolution) throw usage_error("dyadic_distance: mismatched resolutions");
    if (x.cell < 0 || y.cell < 0) throw usage_error("dyadic_distance: negative cell index");
    if (x.cell == y.cell) return 0.0;
    return pow2(-common_level(x.cell, y.cell, x.resolution));
}

using CellPair = std::pair<std::int64_t, std::int64_t>;

/// Calls fn(a, b) for every ordered cell pair in B(I), I of level j inside
/// [0, L): one cell in the left half and one in the right half of I. Intervals
/// are visited by increasing position, pairs (left, right) before (right, left).
template <class Fn>
void for_each_level_pair(int level, int resolution, std::int64_t domain_length, Fn&& fn) {
    if (level < 0) throw usage_error("level-set enumeration needs a non-negative level");
    if (!is_power_of_two(domain_length)) throw usage_error("domain length must be a power of two");
    if (level >= resolution) return;
    const std::int64_t half = std::int64_t{1} << (resolution - level - 1);
    const std::int64_t intervals = domain_length << level;
    for (std::int64_t p = 0; p < intervals; ++p) {
        const std::int64_t lo = 2 * p * half;
        for (std::int64_t a = lo; a < lo + half; ++a)
            for (std::int64_t b = lo + half; b < lo + 2 * half; ++b) {
                fn(a, b);
                fn(b, a);
            }
    }
}

/// Cell pairs of the level set Lambda_j = {delta = 2^-j} inside [0, L)^2,
/// restricted to the intervals of level j that lie in the domain.
inline std::vector<CellPair> level_set_pairs(int level, int resolution, std::int64_t domain_length) {
    std::vector<CellPair> out;
    for_each_level_pair(level, resolution, domain_length,
                        [&](std::int64_t a, std::int64_t b) { out.emplace_back(a, b); });
    return out;
}

/// Area of B(I) = (I+ x I-) u (I- x I+): two squares of side |I|/2.
inline double measure_B(const DyadicInterval& I) {
    const double len = I.length();
    return len * len / 2.0;
}

/// Area of B(J) n C(I), where C(I) holds the pairs with exactly one
/// coordinate in I. Nonzero only when J strictly contains I, in which case it
/// is I x (half of J not containing I) and its transpose: |I| |J|.
inline double measure_B_cap_C(const DyadicInterval& J, const DyadicInterval& I) {
    if (J.level() >= I.level() || !J.contains(I)) return 0.0;
    return I.length() * J.length();
}

/// Integral over the unit interval containing x of delta(x, y)^alpha dy.
/// The set {delta(x, .) = 2^-k} has measure 2^-(k+1), so the value is
/// sum_k 2^-k alpha 2^-(k+1) = 2^alpha / (2^(1+alpha) - 1), independent of x.
inline double unit_delta_power_integral(double alpha) {
    if (!(alpha > -1.0)) throw precondition_error("delta^alpha is not integrable for alpha <= -1");
    return std::pow(2.0, alpha) / (std::pow(2.0, 1.0 + alpha) - 1.0);
}

/// Upper bound for unit_delta_power_integral: (2^(1+alpha) - 1)^-1 on
/// (-1, 0], and 1 for alpha > 0 where delta <= 1 on the unit interval.
inline double unit_delta_power_bound(double alpha) {
    if (!(alpha > -1.0)) throw precondition_error("delta^alpha is not integrable for alpha <= -1");
    if (alpha > 0.0) return 1.0;
    return 1.0 / (std::pow(2.0, 1.0 + alpha) - 1.0);
}

}  // namespace dyadic
