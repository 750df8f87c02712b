#pragma once

#include <cstddef>
#include <vector>

namespace epscalc {

// Closed interval [lo, hi] used for certified enclosures. Arithmetic here is
// the handful of directed operations the engine needs, not a full interval
// library. Floating-point rounding of the endpoint operations themselves is
// absorbed by the 1+2^-20 comparison slack used everywhere downstream.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator+(double c) const { return {lo + c, hi + c}; }
    Interval operator-(double c) const { return {lo - c, hi - c}; }

    Interval scaled(double c) const {
        return c >= 0.0 ? Interval{c * lo, c * hi} : Interval{c * hi, c * lo};
    }
};

inline Interval hull(const Interval& a, const Interval& b) {
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval r{a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
    if (r.lo > r.hi) { double m = 0.5 * (r.lo + r.hi); r = {m, m}; }
    return r;
}

// Deterministic pairwise reduction; order independent of chunking decisions.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    std::size_t n = hi - lo;
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t m = lo + n / 2;
    return pairwise_sum(v, lo, m) + pairwise_sum(v, m, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v, 0, v.size());
}

} // namespace epscalc
