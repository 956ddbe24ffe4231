// ddouble.hpp — compensated double-double arithmetic (~31 significant digits)
//
// Used where a result of order 1e-10 must keep full relative precision while
// being assembled from terms of order 1 (frequency-ratio chains). Only the
// operations that evaluation chain needs are provided.

#pragma once

#include <cmath>

namespace steersat {

struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    ddouble() = default;
    ddouble(double h) : hi(h), lo(0.0) {}
    ddouble(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace dd_detail {

inline ddouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline ddouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline ddouble operator+(const ddouble& a, const ddouble& b) {
    using namespace dd_detail;
    ddouble s = two_sum(a.hi, b.hi);
    ddouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ddouble operator-(const ddouble& a) { return {-a.hi, -a.lo}; }
inline ddouble operator-(const ddouble& a, const ddouble& b) { return a + (-b); }

inline ddouble operator*(const ddouble& a, const ddouble& b) {
    using namespace dd_detail;
    ddouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble operator/(const ddouble& a, const ddouble& b) {
    double q1 = a.hi / b.hi;
    ddouble r = a - ddouble(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - ddouble(q2) * b;
    double q3 = r.hi / b.hi;
    ddouble q = dd_detail::quick_two_sum(q1, q2);
    return q + ddouble(q3);
}

inline ddouble sqrt(const ddouble& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {};
    double y = std::sqrt(a.hi);
    ddouble diff = a - ddouble(y) * ddouble(y);
    return ddouble(y) + diff / ddouble(2.0 * y);
}

// sqrt(1 + x) - 1 without forming the near-unity intermediate
inline ddouble sqrt1pm1(const ddouble& x) {
    return x / (ddouble(1.0) + sqrt(ddouble(1.0) + x));
}

// (1 + a)(1 + b) - 1 = a + b + a*b
inline ddouble prod1pm1(const ddouble& a, const ddouble& b) {
    return a + b + a * b;
}

} // namespace steersat
