#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace heights {

// Closed interval with exact rational endpoints.  Ring operations are exact,
// so chains of additions and multiplications never widen a point interval.
// Rounding enters only through log() and sqrt(), which round outward in mpfr
// at a chosen precision and convert the endpoints back to rationals exactly.
class QInterval {
public:
    QInterval() : lo_(0), hi_(0) {}
    explicit QInterval(const mpq_class& v) : lo_(v), hi_(v) {}
    QInterval(const mpq_class& lo, const mpq_class& hi) : lo_(lo), hi_(hi) {
        if (lo_ > hi_)
            throw input_error("interval endpoints out of order");
    }

    static QInterval point(const mpq_class& v) { return QInterval(v); }
    static QInterval zero() { return QInterval(); }

    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    bool is_point() const { return lo_ == hi_; }
    mpq_class width() const { return hi_ - lo_; }
    mpq_class mid() const { return (lo_ + hi_) / 2; }

    bool contains(const mpq_class& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
    bool overlaps(const QInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    // this is a (possibly tighter) enclosure of the same quantity as o
    bool inside(const QInterval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

    bool definitely_positive() const { return lo_ > 0; }
    bool definitely_negative() const { return hi_ < 0; }
    bool definitely_le(const QInterval& o) const { return hi_ <= o.lo_; }
    bool definitely_lt(const QInterval& o) const { return hi_ < o.lo_; }

    QInterval operator-() const { return QInterval(-hi_, -lo_); }
    QInterval operator+(const QInterval& o) const { return QInterval(lo_ + o.lo_, hi_ + o.hi_); }
    QInterval operator-(const QInterval& o) const { return QInterval(lo_ - o.hi_, hi_ - o.lo_); }
    QInterval& operator+=(const QInterval& o) {
        lo_ += o.lo_;
        hi_ += o.hi_;
        return *this;
    }

    QInterval operator*(const QInterval& o) const {
        mpq_class a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
        mpq_class lo = a, hi = a;
        for (const mpq_class* v : {&b, &c, &d}) {
            if (*v < lo) lo = *v;
            if (*v > hi) hi = *v;
        }
        return QInterval(lo, hi);
    }

    QInterval scale(const mpq_class& c) const {
        if (c >= 0) return QInterval(lo_ * c, hi_ * c);
        return QInterval(hi_ * c, lo_ * c);
    }

    // division; divisor must be bounded away from zero
    QInterval operator/(const QInterval& o) const;

    QInterval abs() const {
        if (lo_ >= 0) return *this;
        if (hi_ <= 0) return QInterval(-hi_, -lo_);
        mpq_class m = (-lo_ > hi_) ? mpq_class(-lo_) : hi_;
        return QInterval(mpq_class(0), m);
    }

    // max(0, x) pointwise
    QInterval pos_part() const {
        mpq_class lo = lo_ < 0 ? mpq_class(0) : lo_;
        mpq_class hi = hi_ < 0 ? mpq_class(0) : hi_;
        return QInterval(lo, hi);
    }

    QInterval pow_uint(unsigned n) const {
        QInterval r(mpq_class(1));
        for (unsigned i = 0; i < n; ++i) r = r * (*this);
        return r;
    }

    static QInterval hull(const QInterval& a, const QInterval& b) {
        return QInterval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }

    // enclosure of log(q) for rational q > 0, outward-rounded at `bits`
    static QInterval log_of_rational(const mpq_class& q, long bits);
    // enclosure of sqrt over the interval; negative part is clamped to zero
    // (used on quantities that are nonnegative up to interval slack)
    QInterval sqrt_clamped(long bits) const;

    // decimal enclosure "[lo_str, hi_str]" endpoints; lo rounded down, hi up
    std::string decimal_lo(int digits) const;
    std::string decimal_hi(int digits) const;

private:
    mpq_class lo_, hi_;
};

} // namespace heights
