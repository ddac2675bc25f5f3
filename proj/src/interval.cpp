#include "heights/interval.hpp"

#include <mpfr.h>

#include <cstdio>
#include <vector>

namespace heights {

QInterval QInterval::operator/(const QInterval& o) const {
    if (o.contains_zero())
        throw precision_error("interval division by an interval containing zero");
    mpq_class a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
    mpq_class lo = a, hi = a;
    for (const mpq_class* v : {&b, &c, &d}) {
        if (*v < lo) lo = *v;
        if (*v > hi) hi = *v;
    }
    return QInterval(lo, hi);
}

namespace {

// exact conversion mpfr -> mpq; valid for finite values
mpq_class mpfr_to_q(mpfr_srcptr x) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    mpq_class r(q);
    mpq_clear(q);
    return r;
}

} // namespace

QInterval QInterval::log_of_rational(const mpq_class& q, long bits) {
    if (q <= 0)
        throw input_error("log of a nonpositive rational");
    if (q == 1)
        return QInterval();
    mpfr_t x, y;
    mpfr_init2(x, bits);
    mpfr_init2(y, bits);

    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
    mpfr_log(y, x, MPFR_RNDD);
    mpq_class lo = mpfr_to_q(y);

    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
    mpfr_log(y, x, MPFR_RNDU);
    mpq_class hi = mpfr_to_q(y);

    mpfr_clear(x);
    mpfr_clear(y);
    return QInterval(lo, hi);
}

QInterval QInterval::sqrt_clamped(long bits) const {
    mpq_class lo = lo_ < 0 ? mpq_class(0) : lo_;
    mpq_class hi = hi_ < 0 ? mpq_class(0) : hi_;

    mpfr_t x, y;
    mpfr_init2(x, bits);
    mpfr_init2(y, bits);

    mpfr_set_q(x, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_sqrt(y, x, MPFR_RNDD);
    mpq_class slo = mpfr_to_q(y);
    if (slo < 0) slo = 0;

    mpfr_set_q(x, hi.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(y, x, MPFR_RNDU);
    mpq_class shi = mpfr_to_q(y);

    mpfr_clear(x);
    mpfr_clear(y);
    return QInterval(slo, shi);
}

namespace {

std::string format_q(const mpq_class& v, int digits, mpfr_rnd_t rnd, char rnd_char) {
    // precision: enough bits so the printed digits are limited by `digits`,
    // not by the binary conversion
    long bits = 64 + static_cast<long>(digits * 3.33) + 16;
    mpfr_t x;
    mpfr_init2(x, bits);
    mpfr_set_q(x, v.get_mpq_t(), rnd);
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dR%ce", digits, rnd_char);
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), fmt, x);
    mpfr_clear(x);
    return std::string(buf.data());
}

} // namespace

std::string QInterval::decimal_lo(int digits) const {
    return format_q(lo_, digits, MPFR_RNDD, 'D');
}

std::string QInterval::decimal_hi(int digits) const {
    return format_q(hi_, digits, MPFR_RNDU, 'U');
}

} // namespace heights
