#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "errors.hpp"
#include "interval.hpp"

namespace heights {

// A value of the form  c + sum_p  e_p * log p  with rational coefficients
// over distinct primes p, plus an interval constant part c for data that is
// only known numerically (tabulated local norms).  The set {1} united with
// {log p : p prime} is linearly independent over Q, so when the constant
// part is an exact rational the canonical form decides zero, and hence sign
// and comparisons, without any numerics in the degenerate case.
class LogValue {
public:
    LogValue() : cst_() {}
    explicit LogValue(const mpq_class& c) : cst_(c) {}
    explicit LogValue(const QInterval& c) : cst_(c) {}

    // exact representation of log q for rational q > 0, via factorization
    static LogValue log_of(const mpq_class& q);

    bool is_exact() const { return cst_.is_point(); }
    bool is_zero() const { return is_exact() && cst_.lo() == 0 && logs_.empty(); }
    bool is_rational_point() const { return is_exact() && logs_.empty(); }

    const QInterval& cst() const { return cst_; }
    const std::map<mpz_class, mpq_class>& log_coeffs() const { return logs_; }

    LogValue operator+(const LogValue& o) const;
    LogValue operator-(const LogValue& o) const;
    LogValue operator-() const;
    LogValue scale(const mpq_class& c) const;
    LogValue& operator+=(const LogValue& o) { return *this = *this + o; }

    bool same_form(const LogValue& o) const {
        return is_exact() && o.is_exact() && cst_.lo() == o.cst_.lo() && logs_ == o.logs_;
    }

    QInterval eval(long bits) const;

    // -1 / 0 / +1; escalates precision from ctx.bits to ctx.max_bits and
    // throws precision_error if the sign never separates from zero
    int sign(const PrecisionContext& ctx) const;

    LogValue abs(const PrecisionContext& ctx) const {
        return sign(ctx) < 0 ? -*this : *this;
    }
    // max(0, x) as a value: exact thanks to the sign decision
    LogValue pos_part(const PrecisionContext& ctx) const {
        return sign(ctx) > 0 ? *this : LogValue();
    }

    std::string describe() const; // debugging aid, e.g. "1/2 + 3*log(2)"

private:
    QInterval cst_;
    std::map<mpz_class, mpq_class> logs_;

    void add_coeff(const mpz_class& p, const mpq_class& c);
};

// cached enclosure of log p at the given precision
QInterval log_of_prime(const mpz_class& p, long bits);

} // namespace heights
