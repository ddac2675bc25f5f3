#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "heights/interval.hpp"

// exact rational from a decimal literal like "-0.6931471805599453"
inline mpq_class qdec(const std::string& s) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    size_t dot = t.find('.');
    std::string digits = t;
    size_t frac = 0;
    if (dot != std::string::npos) {
        digits = t.substr(0, dot) + t.substr(dot + 1);
        frac = t.size() - dot - 1;
    }
    mpz_class num(digits.empty() ? "0" : digits, 10);
    mpz_class den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

// reduced fraction (the two-argument mpq constructor does not canonicalize)
inline mpq_class qfrac(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// power-of-ten tolerance: pow10q(-46) = 10^-46
inline mpq_class pow10q(int e) {
    mpz_class p = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= 10;
    return e < 0 ? mpq_class(1, p) : mpq_class(p);
}

// the enclosure lies inside a band of half-width 10^tol_exp around the
// reference decimal (reference values carry ~50 digits, so tol_exp >= -46)
inline bool near_dec(const heights::QInterval& iv, const std::string& dec, int tol_exp = -40) {
    mpq_class v = qdec(dec), t = pow10q(tol_exp);
    return iv.lo() >= v - t && iv.hi() <= v + t;
}

// splitmix64: tiny deterministic generator for test data
struct TestRng {
    uint64_t state;
    explicit TestRng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};
