#include "heights/factor.hpp"

#include "heights/errors.hpp"

namespace heights {

bool is_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

// Brent's cycle variant of Pollard rho; n odd composite, not a prime power
// of a tiny prime (trial division has already run)
mpz_class rho_split(const mpz_class& n) {
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1, saved_y = 2;
        unsigned long power = 1, lam = 0;
        mpz_class prod = 1;
        while (d == 1) {
            if (lam == power) {
                saved_y = y;
                power *= 2;
                lam = 0;
            }
            y = (y * y + c) % n;
            ++lam;
            prod = prod * ((y > saved_y) ? y - saved_y : saved_y - y) % n;
            if (lam % 64 == 0 || lam == power) {
                mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
                if (d != 1) break;
            }
        }
        if (d != n && d != 1) return d;
        // cycle collapsed or gcd jumped to n: retry with another constant
    }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::map<mpz_class, unsigned long> factorize(const mpz_class& n) {
    if (n < 1)
        throw input_error("factorize expects a positive integer");
    std::map<mpz_class, unsigned long> out;
    mpz_class m = n;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++out[mpz_class(p)];
        }
    }
    // trial division by 6k+-1 up to 10^4 clears everything the rho step
    // would waste time on
    for (unsigned long p = 41; p < 10000 && m > 1; p += (p % 6 == 5) ? 2 : 4) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++out[mpz_class(p)];
        }
    }
    factor_into(m, out);
    return out;
}

} // namespace heights
