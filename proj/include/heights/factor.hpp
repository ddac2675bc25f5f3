#pragma once

#include <gmpxx.h>

#include <map>

namespace heights {

// prime -> exponent for n >= 1; factorize(1) is empty
std::map<mpz_class, unsigned long> factorize(const mpz_class& n);

bool is_prime(const mpz_class& n);

} // namespace heights
