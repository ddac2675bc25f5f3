#pragma once

#include <gmpxx.h>

#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "logvalue.hpp"
#include "zonoid.hpp"

namespace heights {

// successive minima of the pullback norm delta over the integer lattice:
// mu_n is the least r such that {delta <= r} contains n independent
// lattice vectors, realized by the returned b_n
struct MinimaResult {
    std::vector<std::vector<mpz_class>> vectors; // b_1 .. b_N
    std::vector<LogValue> norm_values;           // delta(b_n), symbolic
    std::vector<QInterval> norms;                // evaluated at ctx.bits
    bool exhaustive = false;
    mpz_class index = 0; // |det(b_1 .. b_N)|
};

// certified enumeration inside |xi|_inf <= mu_candidate / sigma, where sigma
// lower-bounds delta on the euclidean unit sphere through the smallest
// eigenvalue of the mass-weighted Gram matrix; oversized boxes (or N > 6)
// fall back to a reduced-basis upper bound with exhaustive = false
MinimaResult successive_minima(const SimpleSystem& s, const PrecisionContext& ctx);

inline constexpr long kEnumGuard = 2000000; // lattice points per enumeration

struct ReductionCertificate {
    MinimaResult minima;
    QInterval product;  // mu_1 * ... * mu_N
    QInterval integral; // determinant integral of the system
    mpz_class index_bound; // N!
    bool certified = false;
};

// independent short vectors with certified product bound:
//   prod_n delta(b_n) <= integral, and index <= N! in exhaustive mode
ReductionCertificate reduce_by_minima(const SimpleSystem& s, const PrecisionContext& ctx);

struct MinkowskiReport {
    MinimaResult minima;
    QInterval minima_product;
    QInterval vol_primal; // Vol(B), exact sign-cell computation
    QInterval vol_dual;   // Vol(B*), the zonoid volume
    QInterval integral;
    bool minkowski_ok = false;   // prod mu_n * Vol(B) <= 2^N
    bool mahler_ok = false;      // 4^N / N! <= Vol(B) * Vol(B*)
    bool reciprocity_ok = false; // 2^N <= Vol(B) * integral
};

// second-theorem style volume inequalities, all interval-certified;
// needs the exact primal volume, so N <= 3
MinkowskiReport minkowski_check(const SimpleSystem& s, const PrecisionContext& ctx);

} // namespace heights
