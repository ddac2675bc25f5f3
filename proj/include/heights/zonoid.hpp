#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "logvalue.hpp"

namespace heights {

// Weighted atomic system of N independent simple functions over M atoms:
// function l takes value coeffs(l,m) on atom m, which has mass masses[m].
struct SimpleSystem {
    int n_funcs = 0; // N
    int n_atoms = 0; // M
    std::vector<mpq_class> masses;
    ExactMatrix coeffs; // N x M
    bool all_rational = false;
};

// canonical form: zero-mass atoms and all-zero columns dropped, rank N
// certified (exactly for rational coefficients, by a separated minor
// otherwise); duplicate columns are kept as distinct atoms
SimpleSystem build_simple_system(std::vector<mpq_class> masses, ExactMatrix coeffs,
                                 const PrecisionContext& ctx);

inline constexpr int kAtomGuard = 16; // subset enumeration ceiling

// integral of |det(F_i(x_j))| over the product space:
//   N! * sum over N-subsets I of |det A_I| * prod masses(I)
QInterval delta_integral(const SimpleSystem& s, const PrecisionContext& ctx,
                         int max_atoms = kAtomGuard);

// volume of the dual unit ball (a zonotope): (2^N / N!) * delta_integral
QInterval zonoid_volume(const SimpleSystem& s, const PrecisionContext& ctx);

// centered zonotope: sum of segments [-v_m, v_m], columns of `segments`
struct ZonotopeSpec {
    int dim = 0;           // N
    ExactMatrix segments;  // N x M
};

// 2^N * sum over N-subsets |det V_I|; zero for rank-deficient specs
QInterval mcmullen_volume(const ZonotopeSpec& z, const PrecisionContext& ctx,
                          int max_atoms = kAtomGuard);

// zonotope whose volume realizes zonoid_volume(s): segment m is
// masses[m] * column m of coeffs
ZonotopeSpec dual_zonotope_of(const SimpleSystem& s);

// delta(xi) = sum_m w_m |<xi, row m of U>|; masses null means weight 1
QInterval l1_pullback_norm(const ExactMatrix& U, const std::vector<mpq_class>* masses,
                           const std::vector<mpq_class>& xi, const PrecisionContext& ctx);

// the same norm through a system's columns, kept symbolic when the
// coefficients are exact (each |.| resolved by a sign decision)
LogValue pullback_norm_value(const SimpleSystem& s, const std::vector<mpq_class>& xi,
                             const PrecisionContext& ctx);

struct VolumeEstimate {
    double mean = 0;
    double half_width = 0; // 3 sigma
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// statistical oracles; deterministic in (seed, samples), independent of any
// internal parallel split (counter-based generator)
VolumeEstimate monte_carlo_volume(const ZonotopeSpec& z, uint64_t samples, uint64_t seed);
VolumeEstimate monte_carlo_primal_ball(const ExactMatrix& U, const std::vector<mpq_class>& masses,
                                       uint64_t samples, uint64_t seed);

// volume of B = {xi : delta(xi) <= 1} for N <= 3 by exact sign-cell
// decomposition; transcendental coefficients enter through a certified
// two-sided sandwich around the rational midpoint body
QInterval primal_ball_volume_exact(const ExactMatrix& U, const std::vector<mpq_class>& masses,
                                   const PrecisionContext& ctx);

struct GapBound {
    QInterval gap;   // |integral(s) - integral(t)|
    QInterval bound; // N! * C1^(N-1) * sum_l ||F_l - G_l||_1
};
// s and t must share the atom layout (same masses in the same order)
GapBound perturbation_gap_bound(const SimpleSystem& s, const SimpleSystem& t,
                                const PrecisionContext& ctx);

// L1 norm of one system row
QInterval l1_norm_row(const SimpleSystem& s, int row, const PrecisionContext& ctx);

} // namespace heights
