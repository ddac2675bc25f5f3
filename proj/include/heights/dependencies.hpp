#pragma once

#include "heights/subgroup.hpp"

namespace heights {

// basis of the dependency lattice {z : prod alpha_n^{z_n} = 1} of factored
// generators with integer exponents, as kernel columns (N x L)
IntMatrix dependency_module(const std::vector<GroupElement>& gens);

struct DependencyBasis {
    std::vector<std::vector<mpz_class>> vectors; // L independent kernel vectors
    std::vector<mpz_class> sup_norms;
    mpz_class product;    // product of the sup norms
    mpz_class gram_det;   // det(A A^T)
    mpz_class minor_gcd;  // gcd D of the maximal minors of A
    QInterval bound;      // sqrt(gram_det)/D
    bool exhaustive = false;
    bool bound_ok = false; // product^2 * D^2 <= gram_det, checked exactly
};

inline constexpr long kKernelEnumGuard = 2000000;

// small dependency vectors of a full-row-rank integer matrix A (M x N,
// M < N): the sup-norm minima of the kernel lattice, whose product is
// certified against sqrt(det AA^T)/D; enumeration beyond the guard falls
// back to a reduced kernel basis with the bound merely reported
DependencyBasis siegel_basis(const IntMatrix& A, long max_nodes = kKernelEnumGuard);

inline constexpr long kTupleGuard = 100000;

// 2^{-M} sum over place tuples of the Gram volume spanned by generators
// written as integer words `coords` (M x N) in the presented basis; the
// tuple sum is cross-checked against sqrt(det coords coords^T) times the
// basis group height and the intersection is returned
QInterval gram_volume_integral(const SubgroupPresentation& basis, const IntMatrix& coords,
                               const PrecisionContext& ctx);

struct DependencyCertificate {
    DependencyBasis zs;
    std::vector<GroupElement> basis_elements; // computed basis of the subgroup
    IntMatrix coords;                         // generators as words in that basis
    HeightCertificate heights;                // small independent generators
    std::vector<QInterval> gen_heights;       // h(alpha_n)
    QInterval height_product;                 // prod|z| * prod h(beta)
    QInterval height_sum_power;               // (sum h(alpha))^M
    QInterval group_product;                  // prod|z| * h(subgroup)
    QInterval volume_integral;
    bool height_bound_ok = false;
    bool group_bound_ok = false;
};

// end-to-end certificate for a multiplicatively dependent tuple: small
// dependency vectors, small independent generators, and the two product
// inequalities tying them together
DependencyCertificate certify_small_dependencies(const std::vector<GroupElement>& gens,
                                                 const PrecisionContext& ctx);

} // namespace heights
