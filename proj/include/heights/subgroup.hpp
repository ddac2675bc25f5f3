#pragma once

#include <gmpxx.h>

#include <vector>

#include "element.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "logvalue.hpp"
#include "minima.hpp"
#include "zonoid.hpp"

namespace heights {

// finitely generated multiplicative subgroup, presented by the log values of
// its generators over the union of their supporting places
struct SubgroupPresentation {
    std::vector<GroupElement> generators;
    std::vector<Place> support;
    ExactMatrix A;                 // rows = generators, cols = places
    std::vector<mpq_class> masses; // local degree / field degree per place
    int rank = 0;
};

// union support, assembled log matrix, product-formula check per row, rank
// (exact from exponent data when factored, by separated minor otherwise)
SubgroupPresentation build_presentation(const std::vector<GroupElement>& gens,
                                        const PrecisionContext& ctx);

// lower bound on rank(A) certified by a minor whose enclosure excludes zero
int certified_rank(const ExactMatrix& A, const PrecisionContext& ctx);

// height of the subgroup: 2^(-N) times the determinant integral of the
// presentation system; defined for full-rank presentations only
QInterval group_height(const SubgroupPresentation& p, const PrecisionContext& ctx);

struct HeightCertificate {
    QInterval h_group;
    std::vector<std::vector<mpz_class>> betas; // exponents over the generators
    std::vector<GroupElement> beta_elements;
    std::vector<QInterval> beta_heights;
    QInterval product;  // prod of the beta heights
    mpz_class index = 0;
    mpz_class index_bound = 0; // N!
    bool exhaustive = false;
    bool certified = false; // product <= h_group decided
};

// multiplicatively independent beta_n = prod alpha_m^(b_mn) of small height:
// prod h(beta_n) <= h(group), with h(beta_n) = mu_n / 2 cross-checked
// against a direct height computation of the evaluated element
HeightCertificate small_independent_generators(const SubgroupPresentation& p,
                                               const PrecisionContext& ctx);

// declared fundamental data for the S-unit group of a field: table rows are
// log values of the units eta_r over all places of S
struct SUnitContext {
    int field_degree = 1;
    std::vector<Place> places;  // size s >= 2
    ExactMatrix unit_log_table; // (s-1) x s
};

struct SUnitHeights {
    QInterval regulator; // |det| of any (s-1)-minor of the degree-scaled table
    QInterval height;    // s! * regulator / (2 * field_degree)^(s-1)
    QInterval height_by_presentation; // independent route, must overlap
};

// the closed form and the presentation route are both computed and must
// agree; all s omitted-column minors are compared as a consistency check
SUnitHeights sunit_height(const SUnitContext& c, const PrecisionContext& ctx);

} // namespace heights
