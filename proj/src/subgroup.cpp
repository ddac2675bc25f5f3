#include <algorithm>
#include <map>
#include <set>

#include "heights/subgroup.hpp"

namespace heights {

namespace {

// tabulated identity sharing an element's place layout, for exponent folds
GroupElement tabulated_identity(const GroupElement& model, const PrecisionContext& ctx) {
    std::vector<std::pair<Place, LogValue>> entries;
    for (const auto& [place, value] : model.table()) entries.emplace_back(place, LogValue());
    return GroupElement::from_place_table(model.field_degree(), entries, ctx);
}

SubgroupPresentation factored_presentation(const std::vector<GroupElement>& gens,
                                           const PrecisionContext& ctx) {
    SubgroupPresentation p;
    p.generators = gens;
    std::set<mpz_class> primes;
    for (const auto& g : gens)
        for (const auto& [q, e] : g.exponents()) primes.insert(q);

    p.support.push_back(arch_place());
    for (const auto& q : primes) p.support.push_back(finite_place(q));
    for (const auto& pl : p.support) p.masses.push_back(pl.mass());

    int N = static_cast<int>(gens.size());
    int S = static_cast<int>(p.support.size());
    p.A = ExactMatrix(N, S);
    std::map<mpz_class, int> col;
    {
        int j = 1;
        for (const auto& q : primes) col[q] = j++;
    }
    for (int n = 0; n < N; ++n)
        for (const PlaceEntry& pe : element_log_table(gens[n], ctx)) {
            int j = pe.place.kind == Place::Kind::arch ? 0 : col.at(pe.place.prime);
            p.A.at(n, j) = pe.value;
        }

    for (int n = 0; n < N; ++n) {
        LogValue residual;
        for (int j = 0; j < S; ++j) residual = residual + p.A.at(n, j).scale(p.masses[j]);
        if (!residual.is_zero())
            throw verify_error("assembled row violates the product formula");
    }

    // rank over Q of the exponent data; the log matrix has the same rank
    // because the prime logarithms are linearly independent over Q
    QMatrix E(N, static_cast<int>(primes.size()));
    for (int n = 0; n < N; ++n)
        for (const auto& [q, e] : gens[n].exponents()) E.at(n, col.at(q) - 1) = e;
    p.rank = E.cols == 0 ? 0 : rank_q(E);
    return p;
}

SubgroupPresentation tabulated_presentation(const std::vector<GroupElement>& gens,
                                            const PrecisionContext& ctx) {
    SubgroupPresentation p;
    p.generators = gens;
    const auto& base = gens.front().table();
    for (const auto& g : gens) {
        if (g.field_degree() != gens.front().field_degree())
            throw input_error("generators declare different field degrees");
        const auto& t = g.table();
        if (t.size() != base.size())
            throw input_error("generators declare different place lists");
        for (size_t v = 0; v < t.size(); ++v)
            if (!t[v].first.same_place(base[v].first))
                throw input_error("generators declare different place lists");
    }
    for (const auto& [place, value] : base) {
        p.support.push_back(place);
        p.masses.push_back(place.mass());
    }
    int N = static_cast<int>(gens.size());
    int S = static_cast<int>(p.support.size());
    p.A = ExactMatrix(N, S);
    mpq_class tol = GroupElement::default_product_formula_tol();
    for (int n = 0; n < N; ++n) {
        LogValue residual;
        for (int v = 0; v < S; ++v) {
            p.A.at(n, v) = gens[n].table()[v].second;
            residual = residual + p.A.at(n, v).scale(p.masses[v]);
        }
        QInterval res = residual.eval(ctx.bits);
        if (res.lo() > tol || res.hi() < -tol)
            throw input_error("tabulated row violates the product formula");
    }
    p.rank = certified_rank(p.A, ctx);
    return p;
}

} // namespace

int certified_rank(const ExactMatrix& A, const PrecisionContext& ctx) {
    for (int r = std::min(A.rows, A.cols); r >= 1; --r) {
        std::vector<int> ri(r), ci(r);
        for (int i = 0; i < r; ++i) ri[i] = i;
        do {
            for (int i = 0; i < r; ++i) ci[i] = i;
            do {
                ExactMatrix sub(r, r);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) sub.at(i, j) = A.at(ri[i], ci[j]);
                if (!exact_det(sub, ctx.bits).contains_zero()) return r;
            } while (next_combination(ci, A.cols));
        } while (next_combination(ri, A.rows));
    }
    return 0;
}

SubgroupPresentation build_presentation(const std::vector<GroupElement>& gens,
                                        const PrecisionContext& ctx) {
    if (gens.empty())
        throw input_error("a subgroup needs at least one generator");
    bool all_factored = true, all_tabulated = true;
    for (const auto& g : gens) (g.factored() ? all_tabulated : all_factored) = false;
    if (all_factored) return factored_presentation(gens, ctx);
    if (all_tabulated) return tabulated_presentation(gens, ctx);
    throw input_error("generators mix factored and tabulated representations");
}

QInterval group_height(const SubgroupPresentation& p, const PrecisionContext& ctx) {
    int N = static_cast<int>(p.generators.size());
    if (p.rank != N)
        throw input_error("presentation has rank " + std::to_string(p.rank) + " but " +
                          std::to_string(N) + " generators; the height needs a basis");
    SimpleSystem s = build_simple_system(p.masses, p.A, ctx);
    mpq_class scale(1);
    for (int i = 0; i < N; ++i) scale /= 2;
    return delta_integral(s, ctx).scale(scale);
}

HeightCertificate small_independent_generators(const SubgroupPresentation& p,
                                               const PrecisionContext& ctx) {
    int N = static_cast<int>(p.generators.size());
    if (p.rank != N)
        throw input_error("presentation has rank " + std::to_string(p.rank) + " but " +
                          std::to_string(N) + " generators; the height needs a basis");
    SimpleSystem s = build_simple_system(p.masses, p.A, ctx);
    MinimaResult minima = successive_minima(s, ctx);

    HeightCertificate cert;
    cert.betas = minima.vectors;
    cert.index = minima.index;
    cert.index_bound = 1;
    for (int i = 2; i <= N; ++i) cert.index_bound *= i;
    cert.exhaustive = minima.exhaustive;
    if (cert.exhaustive && cert.index > cert.index_bound)
        throw verify_error("minima sublattice index exceeds N!");

    bool factored = p.generators.front().factored();
    std::vector<LogValue> half_norms(N);
    for (int n = 0; n < N; ++n) {
        GroupElement beta =
            factored ? GroupElement() : tabulated_identity(p.generators.front(), ctx);
        for (int m = 0; m < N; ++m)
            beta = group_op(beta, p.generators[m], mpq_class(minima.vectors[n][m]));
        cert.beta_elements.push_back(beta);

        // the norm of the exponent vector is twice the height of the element
        half_norms[n] = minima.norm_values[n].scale(mpq_class(1, 2));
        LogValue direct = weil_height_value(beta, ctx);
        LogValue diff = half_norms[n] - direct;
        if (diff.is_exact() ? !diff.is_zero()
                            : !half_norms[n].eval(ctx.bits).overlaps(direct.eval(ctx.bits)))
            throw verify_error("minima norm disagrees with the element height");
        cert.beta_heights.push_back(half_norms[n].eval(ctx.bits));
    }

    mpq_class hscale(1);
    for (int i = 0; i < N; ++i) hscale /= 2;
    if (N == 1) {
        // rank one forces equality between the two sides, which intervals
        // can never witness; decide the sign exactly
        LogValue integral;
        for (int m = 0; m < s.n_atoms; ++m)
            integral = integral + s.coeffs.at(0, m).abs(ctx).scale(s.masses[m]);
        LogValue h_lv = integral.scale(hscale);
        int sgn = (half_norms[0] - h_lv).sign(ctx);
        cert.product = half_norms[0].eval(ctx.bits);
        cert.h_group = h_lv.eval(ctx.bits);
        if (sgn <= 0) {
            cert.certified = true;
            return cert;
        }
        if (cert.exhaustive)
            throw verify_error("height product exceeds the group height");
        return cert;
    }
    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        QInterval prod(mpq_class(1));
        for (int n = 0; n < N; ++n) prod = prod * half_norms[n].eval(bits);
        PrecisionContext local{bits, ctx.max_bits};
        QInterval h = delta_integral(s, local).scale(hscale);
        cert.product = prod;
        cert.h_group = h;
        if (prod.hi() <= h.lo()) {
            cert.certified = true;
            return cert;
        }
        if (prod.lo() > h.hi()) {
            if (cert.exhaustive)
                throw verify_error("height product exceeds the group height");
            return cert;
        }
    }
    if (!cert.exhaustive) return cert;
    throw precision_error("height product bound undecided at the precision ceiling");
}

SUnitHeights sunit_height(const SUnitContext& c, const PrecisionContext& ctx) {
    int s = static_cast<int>(c.places.size());
    if (s < 2)
        throw input_error("an S-unit system needs at least two places");
    if (c.unit_log_table.rows != s - 1 || c.unit_log_table.cols != s)
        throw input_error("unit log table must be (s-1) x s");
    for (const Place& pl : c.places) {
        pl.validate();
        if (pl.field_degree != c.field_degree)
            throw input_error("place degrees disagree with the field degree");
    }

    // product formula per unit row, with local degrees as weights
    mpq_class tol = GroupElement::default_product_formula_tol();
    for (int r = 0; r < s - 1; ++r) {
        LogValue residual;
        for (int v = 0; v < s; ++v)
            residual = residual + c.unit_log_table.at(r, v).scale(c.places[v].local_degree);
        if (residual.is_exact()) {
            if (!residual.is_zero())
                throw input_error("unit row violates the product formula");
        } else {
            QInterval res = residual.eval(ctx.bits);
            if (res.lo() > tol || res.hi() < -tol)
                throw input_error("unit row violates the product formula");
        }
    }

    // all omitted-column minors of the degree-scaled table agree up to sign
    SUnitHeights out;
    bool first = true;
    for (int j = 0; j < s; ++j) {
        ExactMatrix sub(s - 1, s - 1);
        for (int r = 0; r < s - 1; ++r) {
            int cc = 0;
            for (int v = 0; v < s; ++v) {
                if (v == j) continue;
                sub.at(r, cc++) = c.unit_log_table.at(r, v).scale(c.places[v].local_degree);
            }
        }
        QInterval m = exact_det(sub, ctx.bits).abs();
        if (first) {
            out.regulator = m;
            first = false;
        } else {
            if (!out.regulator.overlaps(m))
                throw verify_error("regulator minors disagree");
            out.regulator = QInterval(std::max(out.regulator.lo(), m.lo()),
                                      std::min(out.regulator.hi(), m.hi()));
        }
    }
    if (out.regulator.contains_zero())
        throw input_error("regulator is not separated from zero; the units are dependent");

    mpz_class sfact = 1;
    for (int i = 2; i <= s; ++i) sfact *= i;
    mpq_class denom = 1;
    for (int i = 0; i < s - 1; ++i) denom *= 2 * c.field_degree;
    mpq_class factor = mpq_class(sfact) / denom;
    out.height = out.regulator.scale(factor);

    // independent route: present the units as tabulated elements
    std::vector<GroupElement> units;
    for (int r = 0; r < s - 1; ++r) {
        std::vector<std::pair<Place, LogValue>> entries;
        for (int v = 0; v < s; ++v) entries.emplace_back(c.places[v], c.unit_log_table.at(r, v));
        units.push_back(GroupElement::from_place_table(c.field_degree, entries, ctx));
    }
    SubgroupPresentation p = build_presentation(units, ctx);
    out.height_by_presentation = group_height(p, ctx);
    if (!out.height.overlaps(out.height_by_presentation))
        throw verify_error("closed form and presentation heights disagree");
    return out;
}

} // namespace heights
