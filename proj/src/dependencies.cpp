#include "heights/dependencies.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace heights {

namespace {

// columns = generator exponent vectors over the union of their primes
IntMatrix exponent_matrix(const std::vector<GroupElement>& gens, std::vector<mpz_class>& primes) {
    if (gens.empty()) throw input_error("no generators given");
    std::set<mpz_class> ps;
    for (size_t n = 0; n < gens.size(); ++n) {
        if (!gens[n].factored())
            throw input_error("dependency lattices need factored generators; generator " +
                              std::to_string(n + 1) + " is a declared place table");
        for (const auto& [p, e] : gens[n].exponents()) {
            if (e.get_den() != 1)
                throw input_error("generator " + std::to_string(n + 1) +
                                  " has exponent denominator " + e.get_den().get_str() +
                                  "; clear denominators first (a power of the generator spans "
                                  "the same group up to finite index)");
            ps.insert(p);
        }
    }
    primes.assign(ps.begin(), ps.end());
    IntMatrix E(static_cast<int>(primes.size()), static_cast<int>(gens.size()));
    for (int n = 0; n < E.cols; ++n) {
        const auto& exps = gens[n].exponents();
        for (int i = 0; i < E.rows; ++i) {
            auto it = exps.find(primes[i]);
            if (it != exps.end()) E.at(i, n) = it->second.get_num();
        }
    }
    return E;
}

void canonical_sign(std::vector<mpz_class>& v) {
    for (const mpz_class& x : v) {
        if (x > 0) return;
        if (x < 0) {
            for (mpz_class& y : v) y = -y;
            return;
        }
    }
}

mpz_class sup_norm(const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (const mpz_class& x : v) {
        mpz_class a = abs(x);
        if (a > s) s = a;
    }
    return s;
}

bool lex_less(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

struct Candidate {
    std::vector<mpz_class> z;
    mpz_class sup;
};

void sort_candidates(std::vector<Candidate>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
        if (a.sup != b.sup) return a.sup < b.sup;
        return lex_less(a.z, b.z);
    });
}

// greedy selection of `want` independent vectors from candidates sorted by
// (sup, lex); realizes the sup-norm minima when the candidate set is complete
std::vector<Candidate> pick_independent(const std::vector<Candidate>& cs, int want) {
    std::vector<Candidate> sel;
    for (const Candidate& c : cs) {
        if (static_cast<int>(sel.size()) == want) break;
        QMatrix T(static_cast<int>(sel.size()) + 1, static_cast<int>(c.z.size()));
        for (size_t i = 0; i < sel.size(); ++i)
            for (size_t j = 0; j < sel[i].z.size(); ++j)
                T.at(static_cast<int>(i), static_cast<int>(j)) = mpq_class(sel[i].z[j]);
        for (size_t j = 0; j < c.z.size(); ++j)
            T.at(static_cast<int>(sel.size()), static_cast<int>(j)) = mpq_class(c.z[j]);
        if (rank_q(T) == static_cast<int>(sel.size()) + 1) sel.push_back(c);
    }
    return sel;
}

struct GramSchmidt {
    int L = 0;
    std::vector<mpq_class> d;          // squared lengths of the orthogonalized basis
    std::vector<std::vector<mpq_class>> mu; // mu[j][k], k < j
};

GramSchmidt gram_schmidt(const IntMatrix& G) {
    GramSchmidt gs;
    gs.L = G.rows;
    gs.d.resize(gs.L);
    gs.mu.assign(gs.L, {});
    for (int j = 0; j < gs.L; ++j) {
        gs.mu[j].resize(j);
        for (int k = 0; k < j; ++k) {
            mpq_class v(G.at(j, k));
            for (int i = 0; i < k; ++i) v -= gs.d[i] * gs.mu[j][i] * gs.mu[k][i];
            gs.mu[j][k] = v / gs.d[k];
        }
        mpq_class v(G.at(j, j));
        for (int i = 0; i < j; ++i) v -= gs.d[i] * gs.mu[j][i] * gs.mu[j][i];
        if (v <= 0) throw verify_error("kernel Gram matrix is not positive definite");
        gs.d[j] = v;
    }
    return gs;
}

// all lattice vectors K*c with squared length <= bound2, filtered to
// |z|_inf <= cap and deduplicated up to sign; false when the node budget runs out
bool enumerate_short_vectors(const IntMatrix& K, const mpq_class& bound2, const mpz_class& cap,
                             long max_nodes, std::vector<Candidate>& out) {
    int L = K.cols;
    GramSchmidt gs = gram_schmidt(mat_mul(K.transposed(), K));
    std::vector<mpz_class> c(L);
    std::set<std::vector<mpz_class>> seen;
    long nodes = 0;

    // level k chooses c[k], outermost level first; rem is the budget left
    // after the outer levels
    auto descend = [&](auto&& self, int k, const mpq_class& rem) -> bool {
        mpq_class t(0); // offset of c[k] induced by the outer choices
        for (int j = k + 1; j < L; ++j) t += gs.mu[j][k] * mpq_class(c[j]);
        // 1 = keep scanning, 0 = left the window, -1 = budget exhausted
        auto step = [&](const mpz_class& v) -> int {
            if (++nodes > max_nodes) return -1;
            mpq_class y = mpq_class(v) + t;
            mpq_class q = gs.d[k] * y * y;
            if (q > rem) return 0;
            c[k] = v;
            if (k > 0) return self(self, k - 1, rem - q) ? 1 : -1;
            std::vector<mpz_class> z(K.rows, 0);
            bool zero = true;
            for (int i = 0; i < K.rows; ++i) {
                for (int j = 0; j < L; ++j) z[i] += K.at(i, j) * c[j];
                if (z[i] != 0) zero = false;
            }
            if (!zero) {
                canonical_sign(z);
                mpz_class s = sup_norm(z);
                if (s <= cap && seen.insert(z).second) out.push_back({z, s});
            }
            return 1;
        };
        // scan down from the window center, then up, stopping at the exact
        // boundary in each direction
        mpz_class start;
        mpz_fdiv_q(start.get_mpz_t(), mpq_class(-t).get_num().get_mpz_t(),
                   mpq_class(-t).get_den().get_mpz_t());
        for (mpz_class v = start;; --v) {
            int r = step(v);
            if (r < 0) return false;
            if (r == 0) break;
        }
        for (mpz_class v = start + 1;; ++v) {
            int r = step(v);
            if (r < 0) return false;
            if (r == 0) break;
        }
        return true;
    };
    return descend(descend, L - 1, bound2);
}

std::vector<Candidate> column_family(const IntMatrix& K) {
    std::vector<Candidate> fam;
    for (int j = 0; j < K.cols; ++j) {
        std::vector<mpz_class> z = K.col(j);
        canonical_sign(z);
        fam.push_back({z, sup_norm(z)});
    }
    sort_candidates(fam);
    return fam;
}

} // namespace

IntMatrix dependency_module(const std::vector<GroupElement>& gens) {
    std::vector<mpz_class> primes;
    IntMatrix E = exponent_matrix(gens, primes);
    int N = E.cols;
    int M = E.rows == 0 ? 0 : rank_q(to_qmatrix(E));
    if (M == 0)
        throw input_error("every generator is trivial; the subgroup has rank zero");
    if (M == N)
        throw input_error("the exponent matrix has full rank " + std::to_string(N) +
                          "; independent generators admit no dependencies");
    return hnf_kernel_basis(E);
}

DependencyBasis siegel_basis(const IntMatrix& A, long max_nodes) {
    int M = A.rows, N = A.cols;
    if (M < 1) throw input_error("empty matrix");
    if (M >= N)
        throw input_error("a " + std::to_string(M) + " x " + std::to_string(N) +
                          " matrix has no dependencies; more columns than rows are needed");
    if (rank_q(to_qmatrix(A)) != M)
        throw input_error("matrix rows are dependent; pass a full-row-rank matrix");

    DependencyBasis out;
    GramMinor gm = gram_det_and_minor_gcd(A);
    out.gram_det = gm.gram_det;
    out.minor_gcd = gm.minor_gcd;
    mpz_class d2 = gm.minor_gcd * gm.minor_gcd;
    mpq_class b2(gm.gram_det, d2);
    b2.canonicalize();
    out.bound = QInterval(b2).sqrt_clamped(128);

    // integer part of the bound caps every minimum: the product of the
    // sup norms stays below the bound and each factor is at least one
    mpz_class B0 = sqrt(mpz_class(b2.get_num() / b2.get_den()));
    if (B0 < 1) throw verify_error("Siegel bound fell below one on a full-rank matrix");

    IntMatrix K0 = hnf_kernel_basis(A);
    int L = K0.cols;
    if (L != N - M) throw verify_error("kernel rank does not match the corank");
    IntMatrix AK = mat_mul(A, K0);
    for (const mpz_class& x : AK.a)
        if (x != 0) throw verify_error("kernel basis fails A z = 0");

    IntMatrix K = lll_reduce(K0);
    std::vector<Candidate> fam = column_family(K);

    // every minimum has sup norm at most min(B0, largest reduced-basis sup)
    mpz_class cap = fam.back().sup;
    if (B0 < cap) cap = B0;
    mpq_class bound2(mpz_class(N) * cap * cap);

    std::vector<Candidate> cands;
    bool complete = enumerate_short_vectors(K, bound2, cap, max_nodes, cands);
    if (complete) {
        sort_candidates(cands);
        std::vector<Candidate> sel = pick_independent(cands, L);
        if (static_cast<int>(sel.size()) != L)
            throw verify_error("fewer independent kernel vectors than the corank");
        out.exhaustive = true;
        for (const Candidate& c : sel) {
            out.vectors.push_back(c.z);
            out.sup_norms.push_back(c.sup);
        }
    } else {
        out.exhaustive = false;
        for (const Candidate& c : fam) {
            out.vectors.push_back(c.z);
            out.sup_norms.push_back(c.sup);
        }
    }
    out.product = 1;
    for (const mpz_class& s : out.sup_norms) out.product *= s;
    mpz_class lhs = out.product * out.product * gm.minor_gcd * gm.minor_gcd;
    out.bound_ok = lhs <= gm.gram_det;
    if (out.exhaustive && !out.bound_ok)
        throw verify_error("kernel minima product exceeds the Siegel bound");
    return out;
}

QInterval gram_volume_integral(const SubgroupPresentation& basis, const IntMatrix& coords,
                               const PrecisionContext& ctx) {
    int M = coords.rows, N = coords.cols;
    if (M < 1 || static_cast<int>(basis.generators.size()) != M)
        throw input_error("coordinate matrix must have one row per basis element");
    if (basis.rank != M)
        throw input_error("the presented family is not a basis (rank " +
                          std::to_string(basis.rank) + " of " + std::to_string(M) + ")");
    if (N < M) throw input_error("fewer generators than basis elements");
    int S = static_cast<int>(basis.support.size());

    mpz_class tuples = 1;
    for (int l = 0; l < M; ++l) {
        tuples *= S;
        if (tuples > kTupleGuard)
            throw input_error("place-tuple sum over " + std::to_string(S) + "^" +
                              std::to_string(M) + " terms is too large");
    }

    // log tables of the generators, as words in the basis rows
    ExactMatrix alog(N, S);
    for (int n = 0; n < N; ++n)
        for (int s = 0; s < S; ++s) {
            LogValue v;
            for (int m = 0; m < M; ++m)
                v = v + basis.A.at(m, s).scale(mpq_class(coords.at(m, n)));
            alog.at(n, s) = v;
        }
    IntervalMatrix ev(N, S);
    for (int n = 0; n < N; ++n)
        for (int s = 0; s < S; ++s) ev.at(n, s) = alog.at(n, s).eval(ctx.bits);

    mpq_class twoM(1);
    for (int l = 0; l < M; ++l) twoM /= 2;

    QInterval sum(mpq_class(0));
    std::vector<int> idx(M, 0);
    while (true) {
        IntervalMatrix G(M, M);
        for (int l = 0; l < M; ++l)
            for (int k = l; k < M; ++k) {
                QInterval g(mpq_class(0));
                for (int n = 0; n < N; ++n) g = g + ev.at(n, idx[l]) * ev.at(n, idx[k]);
                G.at(l, k) = g;
                G.at(k, l) = g;
            }
        mpq_class mass(1);
        for (int l = 0; l < M; ++l) mass *= basis.masses[idx[l]];
        sum = sum + exact_det(G).sqrt_clamped(ctx.bits).scale(mass);

        int l = M - 1;
        while (l >= 0 && idx[l] == S - 1) idx[l--] = 0;
        if (l < 0) break;
        ++idx[l];
    }
    QInterval tuple_route = sum.scale(twoM);

    GramMinor gm = gram_det_and_minor_gcd(coords);
    QInterval det_route =
        QInterval(mpq_class(gm.gram_det)).sqrt_clamped(ctx.bits) * group_height(basis, ctx);

    if (!tuple_route.overlaps(det_route))
        throw verify_error("volume integral routes disagree");
    return QInterval(std::max(tuple_route.lo(), det_route.lo()),
                     std::min(tuple_route.hi(), det_route.hi()));
}

DependencyCertificate certify_small_dependencies(const std::vector<GroupElement>& gens,
                                                 const PrecisionContext& ctx) {
    std::vector<mpz_class> primes;
    IntMatrix E = exponent_matrix(gens, primes);
    int N = E.cols;
    int M = E.rows == 0 ? 0 : rank_q(to_qmatrix(E));
    if (M == 0)
        throw input_error("every generator is trivial; the subgroup has rank zero");
    if (M == N)
        throw input_error("the exponent matrix has full rank " + std::to_string(N) +
                          "; independent generators admit no dependencies");

    DependencyCertificate cert;

    // canonical basis of the exponent lattice, generators as words in it
    IntMatrix Gb = row_basis_hnf(E.transposed());
    if (Gb.rows != M) throw verify_error("basis rank does not match the exponent rank");
    IntMatrix A;
    if (!integral_change_of_basis(Gb.transposed(), E, A))
        throw verify_error("generators are not integer words in the computed basis");
    IntMatrix back = mat_mul(Gb.transposed(), A);
    if (!(back.rows == E.rows && back.cols == E.cols && back.a == E.a))
        throw verify_error("basis coordinates fail to reproduce the exponents");
    cert.coords = A;

    cert.zs = siegel_basis(A);
    for (const auto& z : cert.zs.vectors)
        for (int p = 0; p < E.rows; ++p) {
            mpz_class acc = 0;
            for (int n = 0; n < N; ++n) acc += E.at(p, n) * z[n];
            if (acc != 0) throw verify_error("dependency vector fails the exponent relations");
        }

    for (int m = 0; m < M; ++m) {
        std::map<mpz_class, mpq_class> exps;
        for (int i = 0; i < Gb.cols; ++i)
            if (Gb.at(m, i) != 0) exps[primes[static_cast<size_t>(i)]] = mpq_class(Gb.at(m, i));
        cert.basis_elements.push_back(GroupElement::from_exponents(exps));
    }
    SubgroupPresentation pres = build_presentation(cert.basis_elements, ctx);
    if (pres.rank != M) throw verify_error("basis presentation lost rank");

    cert.heights = small_independent_generators(pres, ctx);
    cert.volume_integral = gram_volume_integral(pres, A, ctx);

    std::vector<LogValue> ha(static_cast<size_t>(N));
    LogValue ha_sum;
    for (int n = 0; n < N; ++n) {
        ha[static_cast<size_t>(n)] = weil_height_value(gens[static_cast<size_t>(n)], ctx);
        ha_sum = ha_sum + ha[static_cast<size_t>(n)];
        cert.gen_heights.push_back(ha[static_cast<size_t>(n)].eval(ctx.bits));
    }
    std::vector<LogValue> hb(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m)
        hb[static_cast<size_t>(m)] = weil_height_value(cert.heights.beta_elements[m], ctx);

    mpq_class pz(cert.zs.product);
    cert.group_product = cert.heights.h_group.scale(pz);
    if (cert.group_product.lo() > cert.volume_integral.hi())
        throw verify_error("group height product contradicts the volume integral");
    cert.group_bound_ok = cert.zs.bound_ok;

    // the two sides of the small-dependency inequality; guaranteed once the
    // dependency bound and the generator certificate both hold
    bool guaranteed = cert.zs.bound_ok && cert.heights.certified;
    if (M == 1) {
        LogValue diff = hb[0].scale(pz) - ha_sum;
        cert.height_bound_ok = diff.sign(ctx) <= 0;
        cert.height_product = hb[0].eval(ctx.bits).scale(pz);
        cert.height_sum_power = ha_sum.eval(ctx.bits);
        if (!cert.height_bound_ok && guaranteed)
            throw verify_error("height product bound fails on a certified instance");
        return cert;
    }
    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        QInterval lhs(pz);
        for (int m = 0; m < M; ++m) lhs = lhs * hb[static_cast<size_t>(m)].eval(bits);
        QInterval rhs = ha_sum.eval(bits).pow_uint(static_cast<unsigned>(M));
        cert.height_product = lhs;
        cert.height_sum_power = rhs;
        if (lhs.hi() <= rhs.lo()) {
            cert.height_bound_ok = true;
            return cert;
        }
        if (lhs.lo() > rhs.hi()) {
            if (guaranteed)
                throw verify_error("height product bound fails on a certified instance");
            cert.height_bound_ok = false;
            return cert;
        }
    }
    if (guaranteed)
        throw precision_error("height product bound undecided at the precision ceiling");
    cert.height_bound_ok = false;
    return cert;
}

} // namespace heights
