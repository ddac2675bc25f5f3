#include <algorithm>

#include "heights/minima.hpp"

namespace heights {

namespace {

std::vector<mpq_class> to_q(const std::vector<mpz_class>& v) {
    std::vector<mpq_class> q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = mpq_class(v[i]);
    return q;
}

// -1 / 0 / +1 comparison of two norm values; undecidable differences are
// treated as ties and resolved by the caller's lexicographic order
int compare_norms(const LogValue& a, const LogValue& b, const PrecisionContext& ctx) {
    try {
        return (a - b).sign(ctx);
    } catch (const precision_error&) {
        return 0;
    }
}

// certified sigma > 0 with delta(xi) >= sigma * |xi|_2, escalating precision
mpq_class norm_floor(const SimpleSystem& s, const PrecisionContext& ctx) {
    int N = s.n_funcs, M = s.n_atoms;
    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        IntervalMatrix G(N, N);
        for (int m = 0; m < M; ++m) {
            std::vector<QInterval> a(N);
            for (int i = 0; i < N; ++i) a[i] = s.coeffs.at(i, m).eval(bits).scale(s.masses[m]);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) G.at(i, j) += a[i] * a[j];
        }
        mpq_class t;
        try {
            t = lambda_min_lower_bound(G);
        } catch (const input_error&) {
            continue; // enclosure too wide to certify, retry tighter
        }
        mpq_class sigma = QInterval(t).sqrt_clamped(bits).lo();
        if (sigma > 0) return sigma;
    }
    throw precision_error("norm floor could not be certified at the precision ceiling");
}

struct Candidate {
    std::vector<mpz_class> vec;
    LogValue value;
};

// mass-folded rows rounded to a common denominator; midpoints are fine here,
// the matrix only steers basis reduction and never enters a certificate
IntMatrix folded_rows(const SimpleSystem& s) {
    int N = s.n_funcs, M = s.n_atoms;
    QMatrix D(M, N);
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < N; ++i) {
            const LogValue& v = s.coeffs.at(i, m);
            QInterval e = v.is_rational_point() ? v.cst() : v.eval(64);
            D.at(m, i) = e.mid() * s.masses[m];
        }
    mpz_class den = 1;
    for (const auto& q : D.a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    IntMatrix T(M, N);
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < N; ++i) T.at(m, i) = mpq_class(D.at(m, i) * den).get_num();
    return T;
}

// unimodular reparameterization that shortens the folded rows; skewed systems
// enumerate in these coordinates so the candidate box stays small
IntMatrix reduction_transform(const SimpleSystem& s) {
    int N = s.n_funcs;
    IntMatrix I(N, N);
    for (int i = 0; i < N; ++i) I.at(i, i) = 1;
    if (N == 1) return I;
    try {
        IntMatrix T = folded_rows(s);
        IntMatrix R = lll_reduce(T);
        IntMatrix X;
        if (!integral_change_of_basis(T, R, X) || X.rows != N || X.cols != N) return I;
        mpz_class d = exact_det(X);
        if (d != 1 && d != -1) return I;
        return X;
    } catch (const std::exception&) {
        return I;
    }
}

// same norm in new coordinates: delta(X y) = sum_m nu_m |<y, X^T a_m>|
SimpleSystem transform_system(const SimpleSystem& s, const IntMatrix& X) {
    int N = s.n_funcs, M = s.n_atoms;
    SimpleSystem t;
    t.n_funcs = N;
    t.n_atoms = M;
    t.masses = s.masses;
    t.all_rational = s.all_rational;
    t.coeffs = ExactMatrix(N, M);
    for (int i = 0; i < N; ++i)
        for (int m = 0; m < M; ++m) {
            LogValue acc;
            for (int k = 0; k < N; ++k) acc += s.coeffs.at(k, m).scale(mpq_class(X.at(k, i)));
            t.coeffs.at(i, m) = acc;
        }
    return t;
}

// greedy selection of N independent vectors in (norm, lex) order
MinimaResult select_independent(std::vector<Candidate>& cands, int N, bool exhaustive,
                                const PrecisionContext& ctx) {
    std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
        int c = compare_norms(x.value, y.value, ctx);
        if (c != 0) return c < 0;
        return x.vec < y.vec;
    });
    MinimaResult r;
    QMatrix sel(N, 0);
    for (const Candidate& c : cands) {
        if (static_cast<int>(r.vectors.size()) == N) break;
        QMatrix trial(N, sel.cols + 1);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < sel.cols; ++j) trial.at(i, j) = sel.at(i, j);
            trial.at(i, sel.cols) = mpq_class(c.vec[i]);
        }
        if (rank_q(trial) != trial.cols) continue;
        sel = trial;
        r.vectors.push_back(c.vec);
        r.norm_values.push_back(c.value);
        r.norms.push_back(c.value.eval(ctx.bits));
    }
    if (static_cast<int>(r.vectors.size()) != N)
        throw verify_error("exhausted candidates before finding an independent family");
    r.exhaustive = exhaustive;
    IntMatrix B(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) B.at(i, j) = r.vectors[j][i];
    mpz_class d = exact_det(B);
    r.index = d < 0 ? mpz_class(-d) : d;
    if (r.index == 0)
        throw verify_error("selected family is not independent");
    return r;
}

// reduced-basis fallback: approximate the norm geometry by the euclidean
// norm of the mass-folded rows and reduce the identity presentation
MinimaResult reduced_basis_minima(const SimpleSystem& s, const PrecisionContext& ctx) {
    int N = s.n_funcs;
    IntMatrix T = folded_rows(s);
    IntMatrix R = lll_reduce(T);
    IntMatrix X;
    if (!integral_change_of_basis(T, R, X) || X.rows != N || X.cols != N)
        throw verify_error("reduced basis did not present the original lattice");
    std::vector<Candidate> cands;
    for (int j = 0; j < N; ++j) {
        Candidate c;
        c.vec.resize(N);
        for (int i = 0; i < N; ++i) c.vec[i] = X.at(i, j);
        // canonical sign: first nonzero coordinate positive
        for (int i = 0; i < N; ++i) {
            if (c.vec[i] == 0) continue;
            if (c.vec[i] < 0)
                for (int k = 0; k < N; ++k) c.vec[k] = -c.vec[k];
            break;
        }
        c.value = pullback_norm_value(s, to_q(c.vec), ctx);
        cands.push_back(std::move(c));
    }
    return select_independent(cands, N, false, ctx);
}

} // namespace

MinimaResult successive_minima(const SimpleSystem& s, const PrecisionContext& ctx) {
    int N = s.n_funcs;
    if (N > 6)
        return reduced_basis_minima(s, ctx);

    IntMatrix X = reduction_transform(s);
    bool moved = !is_identity(X);
    SimpleSystem sr = moved ? transform_system(s, X) : s;

    // candidate ceiling: the working basis already gives N independent
    // vectors, so nothing above max_i delta(b_i) can be a minimum
    mpq_class cand_hi = 0;
    for (int i = 0; i < N; ++i) {
        std::vector<mpq_class> e(N, 0);
        e[i] = 1;
        mpq_class hi = pullback_norm_value(sr, e, ctx).eval(ctx.bits).hi();
        if (hi > cand_hi) cand_hi = hi;
    }

    mpq_class sigma = norm_floor(sr, ctx);
    mpz_class R_z = mpq_class(cand_hi / sigma).get_num() / mpq_class(cand_hi / sigma).get_den();
    mpz_class box = 1;
    for (int i = 0; i < N; ++i) box *= 2 * R_z + 1;
    if (box > kEnumGuard)
        return reduced_basis_minima(s, ctx);
    long R = static_cast<long>(R_z.get_si());

    std::vector<Candidate> cands;
    std::vector<long> xi(N, -R);
    for (;;) {
        // one representative per +-pair: first nonzero coordinate positive
        int first = -1;
        for (int i = 0; i < N; ++i)
            if (xi[i] != 0) {
                first = i;
                break;
            }
        if (first >= 0 && xi[first] > 0) {
            std::vector<mpz_class> y(N);
            for (int i = 0; i < N; ++i) y[i] = xi[i];
            Candidate c;
            c.value = pullback_norm_value(sr, to_q(y), ctx);
            if (!(c.value.eval(ctx.bits).lo() > cand_hi)) {
                c.vec.resize(N);
                if (moved)
                    for (int i = 0; i < N; ++i)
                        for (int k = 0; k < N; ++k) c.vec[i] += X.at(i, k) * y[k];
                else
                    c.vec = std::move(y);
                // canonical sign in the original coordinates
                for (int i = 0; i < N; ++i) {
                    if (c.vec[i] == 0) continue;
                    if (c.vec[i] < 0)
                        for (int k = 0; k < N; ++k) c.vec[k] = -c.vec[k];
                    break;
                }
                cands.push_back(std::move(c));
            }
        }
        int k = N - 1;
        while (k >= 0 && xi[k] == R) xi[k--] = -R;
        if (k < 0) break;
        ++xi[k];
    }
    return select_independent(cands, N, true, ctx);
}

ReductionCertificate reduce_by_minima(const SimpleSystem& s, const PrecisionContext& ctx) {
    ReductionCertificate c;
    c.minima = successive_minima(s, ctx);
    int N = s.n_funcs;
    c.index_bound = 1;
    for (int i = 2; i <= N; ++i) c.index_bound *= i;
    if (c.minima.exhaustive && c.minima.index > c.index_bound)
        throw verify_error("minima sublattice index exceeds N!");

    if (N == 1) {
        // a single minimum meets the integral exactly, so intervals cannot
        // separate the two sides; decide the sign instead
        LogValue integral;
        for (int m = 0; m < s.n_atoms; ++m)
            integral = integral + s.coeffs.at(0, m).abs(ctx).scale(s.masses[m]);
        int sgn = (c.minima.norm_values[0] - integral).sign(ctx);
        c.product = c.minima.norm_values[0].eval(ctx.bits);
        c.integral = integral.eval(ctx.bits);
        if (sgn <= 0) {
            c.certified = true;
            return c;
        }
        if (c.minima.exhaustive)
            throw verify_error("minima product exceeds the determinant integral");
        return c;
    }

    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        QInterval prod(mpq_class(1));
        for (const LogValue& v : c.minima.norm_values) prod = prod * v.eval(bits);
        PrecisionContext local{bits, ctx.max_bits};
        QInterval integral = delta_integral(s, local);
        c.product = prod;
        c.integral = integral;
        if (prod.hi() <= integral.lo()) {
            c.certified = true;
            return c;
        }
        if (prod.lo() > integral.hi()) {
            // true minima always satisfy the bound; an upper-bound family
            // from the fallback may genuinely exceed it
            if (c.minima.exhaustive)
                throw verify_error("minima product exceeds the determinant integral");
            return c;
        }
    }
    if (!c.minima.exhaustive) return c;
    throw precision_error("product bound undecided at the precision ceiling");
}

MinkowskiReport minkowski_check(const SimpleSystem& s, const PrecisionContext& ctx) {
    int N = s.n_funcs;
    if (N > 3)
        throw input_error("exact primal volume limits the check to dimensions 1..3");
    MinkowskiReport r;
    r.minima = successive_minima(s, ctx);
    r.vol_primal = primal_ball_volume_exact(s.coeffs.transposed(), s.masses, ctx);

    mpz_class two_n = 1, four_n = 1, nfact = 1;
    for (int i = 0; i < N; ++i) two_n *= 2, four_n *= 4;
    for (int i = 2; i <= N; ++i) nfact *= i;
    mpq_class mahler_floor(four_n, nfact);
    mahler_floor.canonicalize();

    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        PrecisionContext local{bits, ctx.max_bits};
        r.vol_dual = zonoid_volume(s, local);
        r.integral = delta_integral(s, local);
        QInterval prod(mpq_class(1));
        for (const LogValue& v : r.minima.norm_values) prod = prod * v.eval(bits);
        r.minima_product = prod;

        QInterval lhs1 = prod * r.vol_primal;
        QInterval lhs2 = r.vol_primal * r.vol_dual;
        QInterval lhs3 = r.vol_primal * r.integral;
        if (lhs1.lo() > two_n)
            throw verify_error("minima product times primal volume exceeds 2^N");
        if (lhs2.hi() < mahler_floor)
            throw verify_error("volume product drops below 4^N / N!");
        if (lhs3.hi() < two_n)
            throw verify_error("primal volume times integral drops below 2^N");
        r.minkowski_ok = lhs1.hi() <= two_n;
        r.mahler_ok = lhs2.lo() >= mahler_floor;
        r.reciprocity_ok = lhs3.lo() >= two_n;
        if (r.minkowski_ok && r.mahler_ok && r.reciprocity_ok) return r;
    }
    throw precision_error("volume inequalities undecided at the precision ceiling");
}

} // namespace heights
