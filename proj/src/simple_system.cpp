#include <algorithm>

#include "heights/zonoid.hpp"

namespace heights {

namespace {

bool column_is_zero(const ExactMatrix& A, int j) {
    for (int i = 0; i < A.rows; ++i)
        if (!A.at(i, j).is_zero()) return false;
    return true;
}

bool matrix_all_rational(const ExactMatrix& A) {
    for (const auto& v : A.a)
        if (!v.is_rational_point()) return false;
    return true;
}

// rank certificate for non-rational coefficients: some N-subset whose
// determinant interval excludes zero
bool certify_full_rank(const ExactMatrix& A, const PrecisionContext& ctx) {
    int N = A.rows, M = A.cols;
    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        std::vector<int> idx(N);
        for (int i = 0; i < N; ++i) idx[i] = i;
        do {
            ExactMatrix sub(N, N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) sub.at(i, j) = A.at(i, idx[j]);
            QInterval d = exact_det(sub, bits);
            if (!d.contains_zero()) return true;
        } while (next_combination(idx, M));
    }
    return false;
}

} // namespace

SimpleSystem build_simple_system(std::vector<mpq_class> masses, ExactMatrix coeffs,
                                 const PrecisionContext& ctx) {
    if (static_cast<int>(masses.size()) != coeffs.cols)
        throw input_error("mass count does not match coefficient columns");
    for (const auto& m : masses)
        if (m < 0) throw input_error("masses must be nonnegative");

    SimpleSystem s;
    s.n_funcs = coeffs.rows;
    std::vector<int> keep;
    for (int j = 0; j < coeffs.cols; ++j)
        if (masses[j] != 0 && !column_is_zero(coeffs, j)) keep.push_back(j);

    s.n_atoms = static_cast<int>(keep.size());
    s.coeffs = ExactMatrix(s.n_funcs, s.n_atoms);
    s.masses.resize(keep.size());
    for (int j = 0; j < s.n_atoms; ++j) {
        s.masses[j] = masses[keep[j]];
        for (int i = 0; i < s.n_funcs; ++i) s.coeffs.at(i, j) = coeffs.at(i, keep[j]);
    }

    if (s.n_atoms < s.n_funcs)
        throw input_error("system has fewer atoms than functions; rank deficient");
    s.all_rational = matrix_all_rational(s.coeffs);
    if (s.all_rational) {
        QMatrix Q(s.n_funcs, s.n_atoms);
        for (size_t i = 0; i < s.coeffs.a.size(); ++i) Q.a[i] = s.coeffs.a[i].cst().lo();
        if (rank_q(Q) < s.n_funcs)
            throw input_error("coefficient rows are linearly dependent");
    } else {
        if (!certify_full_rank(s.coeffs, ctx))
            throw input_error("could not certify full rank of the coefficient matrix");
    }
    return s;
}

QInterval delta_integral(const SimpleSystem& s, const PrecisionContext& ctx, int max_atoms) {
    int N = s.n_funcs, M = s.n_atoms;
    if (M > max_atoms)
        throw input_error("atom count exceeds the subset enumeration guard");
    QInterval total;
    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    do {
        ExactMatrix sub(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) sub.at(i, j) = s.coeffs.at(i, idx[j]);
        QInterval d = exact_det(sub, ctx.bits).abs();
        mpq_class mass_prod = 1;
        for (int j = 0; j < N; ++j) mass_prod *= s.masses[idx[j]];
        total += d.scale(mass_prod);
    } while (next_combination(idx, M));
    mpz_class nfact = 1;
    for (int i = 2; i <= N; ++i) nfact *= i;
    return total.scale(mpq_class(nfact));
}

QInterval zonoid_volume(const SimpleSystem& s, const PrecisionContext& ctx) {
    // (2^N / N!) * integral
    mpz_class nfact = 1, pw = 1;
    for (int i = 2; i <= s.n_funcs; ++i) nfact *= i;
    for (int i = 0; i < s.n_funcs; ++i) pw *= 2;
    mpq_class f(pw, nfact);
    f.canonicalize();
    return delta_integral(s, ctx).scale(f);
}

ZonotopeSpec dual_zonotope_of(const SimpleSystem& s) {
    ZonotopeSpec z;
    z.dim = s.n_funcs;
    z.segments = ExactMatrix(s.n_funcs, s.n_atoms);
    for (int j = 0; j < s.n_atoms; ++j)
        for (int i = 0; i < s.n_funcs; ++i)
            z.segments.at(i, j) = s.coeffs.at(i, j).scale(s.masses[j]);
    return z;
}

QInterval l1_pullback_norm(const ExactMatrix& U, const std::vector<mpq_class>* masses,
                           const std::vector<mpq_class>& xi, const PrecisionContext& ctx) {
    int M = U.rows, N = U.cols;
    if (static_cast<int>(xi.size()) != N)
        throw input_error("vector length does not match matrix columns");
    if (masses && static_cast<int>(masses->size()) != M)
        throw input_error("mass count does not match matrix rows");
    QInterval total;
    for (int m = 0; m < M; ++m) {
        LogValue dot;
        for (int j = 0; j < N; ++j) dot += U.at(m, j).scale(xi[j]);
        QInterval term;
        if (dot.is_exact()) {
            if (dot.is_zero())
                term = QInterval();
            else
                term = dot.abs(ctx).eval(ctx.bits);
        } else {
            term = dot.eval(ctx.bits).abs();
        }
        total += masses ? term.scale((*masses)[m]) : term;
    }
    return total;
}

LogValue pullback_norm_value(const SimpleSystem& s, const std::vector<mpq_class>& xi,
                             const PrecisionContext& ctx) {
    if (static_cast<int>(xi.size()) != s.n_funcs)
        throw input_error("vector length does not match the system");
    LogValue total;
    for (int m = 0; m < s.n_atoms; ++m) {
        LogValue dot;
        for (int l = 0; l < s.n_funcs; ++l) dot += s.coeffs.at(l, m).scale(xi[l]);
        if (dot.is_exact())
            total += dot.abs(ctx).scale(s.masses[m]);
        else
            total += LogValue(dot.eval(ctx.bits).abs()).scale(s.masses[m]);
    }
    return total;
}

QInterval l1_norm_row(const SimpleSystem& s, int row, const PrecisionContext& ctx) {
    QInterval total;
    for (int m = 0; m < s.n_atoms; ++m) {
        const LogValue& v = s.coeffs.at(row, m);
        QInterval term;
        if (v.is_exact()) {
            if (v.is_zero())
                term = QInterval();
            else
                term = v.abs(ctx).eval(ctx.bits);
        } else {
            term = v.eval(ctx.bits).abs();
        }
        total += term.scale(s.masses[m]);
    }
    return total;
}

GapBound perturbation_gap_bound(const SimpleSystem& s, const SimpleSystem& t,
                                const PrecisionContext& ctx) {
    if (s.n_funcs != t.n_funcs || s.n_atoms != t.n_atoms || s.masses != t.masses)
        throw input_error("systems do not share an atom layout");
    int N = s.n_funcs;

    QInterval is = delta_integral(s, ctx);
    QInterval it = delta_integral(t, ctx);
    GapBound out;
    out.gap = (is - it).abs();

    // C1 = max over the 2N row norms; max of intervals is componentwise
    auto imax = [](const QInterval& a, const QInterval& b) {
        return QInterval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
    };
    QInterval c1;
    for (int l = 0; l < N; ++l) {
        c1 = imax(c1, l1_norm_row(s, l, ctx));
        c1 = imax(c1, l1_norm_row(t, l, ctx));
    }

    QInterval diff_sum;
    for (int l = 0; l < N; ++l) {
        SimpleSystem diff;
        diff.n_funcs = 1;
        diff.n_atoms = s.n_atoms;
        diff.masses = s.masses;
        diff.coeffs = ExactMatrix(1, s.n_atoms);
        for (int m = 0; m < s.n_atoms; ++m)
            diff.coeffs.at(0, m) = s.coeffs.at(l, m) - t.coeffs.at(l, m);
        diff_sum += l1_norm_row(diff, 0, ctx);
    }

    mpz_class nfact = 1;
    for (int i = 2; i <= N; ++i) nfact *= i;
    out.bound = c1.pow_uint(static_cast<unsigned>(N - 1)).scale(mpq_class(nfact)) * diff_sum;

    if (out.gap.lo() > out.bound.hi())
        throw verify_error("perturbation gap exceeds its certified bound");
    return out;
}

} // namespace heights
