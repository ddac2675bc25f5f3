#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "heights/zonoid.hpp"

namespace heights {

QInterval mcmullen_volume(const ZonotopeSpec& z, const PrecisionContext& ctx, int max_atoms) {
    int N = z.dim, M = z.segments.cols;
    if (N < 1 || z.segments.rows != N)
        throw input_error("zonotope dimension mismatch");
    if (M > max_atoms)
        throw input_error("segment count exceeds the subset enumeration guard");
    if (M < N) return QInterval();
    QInterval total;
    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    do {
        ExactMatrix sub(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) sub.at(i, j) = z.segments.at(i, idx[j]);
        total += exact_det(sub, ctx.bits).abs();
    } while (next_combination(idx, M));
    mpz_class pw = 1;
    for (int i = 0; i < N; ++i) pw *= 2;
    return total.scale(mpq_class(pw));
}

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// counter-based uniform [0,1): value i of stream `seed`
double rnd01(uint64_t seed, uint64_t ctr) {
    uint64_t z = mix64(seed ^ (0x9e3779b97f4a7c15ull * (ctr + 1)));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// rational midpoints of the entries (exact entries pass through)
QMatrix midpoint_matrix(const ExactMatrix& A, long bits) {
    QMatrix D(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            const LogValue& v = A.at(i, j);
            D.at(i, j) = v.is_rational_point() ? v.cst().lo() : v.eval(bits).mid();
        }
    return D;
}

// primitive integer normal of the span of N-1 rows, by Laplace cofactors;
// zero vector when the rows are rank deficient
std::vector<mpz_class> cofactor_normal(const QMatrix& S) {
    int N = S.cols;
    std::vector<mpq_class> u(N);
    bool nonzero = false;
    for (int j = 0; j < N; ++j) {
        QMatrix sub(N - 1, N - 1);
        for (int r = 0; r < N - 1; ++r) {
            int cc = 0;
            for (int c = 0; c < N; ++c) {
                if (c == j) continue;
                sub.at(r, cc++) = S.at(r, c);
            }
        }
        mpq_class d = exact_det(sub);
        u[j] = (j % 2 == 0) ? d : mpq_class(-d);
        if (u[j] != 0) nonzero = true;
    }
    std::vector<mpz_class> out(N);
    if (!nonzero) return out;
    mpz_class l = 1;
    for (int j = 0; j < N; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), u[j].get_den().get_mpz_t());
    mpz_class g = 0;
    for (int j = 0; j < N; ++j) {
        out[j] = mpq_class(u[j] * l).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
    }
    for (int j = 0; j < N; ++j) mpz_divexact(out[j].get_mpz_t(), out[j].get_mpz_t(), g.get_mpz_t());
    for (int j = 0; j < N; ++j) {
        if (out[j] == 0) continue;
        if (out[j] < 0)
            for (int k = 0; k < N; ++k) out[k] = -out[k];
        break;
    }
    return out;
}

VolumeEstimate estimate_from_hits(double box_vol, uint64_t hits, uint64_t samples, uint64_t seed) {
    VolumeEstimate e;
    e.samples = samples;
    e.seed = seed;
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    e.mean = box_vol * p;
    e.half_width = 3.0 * box_vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return e;
}

} // namespace

VolumeEstimate monte_carlo_volume(const ZonotopeSpec& z, uint64_t samples, uint64_t seed) {
    if (samples == 0)
        throw input_error("monte carlo needs a positive sample count");
    int N = z.dim, M = z.segments.cols;
    if (N < 1 || N > 6)
        throw input_error("monte carlo supports dimensions 1..6");
    QMatrix D = midpoint_matrix(z.segments, 128);

    // facet normals from all (N-1)-subsets of segments
    std::set<std::vector<mpz_class>> normals;
    if (N == 1) {
        normals.insert({mpz_class(1)});
    } else {
        std::vector<int> idx(N - 1);
        for (int i = 0; i < N - 1; ++i) idx[i] = i;
        if (M >= N - 1) do {
                QMatrix S(N - 1, N);
                for (int r = 0; r < N - 1; ++r)
                    for (int c = 0; c < N; ++c) S.at(r, c) = D.at(c, idx[r]);
                auto u = cofactor_normal(S);
                if (std::any_of(u.begin(), u.end(), [](const mpz_class& v) { return v != 0; }))
                    normals.insert(u);
            } while (next_combination(idx, M));
    }

    struct Facet {
        std::vector<double> u;
        double h;
    };
    std::vector<Facet> facets;
    for (const auto& u : normals) {
        Facet f;
        f.u.resize(N);
        for (int i = 0; i < N; ++i) f.u[i] = mpz_get_d(u[i].get_mpz_t());
        mpq_class h = 0;
        for (int m = 0; m < M; ++m) {
            mpq_class dot = 0;
            for (int i = 0; i < N; ++i) dot += D.at(i, m) * mpq_class(u[i]);
            h += abs(dot);
        }
        f.h = h.get_d();
        facets.push_back(std::move(f));
    }

    std::vector<double> c(N);
    double box_vol = 1;
    for (int i = 0; i < N; ++i) {
        mpq_class s = 0;
        for (int m = 0; m < M; ++m) s += abs(D.at(i, m));
        c[i] = s.get_d() * 1.0000001 + 1e-300;
        box_vol *= 2 * c[i];
    }

    uint64_t hits = 0;
    std::vector<double> x(N);
    for (uint64_t i = 0; i < samples; ++i) {
        for (int k = 0; k < N; ++k) x[k] = (2 * rnd01(seed, i * N + k) - 1) * c[k];
        bool in = true;
        for (const Facet& f : facets) {
            double dot = 0;
            for (int k = 0; k < N; ++k) dot += x[k] * f.u[k];
            if (std::fabs(dot) > f.h) {
                in = false;
                break;
            }
        }
        if (in) ++hits;
    }
    return estimate_from_hits(box_vol, hits, samples, seed);
}

VolumeEstimate monte_carlo_primal_ball(const ExactMatrix& U, const std::vector<mpq_class>& masses,
                                       uint64_t samples, uint64_t seed) {
    if (samples == 0)
        throw input_error("monte carlo needs a positive sample count");
    int M = U.rows, N = U.cols;
    if (N < 1 || N > 6)
        throw input_error("monte carlo supports dimensions 1..6");
    if (static_cast<int>(masses.size()) != M)
        throw input_error("mass count does not match matrix rows");

    // certified box: delta(x)^2 >= x' G x with G from mass-folded rows
    IntervalMatrix G(N, N);
    for (int m = 0; m < M; ++m)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                QInterval vi = U.at(m, i).eval(128).scale(masses[m]);
                QInterval vj = U.at(m, j).eval(128);
                G.at(i, j) += vi * vj.scale(masses[m]);
            }
    mpq_class t = lambda_min_lower_bound(G);
    mpq_class inv = 1 / QInterval(t).sqrt_clamped(128).lo();
    double cbound = inv.get_d() * 1.0000001;
    double box_vol = 1;
    for (int i = 0; i < N; ++i) box_vol *= 2 * cbound;

    QMatrix D = midpoint_matrix(U, 128);
    std::vector<std::vector<double>> rows(M, std::vector<double>(N));
    std::vector<double> w(M);
    for (int m = 0; m < M; ++m) {
        w[m] = masses[m].get_d();
        for (int j = 0; j < N; ++j) rows[m][j] = D.at(m, j).get_d();
    }

    uint64_t hits = 0;
    std::vector<double> x(N);
    for (uint64_t i = 0; i < samples; ++i) {
        for (int k = 0; k < N; ++k) x[k] = (2 * rnd01(seed, i * N + k) - 1) * cbound;
        double norm = 0;
        for (int m = 0; m < M; ++m) {
            double dot = 0;
            for (int k = 0; k < N; ++k) dot += rows[m][k] * x[k];
            norm += w[m] * std::fabs(dot);
        }
        if (norm <= 1.0) ++hits;
    }
    return estimate_from_hits(box_vol, hits, samples, seed);
}

namespace {

// exact volume of {xi : sum_m |<row_m, xi>| <= 1} for folded rational rows,
// by decomposition into the 2^M orthant cones of the row signs: inside the
// sign cone the body is a pyramid from the origin over the cap facet
// <c, xi> = 1 with c the signed row sum
mpq_class cell_volume_sum(const QMatrix& D) {
    int M = D.rows, N = D.cols;
    mpq_class total = 0;
    std::vector<int> sgn(M);
    for (uint32_t mask = 0; mask < (1u << M); ++mask) {
        for (int m = 0; m < M; ++m) sgn[m] = (mask >> m & 1) ? 1 : -1;
        std::vector<mpq_class> c(N, 0);
        for (int m = 0; m < M; ++m)
            for (int j = 0; j < N; ++j) c[j] += sgn[m] * D.at(m, j);
        bool c_zero = true;
        for (int j = 0; j < N; ++j)
            if (c[j] != 0) c_zero = false;
        if (c_zero) continue; // cell is {0}

        auto feasible = [&](const std::vector<mpq_class>& x) {
            for (int m = 0; m < M; ++m) {
                mpq_class dot = 0;
                for (int j = 0; j < N; ++j) dot += D.at(m, j) * x[j];
                if (sgn[m] * dot < 0) return false;
            }
            return true;
        };

        if (N == 1) {
            std::vector<mpq_class> x{1 / c[0]};
            if (feasible(x)) total += abs(x[0]);
            continue;
        }

        // cap vertices: N-1 row hyperplanes + the cap plane
        std::vector<std::vector<mpq_class>> verts;
        std::vector<int> idx(N - 1);
        for (int i = 0; i < N - 1; ++i) idx[i] = i;
        if (M >= N - 1) do {
                QMatrix A(N, N);
                std::vector<mpq_class> rhs(N, 0);
                for (int r = 0; r < N - 1; ++r)
                    for (int j = 0; j < N; ++j) A.at(r, j) = D.at(idx[r], j);
                for (int j = 0; j < N; ++j) A.at(N - 1, j) = c[j];
                rhs[N - 1] = 1;
                std::vector<mpq_class> x;
                if (!solve_square(A, rhs, x)) continue;
                if (feasible(x)) verts.push_back(std::move(x));
            } while (next_combination(idx, M));
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

        if (N == 2) {
            if (verts.size() < 2) continue;
            // endpoints along the cap direction
            mpq_class dbest, dworst;
            size_t ibest = 0, iworst = 0;
            for (size_t i = 0; i < verts.size(); ++i) {
                mpq_class d = -c[1] * verts[i][0] + c[0] * verts[i][1];
                if (i == 0 || d > dbest) {
                    dbest = d;
                    ibest = i;
                }
                if (i == 0 || d < dworst) {
                    dworst = d;
                    iworst = i;
                }
            }
            const auto& a = verts[ibest];
            const auto& b = verts[iworst];
            total += abs(a[0] * b[1] - a[1] * b[0]) / 2;
            continue;
        }

        // N == 3: fan-triangulate the cap polygon
        if (verts.size() < 3) continue;
        int drop = 0;
        mpq_class cmax = abs(c[0]);
        for (int j = 1; j < 3; ++j)
            if (abs(c[j]) > cmax) {
                cmax = abs(c[j]);
                drop = j;
            }
        int a0 = drop == 0 ? 1 : 0;
        int a1 = drop == 2 ? 1 : 2;
        std::vector<std::array<mpq_class, 2>> flat(verts.size());
        std::array<mpq_class, 2> centroid{mpq_class(0), mpq_class(0)};
        for (size_t i = 0; i < verts.size(); ++i) {
            flat[i] = {verts[i][a0], verts[i][a1]};
            centroid[0] += flat[i][0];
            centroid[1] += flat[i][1];
        }
        centroid[0] /= static_cast<int>(verts.size());
        centroid[1] /= static_cast<int>(verts.size());

        std::vector<size_t> order(verts.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto offset = [&](size_t i) {
            return std::array<mpq_class, 2>{flat[i][0] - centroid[0], flat[i][1] - centroid[1]};
        };
        auto half = [](const std::array<mpq_class, 2>& p) {
            return (p[1] > 0 || (p[1] == 0 && p[0] > 0)) ? 0 : 1;
        };
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
            auto p = offset(i), q = offset(j);
            int hp = half(p), hq = half(q);
            if (hp != hq) return hp < hq;
            mpq_class cr = p[0] * q[1] - p[1] * q[0];
            if (cr != 0) return cr > 0;
            mpq_class n2p = p[0] * p[0] + p[1] * p[1];
            mpq_class n2q = q[0] * q[0] + q[1] * q[1];
            return n2p < n2q;
        });

        const auto& p0 = verts[order[0]];
        for (size_t i = 1; i + 1 < order.size(); ++i) {
            QMatrix T(3, 3);
            for (int j = 0; j < 3; ++j) {
                T.at(0, j) = p0[j];
                T.at(1, j) = verts[order[i]][j];
                T.at(2, j) = verts[order[i + 1]][j];
            }
            total += abs(exact_det(T)) / 6;
        }
    }
    return total;
}

} // namespace

QInterval primal_ball_volume_exact(const ExactMatrix& U, const std::vector<mpq_class>& masses,
                                   const PrecisionContext& ctx) {
    int M = U.rows, N = U.cols;
    if (N < 1 || N > 3)
        throw input_error("exact primal ball volume supports dimensions 1..3");
    if (static_cast<int>(masses.size()) != M)
        throw input_error("mass count does not match matrix rows");
    for (const auto& w : masses)
        if (w <= 0) throw input_error("masses must be positive");
    if (M > 12)
        throw input_error("row count exceeds the sign-cell guard");

    bool exact = true;
    for (const auto& v : U.a)
        if (!v.is_rational_point()) exact = false;

    for (long bits = ctx.bits; bits <= ctx.max_bits; bits *= 2) {
        QMatrix D(M, N);
        mpq_class err = 0; // sum over rows of an l2 error bound per row
        for (int m = 0; m < M; ++m)
            for (int j = 0; j < N; ++j) {
                const LogValue& v = U.at(m, j);
                QInterval e = (v.is_rational_point() ? v.cst() : v.eval(bits)).scale(masses[m]);
                D.at(m, j) = e.mid();
                err += e.width() / 2;
            }
        // drop zero rows: they contribute nothing to the norm
        std::vector<int> keep;
        for (int m = 0; m < M; ++m) {
            bool zero = true;
            for (int j = 0; j < N; ++j)
                if (D.at(m, j) != 0) zero = false;
            if (!zero) keep.push_back(m);
        }
        QMatrix Dk(static_cast<int>(keep.size()), N);
        for (size_t m = 0; m < keep.size(); ++m)
            for (int j = 0; j < N; ++j) Dk.at(static_cast<int>(m), j) = D.at(keep[m], j);

        mpq_class t;
        try {
            QMatrix G(N, N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    mpq_class g = 0;
                    for (int m = 0; m < Dk.rows; ++m) g += Dk.at(m, i) * Dk.at(m, j);
                    G.at(i, j) = g;
                }
            t = lambda_min_lower_bound(G);
        } catch (const input_error&) {
            if (exact)
                throw input_error("matrix is rank deficient; the ball is unbounded");
            continue; // midpoints too coarse, escalate
        }
        mpq_class sigma_lo = QInterval(t).sqrt_clamped(bits).lo();
        if (sigma_lo <= 0) continue;
        mpq_class rho = err / sigma_lo;
        if (rho >= mpq_class(1, 2)) {
            if (exact)
                throw input_error("internal error: exact input produced nonzero slack");
            continue;
        }

        mpq_class vol = cell_volume_sum(Dk);
        mpq_class lo = vol, hi = vol;
        mpq_class one_plus = 1 + rho, one_minus = 1 - rho;
        for (int i = 0; i < N; ++i) {
            lo /= one_plus;
            hi /= one_minus;
        }
        return QInterval(lo, hi);
    }
    throw precision_error("primal ball volume could not be certified at the precision ceiling");
}

} // namespace heights
