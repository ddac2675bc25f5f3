#include "heights/linalg.hpp"

#include <algorithm>

namespace heights {

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows)
        throw input_error("matrix product dimension mismatch");
    IntMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const mpz_class& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

bool is_identity(const IntMatrix& A) {
    if (A.rows != A.cols) return false;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

QMatrix to_qmatrix(const IntMatrix& A) {
    QMatrix Q(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) Q.a[i] = mpq_class(A.a[i]);
    return Q;
}

namespace {

void negate_col(IntMatrix& M, int j) {
    for (int i = 0; i < M.rows; ++i) M.at(i, j) = -M.at(i, j);
}

void addmul_col(IntMatrix& M, int dst, int src, const mpz_class& q) {
    // col dst += q * col src
    if (q == 0) return;
    for (int i = 0; i < M.rows; ++i) M.at(i, dst) += q * M.at(i, src);
}

void swap_cols(IntMatrix& M, int j, int k) {
    for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, j), M.at(i, k));
}

// column Hermite form of W; column operations mirrored onto U when given.
// Pivots positive, entries left of a pivot reduced into [0, pivot).
void column_hnf(IntMatrix& W, IntMatrix* U) {
    int kcol = 0;
    for (int r = 0; r < W.rows && kcol < W.cols; ++r) {
        int piv = -1;
        for (int j = kcol; j < W.cols; ++j)
            if (W.at(r, j) != 0) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        if (piv != kcol) {
            swap_cols(W, kcol, piv);
            if (U) swap_cols(*U, kcol, piv);
        }
        // clear the rest of row r with gcd steps
        for (int j = kcol + 1; j < W.cols; ++j) {
            while (W.at(r, j) != 0) {
                mpz_class q = W.at(r, j) / W.at(r, kcol); // truncated
                addmul_col(W, j, kcol, -q);
                if (U) addmul_col(*U, j, kcol, -q);
                if (W.at(r, j) != 0) {
                    swap_cols(W, kcol, j);
                    if (U) swap_cols(*U, kcol, j);
                }
            }
        }
        if (W.at(r, kcol) < 0) {
            negate_col(W, kcol);
            if (U) negate_col(*U, kcol);
        }
        for (int j = 0; j < kcol; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), W.at(r, j).get_mpz_t(), W.at(r, kcol).get_mpz_t());
            addmul_col(W, j, kcol, -q);
            if (U) addmul_col(*U, j, kcol, -q);
        }
        ++kcol;
    }
    // move any remaining zero columns (possible when later rows are zero) to the end
}

bool col_is_zero(const IntMatrix& W, int j) {
    for (int i = 0; i < W.rows; ++i)
        if (W.at(i, j) != 0) return false;
    return true;
}

} // namespace

IntMatrix hnf_kernel_basis(const IntMatrix& A) {
    IntMatrix W = A;
    IntMatrix U(A.cols, A.cols);
    for (int i = 0; i < A.cols; ++i) U.at(i, i) = 1;
    column_hnf(W, &U);
    std::vector<int> zero_cols;
    for (int j = 0; j < W.cols; ++j)
        if (col_is_zero(W, j)) zero_cols.push_back(j);
    IntMatrix K(A.cols, static_cast<int>(zero_cols.size()));
    for (int j = 0; j < K.cols; ++j)
        for (int i = 0; i < K.rows; ++i) K.at(i, j) = U.at(i, zero_cols[j]);
    column_hnf(K, nullptr); // canonical form for deterministic output
    return K;
}

IntMatrix row_basis_hnf(const IntMatrix& X) {
    IntMatrix W = X.transposed();
    column_hnf(W, nullptr);
    std::vector<int> keep;
    for (int j = 0; j < W.cols; ++j)
        if (!col_is_zero(W, j)) keep.push_back(j);
    IntMatrix B(static_cast<int>(keep.size()), X.cols);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) B.at(i, j) = W.at(j, keep[i]);
    return B;
}

mpz_class exact_det(const IntMatrix& A) {
    if (A.rows != A.cols)
        throw input_error("determinant of a nonsquare matrix");
    int n = A.rows;
    if (n == 0) return 1;
    IntMatrix M = A;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                mpz_divexact(M.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M.at(i, k) = 0;
        }
        prev = M.at(k, k);
    }
    return sign > 0 ? M.at(n - 1, n - 1) : mpz_class(-M.at(n - 1, n - 1));
}

mpq_class exact_det(const QMatrix& A) {
    if (A.rows != A.cols)
        throw input_error("determinant of a nonsquare matrix");
    int n = A.rows;
    if (n == 0) return 1;
    QMatrix M = A;
    mpq_class det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (M.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            det = -det;
        }
        det *= M.at(k, k);
        mpq_class inv = 1 / M.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            mpq_class f = M.at(i, k) * inv;
            if (f == 0) continue;
            for (int j = k; j < n; ++j) M.at(i, j) -= f * M.at(k, j);
        }
    }
    return det;
}

QInterval exact_det(const IntervalMatrix& A) {
    if (A.rows != A.cols)
        throw input_error("determinant of a nonsquare matrix");
    int n = A.rows;
    if (n == 0) return QInterval(mpq_class(1));
    if (n > 14)
        throw input_error("interval determinant limited to order 14");
    // Laplace expansion with memo over column subsets: row |S|-1 against
    // subset S.  Division-free, so interval growth stays multiplicative.
    size_t full = size_t(1) << n;
    std::vector<QInterval> f(full);
    f[0] = QInterval(mpq_class(1));
    for (size_t S = 1; S < full; ++S) {
        int k = __builtin_popcountll(S) - 1; // row index
        QInterval acc;
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(S >> j & 1)) continue;
            QInterval term = A.at(k, j) * f[S & ~(size_t(1) << j)];
            if ((k + pos) % 2 == 0)
                acc += term;
            else
                acc += -term;
            ++pos;
        }
        f[S] = acc;
    }
    return f[full - 1];
}

QInterval exact_det(const ExactMatrix& A, long bits) {
    bool rational = true;
    for (const auto& v : A.a)
        if (!v.is_rational_point()) {
            rational = false;
            break;
        }
    if (rational) {
        QMatrix Q(A.rows, A.cols);
        for (size_t i = 0; i < A.a.size(); ++i) Q.a[i] = A.a[i].cst().lo();
        return QInterval(exact_det(Q));
    }
    IntervalMatrix M(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) M.a[i] = A.a[i].eval(bits);
    return exact_det(M);
}

int rank_q(const QMatrix& A) {
    QMatrix M = A;
    int rank = 0;
    for (int c = 0; c < M.cols && rank < M.rows; ++c) {
        int piv = -1;
        for (int i = rank; i < M.rows; ++i)
            if (M.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(rank, j), M.at(piv, j));
        mpq_class inv = 1 / M.at(rank, c);
        for (int i = rank + 1; i < M.rows; ++i) {
            mpq_class f = M.at(i, c) * inv;
            if (f == 0) continue;
            for (int j = c; j < M.cols; ++j) M.at(i, j) -= f * M.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

bool solve_square(const QMatrix& A, const std::vector<mpq_class>& b, std::vector<mpq_class>& x) {
    if (A.rows != A.cols || static_cast<int>(b.size()) != A.rows)
        throw input_error("solve_square dimension mismatch");
    int n = A.rows;
    QMatrix M(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, n) = b[i];
    }
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (M.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        if (piv != k)
            for (int j = k; j <= n; ++j) std::swap(M.at(k, j), M.at(piv, j));
        mpq_class inv = 1 / M.at(k, k);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            mpq_class f = M.at(i, k) * inv;
            if (f == 0) continue;
            for (int j = k; j <= n; ++j) M.at(i, j) -= f * M.at(k, j);
        }
    }
    x.resize(n);
    for (int i = 0; i < n; ++i) x[i] = M.at(i, n) / M.at(i, i);
    return true;
}

bool next_combination(std::vector<int>& c, int n) {
    int m = static_cast<int>(c.size());
    for (int i = m - 1; i >= 0; --i) {
        if (c[i] < n - m + i) {
            ++c[i];
            for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

GramMinor gram_det_and_minor_gcd(const IntMatrix& A) {
    int M = A.rows, N = A.cols;
    if (M > N)
        throw input_error("gram_det_and_minor_gcd expects a wide matrix (M <= N)");
    IntMatrix G(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            mpz_class s = 0;
            for (int k = 0; k < N; ++k) s += A.at(i, k) * A.at(j, k);
            G.at(i, j) = s;
        }
    GramMinor out;
    out.gram_det = exact_det(G);
    if (out.gram_det == 0)
        throw input_error("rank-deficient matrix in gram_det_and_minor_gcd");

    mpz_class gcd = 0, square_sum = 0;
    std::vector<int> idx(M);
    for (int i = 0; i < M; ++i) idx[i] = i;
    do {
        IntMatrix sub(M, M);
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) sub.at(i, j) = A.at(i, idx[j]);
        mpz_class d = exact_det(sub);
        square_sum += d * d;
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), d.get_mpz_t());
    } while (next_combination(idx, N));
    if (square_sum != out.gram_det)
        throw verify_error("Cauchy-Binet cross-check failed in gram_det_and_minor_gcd");
    out.minor_gcd = gcd;
    return out;
}

mpz_class sublattice_index(const IntMatrix& B) {
    mpz_class d = exact_det(B);
    if (d == 0)
        throw input_error("sublattice basis is singular");
    return d < 0 ? mpz_class(-d) : d;
}

namespace {

// exact Gram-Schmidt data for the columns of B
struct GS {
    std::vector<std::vector<mpq_class>> mu; // mu[i][j], j < i
    std::vector<mpq_class> norm2;           // |b*_i|^2

    void compute(const IntMatrix& B) {
        int n = B.cols, m = B.rows;
        mu.assign(n, {});
        norm2.assign(n, 0);
        std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(m));
        for (int i = 0; i < n; ++i) {
            for (int r = 0; r < m; ++r) star[i][r] = mpq_class(B.at(r, i));
            mu[i].assign(i, 0);
            for (int j = 0; j < i; ++j) {
                if (norm2[j] == 0)
                    throw input_error("lll_reduce requires independent columns");
                mpq_class dot = 0;
                for (int r = 0; r < m; ++r) dot += mpq_class(B.at(r, i)) * star[j][r];
                mu[i][j] = dot / norm2[j];
                for (int r = 0; r < m; ++r) star[i][r] -= mu[i][j] * star[j][r];
            }
            for (int r = 0; r < m; ++r) norm2[i] += star[i][r] * star[i][r];
            if (norm2[i] == 0)
                throw input_error("lll_reduce requires independent columns");
        }
    }
};

mpz_class round_nearest(const mpq_class& q) {
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return r;
}

} // namespace

IntMatrix lll_reduce(const IntMatrix& B) {
    IntMatrix R = B;
    int n = R.cols;
    if (n <= 1) return R;
    GS gs;
    gs.compute(R);
    const mpq_class delta(3, 4);
    int k = 1;
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            mpz_class q = round_nearest(gs.mu[k][j]);
            if (q != 0) {
                addmul_col(R, k, j, -q);
                gs.compute(R);
            }
        }
        mpq_class lhs = gs.norm2[k];
        mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            swap_cols(R, k, k - 1);
            gs.compute(R);
            k = std::max(k - 1, 1);
        }
    }
    IntMatrix X;
    if (!integral_change_of_basis(B, R, X) || !integral_change_of_basis(R, B, X))
        throw verify_error("lll_reduce produced a basis of a different lattice");
    return R;
}

bool integral_change_of_basis(const IntMatrix& B, const IntMatrix& C, IntMatrix& X) {
    if (B.rows != C.rows)
        throw input_error("change of basis dimension mismatch");
    // solve B x = c for each column of C over Q via least squares on the
    // square system (BᵀB) x = Bᵀ c, valid because columns of B are independent
    int n = B.cols;
    QMatrix G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpq_class s = 0;
            for (int r = 0; r < B.rows; ++r) s += mpq_class(B.at(r, i)) * mpq_class(B.at(r, j));
            G.at(i, j) = s;
        }
    X = IntMatrix(n, C.cols);
    for (int c = 0; c < C.cols; ++c) {
        std::vector<mpq_class> rhs(n), x;
        for (int i = 0; i < n; ++i) {
            mpq_class s = 0;
            for (int r = 0; r < B.rows; ++r) s += mpq_class(B.at(r, i)) * mpq_class(C.at(r, c));
            rhs[i] = s;
        }
        if (!solve_square(G, rhs, x)) return false;
        // candidate must reproduce the column exactly and be integral
        for (int i = 0; i < n; ++i) {
            if (x[i].get_den() != 1) return false;
            X.at(i, c) = x[i].get_num();
        }
        for (int r = 0; r < B.rows; ++r) {
            mpz_class s = 0;
            for (int i = 0; i < n; ++i) s += B.at(r, i) * X.at(i, c);
            if (s != C.at(r, c)) return false;
        }
    }
    return true;
}

namespace {

mpq_class diag_value(const QMatrix& G, int i) { return G.at(i, i); }
mpq_class diag_value(const IntervalMatrix& G, int i) { return G.at(i, i).hi(); }

template <typename MatT, typename PdTest>
mpq_class lambda_min_by_bisection(const MatT& G, PdTest pd) {
    if (G.rows != G.cols)
        throw input_error("lambda_min of a nonsquare matrix");
    if (!pd(mpq_class(0)))
        throw input_error("matrix is not certified positive definite");
    mpq_class hi = 0;
    bool first = true;
    for (int i = 0; i < G.rows; ++i) {
        mpq_class d = diag_value(G, i);
        if (first || d < hi) {
            hi = d;
            first = false;
        }
    }
    if (hi <= 0)
        throw input_error("matrix is not certified positive definite");
    mpq_class t = hi;
    int guard = 0;
    while (!pd(t)) {
        t /= 2;
        if (++guard > 512)
            throw precision_error("positive definiteness certificate hit the halving limit");
    }
    mpq_class lo = t;
    mpq_class t2 = t * 2;
    mpq_class up = (t2 < hi) ? t2 : hi;
    for (int it = 0; it < 30 && lo < up; ++it) {
        mpq_class mid = (lo + up) / 2;
        if (pd(mid))
            lo = mid;
        else
            up = mid;
    }
    return lo;
}

} // namespace

mpq_class lambda_min_lower_bound(const QMatrix& G) {
    auto pd = [&](const mpq_class& t) {
        for (int k = 1; k <= G.rows; ++k) {
            QMatrix L(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) L.at(i, j) = G.at(i, j) - (i == j ? t : mpq_class(0));
            if (exact_det(L) <= 0) return false;
        }
        return true;
    };
    return lambda_min_by_bisection(G, pd);
}

mpq_class lambda_min_lower_bound(const IntervalMatrix& G) {
    auto pd = [&](const mpq_class& t) {
        for (int k = 1; k <= G.rows; ++k) {
            IntervalMatrix L(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    L.at(i, j) = (i == j) ? G.at(i, j) - QInterval(t) : G.at(i, j);
            if (!exact_det(L).definitely_positive()) return false;
        }
        return true;
    };
    return lambda_min_by_bisection(G, pd);
}

} // namespace heights
