#pragma once

#include <gmpxx.h>

#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "logvalue.hpp"

namespace heights {

template <typename T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Mat<T> transposed() const {
        Mat<T> r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }
};

using IntMatrix = Mat<mpz_class>;
using QMatrix = Mat<mpq_class>;
using ExactMatrix = Mat<LogValue>;
using IntervalMatrix = Mat<QInterval>;

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
bool is_identity(const IntMatrix& A);
QMatrix to_qmatrix(const IntMatrix& A);

// Z-basis of {z : Az = 0}, saturated, in column Hermite form (deterministic)
IntMatrix hnf_kernel_basis(const IntMatrix& A);

// canonical basis of the lattice spanned by the rows of X, one basis vector
// per row, rank many rows (row Hermite form with zero rows dropped)
IntMatrix row_basis_hnf(const IntMatrix& X);

mpz_class exact_det(const IntMatrix& A);       // fraction-free (Bareiss)
mpq_class exact_det(const QMatrix& A);         // exact Gaussian elimination
QInterval exact_det(const IntervalMatrix& A);  // division-free Laplace DP
// rational-point matrices fold to an exact value; otherwise entries are
// evaluated at `bits` and enclosed
QInterval exact_det(const ExactMatrix& A, long bits);

int rank_q(const QMatrix& A);
// solve Ax = b for square A; false when singular
bool solve_square(const QMatrix& A, const std::vector<mpq_class>& b, std::vector<mpq_class>& x);

struct GramMinor {
    mpz_class gram_det; // det(A Aᵀ)
    mpz_class minor_gcd; // gcd of all maximal minors of A
};
// requires full row rank; verifies det(AAᵀ) = Σ (det A_I)² while enumerating
GramMinor gram_det_and_minor_gcd(const IntMatrix& A);

mpz_class sublattice_index(const IntMatrix& B); // |det B|, B nonsingular

// columns reduced in place by exact rational LLL (delta = 3/4); the lattice
// generated by the columns is unchanged
IntMatrix lll_reduce(const IntMatrix& B);

// X with B·X = C when it exists over Z (columns of C in the lattice of B)
bool integral_change_of_basis(const IntMatrix& B, const IntMatrix& C, IntMatrix& X);

// certified t > 0 with G - tI positive definite (Sylvester leading minors);
// G must be symmetric positive definite
mpq_class lambda_min_lower_bound(const QMatrix& G);
// same over interval entries; certification uses lower endpoints
mpq_class lambda_min_lower_bound(const IntervalMatrix& G);

// lexicographic m-subsets of {0..n-1}; c starts as {0..m-1}
bool next_combination(std::vector<int>& c, int n);

} // namespace heights
