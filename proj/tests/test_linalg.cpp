#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heights/linalg.hpp"
#include "testutil.hpp"

using namespace heights;

namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (auto& r : rows) {
        int j = 0;
        for (long v : r) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

bool is_zero_product(const IntMatrix& A, const IntMatrix& K) {
    if (K.cols == 0) return true;
    IntMatrix P = mat_mul(A, K);
    for (const auto& v : P.a)
        if (v != 0) return false;
    return true;
}

IntMatrix random_int_matrix(TestRng& rng, int r, int c, long lo, long hi) {
    IntMatrix m(r, c);
    for (auto& v : m.a) v = rng.range(lo, hi);
    return m;
}

} // namespace

TEST_CASE("kernel basis of small systems") {
    IntMatrix A = from_rows({{1, 0, 1}, {0, 1, 1}});
    IntMatrix K = hnf_kernel_basis(A);
    REQUIRE(K.cols == 1);
    CHECK(is_zero_product(A, K));
    // (1,1,-1) after sign normalization
    CHECK(K.at(0, 0) == 1);
    CHECK(K.at(1, 0) == 1);
    CHECK(K.at(2, 0) == -1);

    IntMatrix B = from_rows({{1, 1, 1}});
    IntMatrix KB = hnf_kernel_basis(B);
    REQUIRE(KB.cols == 2);
    CHECK(is_zero_product(B, KB));
    // saturated: gcd of the 2x2 minors of the 3x2 kernel matrix is 1
    CHECK(gram_det_and_minor_gcd(KB.transposed()).minor_gcd == 1);

    IntMatrix I2 = from_rows({{1, 0}, {0, 1}});
    CHECK(hnf_kernel_basis(I2).cols == 0);
}

TEST_CASE("kernel saturation on random wide matrices") {
    TestRng rng(7);
    for (int t = 0; t < 40; ++t) {
        IntMatrix A = random_int_matrix(rng, 3, 5, -4, 4);
        IntMatrix K = hnf_kernel_basis(A);
        CHECK(is_zero_product(A, K));
        if (K.cols > 0 && K.cols <= K.rows) {
            // any saturated basis has coprime maximal minors
            auto gm = gram_det_and_minor_gcd(K.transposed());
            CHECK(gm.minor_gcd == 1);
        }
        // rank + kernel dimension = number of columns
        CHECK(rank_q(to_qmatrix(A)) + K.cols == 5);
    }
}

TEST_CASE("integer determinants") {
    CHECK(exact_det(from_rows({{1, 0}, {0, 1}})) == 1);
    CHECK(exact_det(from_rows({{2, 1}, {1, 2}})) == 3);
    CHECK(exact_det(from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})) == 1);  // 3-cycle, even
    CHECK(exact_det(from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})) == -1); // transposition, odd
    CHECK(exact_det(from_rows({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("bareiss agrees with rational elimination on random matrices") {
    TestRng rng(11);
    for (int t = 0; t < 25; ++t) {
        IntMatrix A = random_int_matrix(rng, 5, 5, -9, 9);
        mpz_class d = exact_det(A);
        mpq_class q = exact_det(to_qmatrix(A));
        CHECK(q.get_den() == 1);
        CHECK(q.get_num() == d);
    }
}

TEST_CASE("interval determinant of a log matrix") {
    ExactMatrix M(2, 2);
    M.at(0, 0) = LogValue::log_of(2);
    M.at(0, 1) = -LogValue::log_of(2);
    M.at(1, 0) = LogValue::log_of(3);
    M.at(1, 1) = LogValue();
    QInterval d = exact_det(M, 256);
    // det = log2 * log3
    CHECK(near_dec(d, "0.76150001041880898642912271683650388564230162335236"));
    CHECK(d.width() < qdec("0.000000000000000000000000000000000000000001"));

    // rational-point entries fold to an exact value
    ExactMatrix R(2, 2);
    R.at(0, 0) = LogValue(mpq_class(2));
    R.at(0, 1) = LogValue(mpq_class(1));
    R.at(1, 0) = LogValue(mpq_class(1));
    R.at(1, 1) = LogValue(mpq_class(2));
    QInterval dr = exact_det(R, 64);
    CHECK(dr.is_point());
    CHECK(dr.lo() == 3);
}

TEST_CASE("gram determinant with minor gcd") {
    auto g1 = gram_det_and_minor_gcd(from_rows({{1, 1, 1}}));
    CHECK(g1.gram_det == 3);
    CHECK(g1.minor_gcd == 1);

    auto g2 = gram_det_and_minor_gcd(from_rows({{1, 0, 1}, {0, 1, 1}}));
    CHECK(g2.gram_det == 3);
    CHECK(g2.minor_gcd == 1);

    auto g3 = gram_det_and_minor_gcd(from_rows({{2, 0}, {0, 2}}));
    CHECK(g3.gram_det == 16);
    CHECK(g3.minor_gcd == 4);

    CHECK_THROWS_AS(gram_det_and_minor_gcd(from_rows({{1, 1}, {1, 1}})), input_error);
}

TEST_CASE("cauchy-binet holds on random wide matrices") {
    TestRng rng(13);
    for (int t = 0; t < 30; ++t) {
        int m = static_cast<int>(rng.range(1, 3));
        int n = m + static_cast<int>(rng.range(0, 3));
        IntMatrix A = random_int_matrix(rng, m, n, -5, 5);
        if (rank_q(to_qmatrix(A)) < m) continue;
        CHECK_NOTHROW(gram_det_and_minor_gcd(A)); // identity verified internally
    }
}

TEST_CASE("sublattice index") {
    CHECK(sublattice_index(from_rows({{1, 0}, {0, 1}})) == 1);
    CHECK(sublattice_index(from_rows({{1, 0}, {0, 2}})) == 2);
    CHECK(sublattice_index(from_rows({{2, 1}, {0, 3}})) == 6);
    CHECK_THROWS_AS(sublattice_index(from_rows({{1, 1}, {1, 1}})), input_error);
}

TEST_CASE("lll reduction keeps the lattice and shortens vectors") {
    IntMatrix I = from_rows({{1, 0}, {0, 1}});
    IntMatrix RI = lll_reduce(I);
    CHECK(is_identity(RI));

    IntMatrix B = from_rows({{1, 100}, {0, 1}});
    IntMatrix R = lll_reduce(B);
    IntMatrix X;
    CHECK(integral_change_of_basis(B, R, X));
    CHECK(sublattice_index(X) == 1);
    mpz_class max_len2 = 0;
    for (int j = 0; j < R.cols; ++j) {
        mpz_class l2 = R.at(0, j) * R.at(0, j) + R.at(1, j) * R.at(1, j);
        if (l2 > max_len2) max_len2 = l2;
    }
    CHECK(max_len2 <= 2); // (1,0),(0,1) up to signs

    IntMatrix single(2, 1);
    single.at(0, 0) = 5;
    single.at(1, 0) = 0;
    IntMatrix RS = lll_reduce(single);
    CHECK((RS.at(0, 0) == 5 || RS.at(0, 0) == -5));
}

TEST_CASE("lll on random bases is unimodular") {
    TestRng rng(17);
    for (int t = 0; t < 20; ++t) {
        IntMatrix B = random_int_matrix(rng, 4, 4, -20, 20);
        if (exact_det(B) == 0) continue;
        IntMatrix R = lll_reduce(B);
        IntMatrix X, Y;
        CHECK(integral_change_of_basis(B, R, X));
        CHECK(integral_change_of_basis(R, B, Y));
        CHECK(sublattice_index(X) == 1);
    }
}

TEST_CASE("certified smallest eigenvalue lower bound") {
    QMatrix G(2, 2);
    G.at(0, 0) = 2;
    G.at(1, 1) = 3;
    mpq_class t = lambda_min_lower_bound(G);
    CHECK(t > mpq_class(19, 10));
    CHECK(t < 2);

    QMatrix H(2, 2);
    H.at(0, 0) = 2;
    H.at(0, 1) = 1;
    H.at(1, 0) = 1;
    H.at(1, 1) = 2;
    mpq_class s = lambda_min_lower_bound(H);
    CHECK(s > mpq_class(99, 100));
    CHECK(s < 1);

    QMatrix S(2, 2); // singular
    S.at(0, 0) = 1;
    S.at(0, 1) = 1;
    S.at(1, 0) = 1;
    S.at(1, 1) = 1;
    CHECK_THROWS_AS(lambda_min_lower_bound(S), input_error);
}

TEST_CASE("interval eigenvalue bound certifies through enclosures") {
    IntervalMatrix G(2, 2);
    G.at(0, 0) = QInterval(qdec("1.99"), qdec("2.01"));
    G.at(0, 1) = QInterval(qdec("-0.01"), qdec("0.01"));
    G.at(1, 0) = QInterval(qdec("-0.01"), qdec("0.01"));
    G.at(1, 1) = QInterval(qdec("2.99"), qdec("3.01"));
    mpq_class t = lambda_min_lower_bound(G);
    CHECK(t > mpq_class(18, 10));
    CHECK(t <= 2);
}

TEST_CASE("combination enumeration") {
    std::vector<int> c{0, 1};
    int count = 1;
    while (next_combination(c, 5)) ++count;
    CHECK(count == 10);
}

TEST_CASE("linear solves") {
    QMatrix A(2, 2);
    A.at(0, 0) = 1;
    A.at(0, 1) = 2;
    A.at(1, 0) = 3;
    A.at(1, 1) = 4;
    std::vector<mpq_class> x;
    CHECK(solve_square(A, {mpq_class(5), mpq_class(6)}, x));
    CHECK(x[0] == -4);
    CHECK(x[1] == mpq_class(9, 2));

    QMatrix S(2, 2);
    S.at(0, 0) = 1;
    S.at(0, 1) = 1;
    S.at(1, 0) = 2;
    S.at(1, 1) = 2;
    CHECK_FALSE(solve_square(S, {mpq_class(1), mpq_class(1)}, x));
    CHECK(rank_q(S) == 1);
}
