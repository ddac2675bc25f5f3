#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heights/subgroup.hpp"
#include "testutil.hpp"

using namespace heights;

namespace {

const PrecisionContext ctx{};

std::vector<GroupElement> rational_gens(std::initializer_list<long> nums) {
    std::vector<GroupElement> g;
    for (long n : nums) g.push_back(GroupElement::from_rational(mpq_class(n)));
    return g;
}

GroupElement random_rational(TestRng& rng) {
    mpq_class q(rng.range(2, 400), rng.range(1, 60));
    q.canonicalize();
    return GroupElement::from_rational(q);
}

SUnitContext rational_sunits(std::initializer_list<long> primes) {
    SUnitContext c;
    c.field_degree = 1;
    c.places.push_back(arch_place());
    for (long p : primes) c.places.push_back(finite_place(p));
    int s = static_cast<int>(c.places.size());
    c.unit_log_table = ExactMatrix(s - 1, s);
    int r = 0;
    for (long p : primes) {
        c.unit_log_table.at(r, 0) = LogValue::log_of(p);
        c.unit_log_table.at(r, r + 1) = LogValue::log_of(p).scale(-1);
        ++r;
    }
    return c;
}

} // namespace

TEST_CASE("presentation assembly over the union support") {
    SubgroupPresentation p = build_presentation(rational_gens({2, 3}), ctx);
    REQUIRE(p.support.size() == 3);
    CHECK(p.support[0].kind == Place::Kind::arch);
    CHECK(p.support[1].prime == 2);
    CHECK(p.support[2].prime == 3);
    CHECK(p.masses == std::vector<mpq_class>{1, 1, 1});
    CHECK(p.rank == 2);
    CHECK(p.A.at(0, 0).same_form(LogValue::log_of(2)));
    CHECK(p.A.at(0, 1).same_form(LogValue::log_of(2).scale(-1)));
    CHECK(p.A.at(0, 2).is_zero());
    CHECK(p.A.at(1, 0).same_form(LogValue::log_of(3)));
    CHECK(p.A.at(1, 2).same_form(LogValue::log_of(3).scale(-1)));

    // dependent generators are reported, not rejected
    SubgroupPresentation dep = build_presentation(rational_gens({2, 4}), ctx);
    CHECK(dep.rank == 1);

    CHECK_THROWS_AS(build_presentation({}, ctx), input_error);

    std::vector<GroupElement> mixed = rational_gens({2});
    std::vector<std::pair<Place, LogValue>> entries{
        {arch_place(), LogValue::log_of(2)},
        {finite_place(2), LogValue::log_of(2).scale(-1)},
    };
    mixed.push_back(GroupElement::from_place_table(1, entries, ctx));
    CHECK_THROWS_AS(build_presentation(mixed, ctx), input_error);
}

TEST_CASE("group height of the two generator subgroup") {
    SubgroupPresentation p = build_presentation(rational_gens({2, 3}), ctx);
    QInterval h = group_height(p, ctx);
    CHECK(near_dec(h, "1.14225001562821347964368407525475582846345243502854"));
    CHECK(h.width() < pow10q(-40));
}

TEST_CASE("rank one heights agree with the element height") {
    SubgroupPresentation p4 = build_presentation(rational_gens({4}), ctx);
    QInterval h4 = group_height(p4, ctx);
    CHECK(near_dec(h4, "1.38629436111989061883446424291635313615100026872051"));
    CHECK(h4.overlaps(weil_height(GroupElement::from_rational(4), ctx)));

    SubgroupPresentation p2 = build_presentation(rational_gens({2}), ctx);
    CHECK(near_dec(group_height(p2, ctx),
                   "0.693147180559945309417232121458176568075500134360255"));

    TestRng rng(555);
    for (int iter = 0; iter < 100; ++iter) {
        GroupElement e = random_rational(rng);
        if (e.is_identity()) continue;
        SubgroupPresentation p = build_presentation({e}, ctx);
        REQUIRE(p.rank == 1);
        CHECK(group_height(p, ctx).overlaps(weil_height(e, ctx)));
    }
}

TEST_CASE("group height rejects rank deficient presentations") {
    SubgroupPresentation dep = build_presentation(rational_gens({2, 4}), ctx);
    CHECK_THROWS_AS(group_height(dep, ctx), input_error);
    SubgroupPresentation one = build_presentation(rational_gens({1}), ctx);
    CHECK_THROWS_AS(group_height(one, ctx), input_error);
}

TEST_CASE("group height is invariant under change of basis") {
    TestRng rng(606);
    int done = 0;
    while (done < 25) {
        // random exponent tuples over a fixed prime support
        long primes[3] = {2, 3, 5};
        int n = static_cast<int>(rng.range(2, 3));
        std::vector<GroupElement> gens;
        for (int i = 0; i < n; ++i) {
            std::map<mpz_class, mpq_class> exps;
            for (long p : primes)
                if (long e = rng.range(-2, 2); e != 0) exps[p] = e;
            gens.push_back(GroupElement::from_exponents(exps));
        }
        SubgroupPresentation p = build_presentation(gens, ctx);
        if (p.rank != n) continue;

        // unimodular re-presentation: new_i = old_i * old_j^c
        std::vector<GroupElement> gens2 = gens;
        for (int k = 0; k < 3; ++k) {
            int i = static_cast<int>(rng.range(0, n - 1));
            int j = static_cast<int>(rng.range(0, n - 1));
            if (i == j) continue;
            gens2[i] = group_op(gens2[i], gens2[j], mpq_class(rng.range(-2, 2)));
        }
        SubgroupPresentation q = build_presentation(gens2, ctx);
        if (q.rank != n) continue;
        CHECK(group_height(p, ctx).overlaps(group_height(q, ctx)));
        ++done;
    }
}

TEST_CASE("small independent generators of the two generator subgroup") {
    SubgroupPresentation p = build_presentation(rational_gens({2, 3}), ctx);
    HeightCertificate cert = small_independent_generators(p, ctx);
    CHECK(cert.certified);
    CHECK(cert.exhaustive);
    CHECK(cert.index == 1);
    CHECK(cert.index_bound == 2);
    REQUIRE(cert.betas.size() == 2);
    CHECK(cert.betas[0] == std::vector<mpz_class>{1, 0});
    CHECK(cert.betas[1] == std::vector<mpz_class>{0, 1});
    CHECK(cert.beta_elements[0].exponents() ==
          GroupElement::from_rational(2).exponents());
    CHECK(cert.beta_elements[1].exponents() ==
          GroupElement::from_rational(3).exponents());
    CHECK(near_dec(cert.beta_heights[0],
                   "0.693147180559945309417232121458176568075500134360255"));
    CHECK(near_dec(cert.product, "0.761500010418808986429122716836503885642301623352363"));
    CHECK(near_dec(cert.h_group, "1.14225001562821347964368407525475582846345243502854"));
    CHECK(cert.product.hi() <= cert.h_group.lo());
}

TEST_CASE("small generators of a squared subgroup scale by the exponent") {
    SubgroupPresentation p = build_presentation(rational_gens({4, 9}), ctx);
    HeightCertificate cert = small_independent_generators(p, ctx);
    CHECK(cert.certified);
    CHECK(cert.index == 1);
    CHECK(near_dec(cert.product, "3.04600004167523594571649086734601554256920649340945"));
    CHECK(near_dec(cert.h_group, "4.56900006251285391857473630101902331385380974011418"));

    SubgroupPresentation p1 = build_presentation(rational_gens({2}), ctx);
    HeightCertificate c1 = small_independent_generators(p1, ctx);
    CHECK(c1.certified);
    // rank one: the certificate is the element height against itself
    CHECK(c1.product.overlaps(c1.h_group));
    CHECK(c1.betas[0] == std::vector<mpz_class>{1});
}

TEST_CASE("certificates verify on random presentations") {
    TestRng rng(808);
    int done = 0;
    while (done < 25) {
        long primes[3] = {2, 3, 5};
        int n = static_cast<int>(rng.range(1, 3));
        std::vector<GroupElement> gens;
        for (int i = 0; i < n; ++i) {
            std::map<mpz_class, mpq_class> exps;
            for (long p : primes)
                if (long e = rng.range(-2, 2); e != 0) exps[p] = e;
            gens.push_back(GroupElement::from_exponents(exps));
        }
        SubgroupPresentation p = build_presentation(gens, ctx);
        if (p.rank != n) continue;
        HeightCertificate cert = small_independent_generators(p, ctx);
        if (!cert.exhaustive) continue;
        CHECK(cert.certified);
        CHECK(cert.index <= cert.index_bound);
        // each beta height agrees with a direct height computation
        for (int k = 0; k < n; ++k)
            CHECK(cert.beta_heights[k].overlaps(weil_height(cert.beta_elements[k], ctx)));
        ++done;
    }
}

TEST_CASE("sunit closed form at three places") {
    SUnitContext c = rational_sunits({2, 3});
    SUnitHeights h = sunit_height(c, ctx);
    CHECK(near_dec(h.regulator, "0.761500010418808986429122716836503885642301623352363"));
    CHECK(near_dec(h.height, "1.14225001562821347964368407525475582846345243502854"));
    CHECK(h.height.overlaps(h.height_by_presentation));

    // and the presentation height equals the factored subgroup height
    SubgroupPresentation p = build_presentation(rational_gens({2, 3}), ctx);
    CHECK(h.height_by_presentation.overlaps(group_height(p, ctx)));
}

TEST_CASE("sunit closed form at two places") {
    SUnitContext c = rational_sunits({2});
    SUnitHeights h = sunit_height(c, ctx);
    CHECK(near_dec(h.regulator, "0.693147180559945309417232121458176568075500134360255"));
    CHECK(near_dec(h.height, "0.693147180559945309417232121458176568075500134360255"));
}

TEST_CASE("sunit closed form at four places") {
    SUnitContext c = rational_sunits({2, 3, 5});
    SUnitHeights h = sunit_height(c, ctx);
    CHECK(near_dec(h.height, "3.67676096126098086127983215259447534646671658469419"));
    CHECK(h.height.overlaps(h.height_by_presentation));
}

TEST_CASE("sunit validation") {
    SUnitContext c = rational_sunits({2, 3});
    c.unit_log_table.at(0, 0) = LogValue::log_of(2).scale(2); // breaks the product formula
    CHECK_THROWS_AS(sunit_height(c, ctx), input_error);

    SUnitContext tiny;
    tiny.field_degree = 1;
    tiny.places.push_back(arch_place());
    CHECK_THROWS_AS(sunit_height(tiny, ctx), input_error);

    // dependent "units": second row a multiple of the first
    SUnitContext dep = rational_sunits({2, 3});
    for (int v = 0; v < 3; ++v) dep.unit_log_table.at(1, v) = dep.unit_log_table.at(0, v).scale(2);
    CHECK_THROWS_AS(sunit_height(dep, ctx), input_error);

    SUnitContext bad = rational_sunits({2, 3});
    bad.unit_log_table = ExactMatrix(2, 2);
    CHECK_THROWS_AS(sunit_height(bad, ctx), input_error);
}

TEST_CASE("sunit identity for a declared quadratic field") {
    // field of degree 2 with two archimedean places and one finite place of
    // local degree 2; unit u with |u|_w1 = 2, |u|_w2 = 1/2, |u|_v = 1
    SUnitContext c;
    c.field_degree = 2;
    c.places.push_back(arch_place(1, 2, "w1"));
    c.places.push_back(arch_place(1, 2, "w2"));
    c.places.push_back(finite_place(3, 2, 2, "v3"));
    c.unit_log_table = ExactMatrix(2, 3);
    c.unit_log_table.at(0, 0) = LogValue::log_of(2);
    c.unit_log_table.at(0, 1) = LogValue::log_of(2).scale(-1);
    // second unit touching the finite place: |u|_v = 1/3, |u|_w1 = 3, |u|_w2 = 1
    c.unit_log_table.at(1, 0) = LogValue::log_of(3).scale(2);
    c.unit_log_table.at(1, 2) = LogValue::log_of(3).scale(-1);
    SUnitHeights h = sunit_height(c, ctx);
    // regulator from dropping w2: |det [[log2, 0], [2log3, -2log3]]| = 2 log2 log3
    CHECK(near_dec(h.regulator, "1.52300002083761797285824543367300777128460324670473", -39));
    // h = 3! * reg / 4^2
    CHECK(h.height.overlaps(h.height_by_presentation));
}

TEST_CASE("exponent rank matches the certified log rank") {
    TestRng rng(909);
    for (int iter = 0; iter < 100; ++iter) {
        long primes[3] = {2, 3, 5};
        int n = static_cast<int>(rng.range(1, 3));
        std::vector<GroupElement> gens;
        for (int i = 0; i < n; ++i) {
            std::map<mpz_class, mpq_class> exps;
            for (long p : primes)
                if (long e = rng.range(-2, 2); e != 0) exps[p] = e;
            gens.push_back(GroupElement::from_exponents(exps));
        }
        SubgroupPresentation p = build_presentation(gens, ctx);
        CHECK(p.rank == certified_rank(p.A, ctx));
    }
}
