#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sqrtsum/sequences.hpp"
#include "sqrtsum/sieve.hpp"

using namespace sqrtsum;

TEST_CASE("rational normalization and comparison") {
    const Rat a = make_rat(2, 4);
    CHECK(a.num == 1);
    CHECK(a.den == 2);
    const Rat b = make_rat(3, -6);
    CHECK(b.num == -1);
    CHECK(b.den == 2);
    CHECK(rat_cmp(a, b) > 0);
    CHECK(rat_cmp(a, make_rat(1, 2)) == 0);
    CHECK_THROWS_AS(make_rat(1, 0), InvalidParams);
    const Rat sum = rat_add(make_rat(1, 3), make_rat(1, 6));
    CHECK(sum.num == 1);
    CHECK(sum.den == 2);
    const Rat diff = rat_sub(make_rat(1, 4), make_rat(1, 100));
    CHECK(diff.num == 6);
    CHECK(diff.den == 25);
}

TEST_CASE("sieve_lhs pinned examples") {
    SieveSpec s;
    s.Q = 2;
    s.M = 0;
    s.N = 1;
    s.a = CoeffSeq::ones({1});
    CHECK(sieve_lhs(s) == doctest::Approx(3.0).epsilon(1e-12));

    SieveSpec zero = s;
    zero.a = CoeffSeq(std::vector<CoeffSeq::Entry>{{1, {0, 0}}});
    CHECK(sieve_lhs(zero) == doctest::Approx(0.0));

    // Q = 1: single fraction a = 1, q = 1, so lhs = |sum a_n|^2
    SieveSpec q1;
    q1.Q = 1;
    q1.M = 0;
    q1.N = 8;
    q1.a = gen_sequence("unit_phase", {1, 2, 3, 4, 5, 6, 7, 8}, 3, 0);
    Complex total{0, 0};
    for (const auto& [n, w] : q1.a.entries()) total += w;
    CHECK(sieve_lhs(q1) == doctest::Approx(std::norm(total)).epsilon(1e-12));
}

TEST_CASE("sieve_lhs matches the direct oracle") {
    SieveSpec s;
    s.Q = 5;
    s.M = 3;
    s.N = 17;
    std::vector<std::int64_t> support;
    for (std::int64_t n = 4; n <= 20; ++n) support.push_back(n);
    s.a = gen_sequence("unit_phase", support, 9, 0);
    const double got = sieve_lhs(s);
    const double want = oracle::sieve_lhs(5, 3, 17, s.a.entries());
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("sieve_lhs sits above its q = 1 term") {
    SieveSpec s;
    s.Q = 6;
    s.M = 0;
    s.N = 32;
    std::vector<std::int64_t> support;
    for (std::int64_t n = 1; n <= 32; ++n) support.push_back(n);
    s.a = gen_sequence("rademacher", support, 4, 0);
    Complex total{0, 0};
    for (const auto& [n, w] : s.a.entries()) total += w;
    CHECK(sieve_lhs(s) >= std::norm(total) - 1e-9);
}

TEST_CASE("sieve_lhs validation and budget") {
    SieveSpec s;
    s.Q = 2;
    s.M = 0;
    s.N = 1;
    s.a = CoeffSeq::ones({2});  // outside (0, 1]
    CHECK_THROWS_AS(sieve_lhs(s), InvalidParams);
    SieveSpec big;
    big.Q = 64;
    big.M = 0;
    big.N = 1 << 14;
    big.a = CoeffSeq::ones({1});
    CHECK_THROWS_AS(sieve_lhs(big), BudgetExceeded);
}

TEST_CASE("z_norm is the squared 2-norm") {
    SieveSpec s;
    s.a = CoeffSeq({{1, {3, 4}}, {2, {1, 0}}});
    CHECK(z_norm(s) == doctest::Approx(26.0));
    s.a = gen_sequence("unit_phase", []{
        std::vector<std::int64_t> v;
        for (std::int64_t n = 1; n <= 100; ++n) v.push_back(n);
        return v;
    }(), 1, 0);
    CHECK(z_norm(s) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("farey_count_P pinned examples") {
    CHECK(farey_count_P(make_rat(0, 1), 2, make_rat(1, 10)) == 1);
    CHECK(farey_count_P(make_rat(0, 1), 1, make_rat(1, 1)) == 3);
    CHECK(farey_count_P(make_rat(1, 4), 2, make_rat(1, 100)) == 1);
    CHECK_THROWS_AS(farey_count_P(make_rat(0, 1), 2, make_rat(0, 1)), InvalidParams);
    CHECK_THROWS_AS(farey_count_P(make_rat(0, 1), 0, make_rat(1, 2)), InvalidParams);
}

TEST_CASE("farey_count_P matches the scanning oracle") {
    struct Case {
        std::int64_t an, ad, dn, dd;
        std::uint64_t Q;
    };
    for (const Case& c : {Case{0, 1, 1, 10, 5}, Case{1, 4, 1, 100, 7},
                          Case{3, 7, 1, 50, 9}, Case{-2, 5, 1, 30, 6},
                          Case{5, 1, 1, 9, 4}}) {
        CHECK(farey_count_P(make_rat(c.an, c.ad), c.Q, make_rat(c.dn, c.dd)) ==
              oracle::farey_count(c.an, c.ad, c.Q, c.dn, c.dd));
    }
}

TEST_CASE("farey_count_P boundary fractions are decided exactly") {
    // |1/4 - 0| = 1/4 exactly equals delta: the fraction must count
    CHECK(farey_count_P(make_rat(0, 1), 2, make_rat(1, 4)) ==
          oracle::farey_count(0, 1, 2, 1, 4));
    const std::uint64_t with_boundary =
        farey_count_P(make_rat(0, 1), 2, make_rat(1, 4));
    const std::uint64_t without =
        farey_count_P(make_rat(0, 1), 2, make_rat(24999999, 100000000));
    CHECK(with_boundary > without);
}

TEST_CASE("farey_count_P is monotone in delta and Q") {
    const Rat alpha = make_rat(3, 7);
    std::uint64_t prev = 0;
    for (std::int64_t dn : {1, 2, 5, 11}) {
        const std::uint64_t cur = farey_count_P(alpha, 6, make_rat(dn, 20));
        CHECK(cur >= prev);
        prev = cur;
    }
    prev = 0;
    for (std::uint64_t Q : {1ull, 2ull, 4ull, 8ull}) {
        const std::uint64_t cur = farey_count_P(alpha, Q, make_rat(1, 5));
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("scan_P_over_ranges basics") {
    // degenerate grid: a single evaluation at z = Delta
    const PScanReport single = scan_P_over_ranges(4, 4096, 1, 1, 1);
    CHECK(single.points.size() == 1);
    CHECK(single.points[0].k == 1);
    CHECK(rat_cmp(single.points[0].z, make_rat(1, 4096)) == 0);
    CHECK(single.max_count == farey_count_P(rat_add(make_rat(1, 1), make_rat(1, 4096)),
                                            4, make_rat(1, 4096)));

    // near-integer center: the q = 1 fraction sits inside the radius
    const PScanReport near_int = scan_P_over_ranges(4, 4096, 1, 1, 12);
    CHECK(near_int.points.front().k == 1);  // z = Delta endpoint
    CHECK(near_int.points.back().k == 64);  // z = sqrt(Delta)/r endpoint
    CHECK(near_int.max_count >= 1);
    CHECK(near_int.q_sqrt == doctest::Approx(2.0));

    // r = 3: the candidate fractions a/9 near b/3 always share the factor 3,
    // so every grid count comes out empty here
    const PScanReport rep = scan_P_over_ranges(4, 4096, 3, 2, 12);
    CHECK(rep.points.front().k == 3);
    CHECK(rep.points.back().k == 64);
    CHECK(rep.max_count == 0);

    // every grid count is dominated by the wide-radius count at the center
    const Rat center = make_rat(2, 3);
    const Rat wide = rat_add(make_rat(64, 4096 * 3), make_rat(1, 4096));
    const std::uint64_t cap = farey_count_P(center, 4, wide);
    for (const auto& pt : rep.points) CHECK(pt.count <= cap);
    const Rat wide1 = rat_add(make_rat(64, 4096), make_rat(1, 4096));
    const std::uint64_t cap1 = farey_count_P(make_rat(1, 1), 4, wide1);
    for (const auto& pt : near_int.points) CHECK(pt.count <= cap1);
}

TEST_CASE("scan_P_over_ranges validation") {
    CHECK_THROWS_AS(scan_P_over_ranges(4, 16, 5, 1, 4), InvalidParams);  // r > sqrt(N)
    CHECK_THROWS_AS(scan_P_over_ranges(4, 4096, 4, 2, 4), InvalidParams);  // gcd(b,r) != 1
    CHECK_NOTHROW(scan_P_over_ranges(4, 16, 4, 1, 4));  // r = sqrt(N) boundary
}
