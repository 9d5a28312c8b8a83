#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sqrtsum/bounds.hpp"
#include "sqrtsum/sequences.hpp"

using namespace sqrtsum;

namespace {

TheoremParams base_params() {
    TheoremParams p;
    p.r = 101;
    p.j = 1;
    p.n = 1;
    p.A = 0;
    p.Y = 16;
    p.L = 1;
    p.eps = 0.0;
    return p;
}

}  // namespace

TEST_CASE("theorem1_rhs pinned formula value") {
    TheoremParams p = base_params();
    p.L = 1;
    const double got = theorem1_rhs(p, 4.0, 1.0, 4);
    const double want = 8.0 * std::sqrt(641.5625);  // independent arithmetic
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK(got == doctest::Approx(202.633).epsilon(1e-4));
    CHECK(theorem1_rhs(p, 0.0, 0.0, 4) == 0.0);
}

TEST_CASE("doubling the sup norm doubles the n = 1 rhs") {
    TheoremParams p = base_params();
    const double one = theorem1_rhs(p, 4.0, 1.0, 4);
    const double two = theorem1_rhs(p, 4.0, 2.0, 4);
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
}

TEST_CASE("corollary_rhs equals theorem1_rhs when F = 0") {
    TheoremParams p = base_params();
    CHECK(corollary_rhs(p, 4.0, 1.0, 4) ==
          doctest::Approx(theorem1_rhs(p, 4.0, 1.0, 4)).epsilon(1e-15));
    // singleton support example
    const double got = corollary_rhs(p, 1.0, 1.0, 1);
    const double want = 4.0 * std::sqrt(1.0 + 10201.0 / 16.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK(got == doctest::Approx(101.0792).epsilon(1e-4));
}

TEST_CASE("rhs is monotone in norms, X and r") {
    TheoremParams p = base_params();
    p.eps = 0.05;
    const double base = theorem1_rhs(p, 4.0, 1.0, 4);
    CHECK(theorem1_rhs(p, 5.0, 1.0, 4) >= base);
    CHECK(theorem1_rhs(p, 4.0, 1.5, 4) >= base);
    CHECK(theorem1_rhs(p, 4.0, 1.0, 6) >= base);
    TheoremParams pr = p;
    pr.r = 211;
    CHECK(theorem1_rhs(pr, 4.0, 1.0, 4) >= base);
    for (unsigned n : {2u, 3u}) {
        TheoremParams pn = p;
        pn.n = n;
        const double b2 = theorem1_rhs(pn, 4.0, 1.0, 4);
        CHECK(theorem1_rhs(pn, 8.0, 1.0, 4) >= b2);
        CHECK(theorem1_rhs(pn, 4.0, 2.0, 4) >= b2);
    }
}

TEST_CASE("check_theorem1 on the pinned r = 101 instance") {
    TheoremParams p = base_params();
    p.eps = 0.05;
    p.L = 4;
    PrimeContext ctx(101);
    const CoeffSeq alpha = CoeffSeq::ones({1, 2, 3, 4});
    const BoundReport rep = check_theorem1(p, ctx, alpha);
    // the eps factor inflates the eps = 0 value 202.633
    CHECK(rep.rhs == doctest::Approx(202.63274 * std::pow(101.0, 0.05)).epsilon(1e-5));
    CHECK(rep.rhs > 202.0);
    const Complex want = oracle::bilinear_set_sum(
        101, 1, {{1, {1, 0}}, {2, {1, 0}}, {3, {1, 0}}, {4, {1, 0}}}, 0, 16);
    CHECK(rep.lhs == doctest::Approx(std::abs(want)).epsilon(1e-10));
    CHECK(rep.ratio == doctest::Approx(rep.lhs / rep.rhs));
    // trivial bound: sup norm times the exact (m, root) pair count
    std::uint64_t pairs = 0;
    for (std::int64_t m = 1; m <= 16; ++m) {
        pairs += all_sqrts(m, ctx).size();
    }
    CHECK(rep.trivial_bound == doctest::Approx(static_cast<double>(pairs)));
}

TEST_CASE("check_theorem1 zero sequence and flag logic") {
    TheoremParams p = base_params();
    PrimeContext ctx(101);
    const BoundReport rep = check_theorem1(p, ctx, CoeffSeq());
    CHECK(rep.lhs == 0.0);
    CHECK(rep.ratio == 0.0);

    // ycond fails at Y = 16, n = 1 but the instance still evaluates
    CHECK_FALSE(rep.flags.ycond_ok);
    TheoremParams p2 = base_params();
    p2.n = 4;
    p2.Y = 64;
    p2.eps = 0.0;
    CHECK(regime_flags(p2, 4).ycond_ok ==
          (64.0 >= std::pow(101.0, 0.25 + 0.25)));

    // flags are pure functions of the parameters
    const RegimeFlags f1 = regime_flags(p, 4);
    const RegimeFlags f2 = regime_flags(p, 4);
    CHECK(f1.lcond_ok == f2.lcond_ok);
    CHECK(f1.ycond_ok == f2.ycond_ok);
    CHECK(f1.nontrivial_region == f2.nontrivial_region);
}

TEST_CASE("check_theorem1 rejects supports wider than L") {
    TheoremParams p = base_params();
    p.L = 3;
    PrimeContext ctx(101);
    CHECK_THROWS_AS(check_theorem1(p, ctx, CoeffSeq::ones({1, 2, 3, 4})), InvalidParams);
}

TEST_CASE("check_corollary requires f = 0") {
    TheoremParams p = base_params();
    p.f = PhaseFn::linear(0.1);
    PrimeContext ctx(101);
    CHECK_THROWS_AS(check_corollary(p, ctx, CoeffSeq::ones({1})), InvalidParams);
}

TEST_CASE("choose_shift_params pinned examples") {
    TheoremParams p = base_params();  // r=101, n=1, L=1, F=0, Y=16
    CHECK_THROWS_AS(choose_shift_params(p), DegenerateChoice);

    TheoremParams p4 = base_params();
    p4.n = 4;
    p4.Y = 64;
    const ShiftParams s = choose_shift_params(p4);
    CHECK(s.V == 4);   // ceil(101^(1/4)) = ceil(3.1702)
    CHECK(s.U == 20);  // floor(64 / 101^(1/4)) = floor(20.188)

    TheoremParams pmax = base_params();
    pmax.Y = 100;  // Y = r - 1 still degenerates at n = 1
    CHECK_THROWS_AS(choose_shift_params(pmax), DegenerateChoice);
}

TEST_CASE("choose_shift_params respects the integerized UV slack") {
    // After flooring U and ceiling V the product can exceed min(1/(FL), Y)
    // by at most U (one V-step); the documented convention.
    for (std::uint64_t r : {101ull, 211ull, 1009ull}) {
        for (unsigned n : {2u, 3u, 4u}) {
            for (std::uint64_t Y : {r / 4, r / 2, r - 1}) {
                TheoremParams p;
                p.r = r;
                p.n = n;
                p.Y = Y;
                p.L = 1;
                try {
                    const ShiftParams s = choose_shift_params(p);
                    const double uv = static_cast<double>(s.U) * static_cast<double>(s.V);
                    CHECK(uv <= static_cast<double>(Y) + static_cast<double>(s.U));
                    if (s.uvcond_ok) CHECK(uv <= static_cast<double>(Y));
                } catch (const DegenerateChoice&) {
                    // legitimately impossible at this scale
                }
            }
        }
    }
}

TEST_CASE("check_prop1 pinned examples") {
    PrimeContext ctx(7);
    const Prop1Report a = check_prop1(6, ctx, 0.05);
    CHECK(a.window_count == 1);
    CHECK(a.half_u == doctest::Approx(3.0));
    CHECK(a.char_sum == -1);
    const Prop1Report b = check_prop1(1, ctx, 0.05);
    CHECK(b.window_count == 1);
    CHECK(b.half_u == doctest::Approx(0.5));
    CHECK(b.char_sum == 1);
    CHECK_THROWS_AS(check_prop1(7, ctx, 0.05), RangeError);
}

TEST_CASE("check_lemma1 basics") {
    PrimeContext ctx(101);
    std::vector<std::int64_t> a_support, b_support;
    for (std::int64_t l = -2; l <= 2; ++l) a_support.push_back(l);
    for (std::int64_t m = 1; m <= 50; ++m) b_support.push_back(m);

    SUBCASE("beta = 0 kills the left side") {
        std::vector<CoeffSeq::Entry> zeros;
        for (std::int64_t m : b_support) zeros.emplace_back(m, Complex{0, 0});
        const Lemma1Report rep =
            check_lemma1(ctx, 1, 2, 50, 5, CoeffSeq::ones(a_support),
                         CoeffSeq(zeros), PhaseFn::zero(), 0.05);
        CHECK(rep.lhs_sq == 0.0);
    }

    SUBCASE("pinned all-ones instance stays under the ceiling") {
        const Lemma1Report rep =
            check_lemma1(ctx, 1, 2, 50, 5, CoeffSeq::ones(a_support),
                         CoeffSeq::ones(b_support), PhaseFn::zero(), 0.05);
        CHECK(rep.rhs > 0.0);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.ratio <= 64.0);
        // D = floor(2 * 101^1.05 / 2)
        CHECK(rep.D == static_cast<std::uint64_t>(std::pow(101.0, 1.05)));
    }

    SUBCASE("the left side does not depend on H") {
        const Lemma1Report h5 =
            check_lemma1(ctx, 1, 2, 50, 5, CoeffSeq::ones(a_support),
                         CoeffSeq::ones(b_support), PhaseFn::zero(), 0.05);
        const Lemma1Report h9 =
            check_lemma1(ctx, 1, 2, 50, 9, CoeffSeq::ones(a_support),
                         CoeffSeq::ones(b_support), PhaseFn::zero(), 0.05);
        CHECK(h5.lhs_sq == h9.lhs_sq);
    }

    SUBCASE("precondition violations") {
        const CoeffSeq ones_a = CoeffSeq::ones(a_support);
        const CoeffSeq ones_b = CoeffSeq::ones(b_support);
        CHECK_THROWS_AS(check_lemma1(ctx, 1, 2, 51, 5, ones_a, ones_b,
                                     PhaseFn::zero(), 0.05),
                        InvalidParams);  // M > r/2
        CHECK_THROWS_AS(check_lemma1(ctx, 1, 2, 50, 51, ones_a, ones_b,
                                     PhaseFn::zero(), 0.05),
                        InvalidParams);  // H > M
        CHECK_THROWS_AS(check_lemma1(ctx, 1, 2, 50, 5, ones_a, ones_b,
                                     PhaseFn::linear(0.6), 0.05),
                        InvalidParams);  // F > 1/L
    }
}

TEST_CASE("check_prop2 carries both moments and the ratio") {
    PrimeContext ctx(101);
    const CoeffSeq alpha = CoeffSeq::ones({3, 7, 20});
    const Prop2Report rep = check_prop2(ctx, 1, alpha, 13, 0, 10, 0.05);
    CHECK(rep.m1 == rep.m1_expected);  // integer weights: exact
    CHECK(rep.m2 > 0.0);
    CHECK(std::isfinite(rep.ratio));
    CHECK(rep.rhs > 0.0);
}

TEST_CASE("check_prop3 validates the window and reports the ratio") {
    PrimeContext ctx(101);
    CHECK_THROWS_AS(check_prop3(ctx, 1, 1, 10, {2}, 0.0, 1u << 30), InvalidParams);
    const Prop3Report rep = check_prop3(ctx, 1, 1, 10, {6, 9}, 0.0, 1u << 30);
    CHECK(rep.raw_count > 0);
    CHECK(rep.rhs == doctest::Approx(100.0 + 101.0 * 10.0));
    CHECK(std::isfinite(rep.ratio));
}

TEST_CASE("check_cishz counts at least the diagonal") {
    PrimeContext ctx(101);
    const auto window = qr_window(13, ctx);
    const std::vector<std::int64_t> xs{1, 5, 9};
    const CishzReport rep = check_cishz(ctx, xs, window, 13, 0.05);
    CHECK(rep.count >= xs.size() * window.size());
    CHECK(std::isfinite(rep.ratio));
}
