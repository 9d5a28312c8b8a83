#include "sqrtsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqrtsum {

namespace {

void validate_params(const TheoremParams& p) {
    if (p.n < 1) throw InvalidParams("n must be >= 1");
    if (p.Y < 1) throw InvalidParams("Y must be >= 1");
    if (p.L < 1) throw InvalidParams("L must be >= 1");
    if (!(p.eps >= 0)) throw InvalidParams("eps must be >= 0");
}

double rhs_common(const TheoremParams& p, double norm1, double norm_sup,
                  std::uint64_t X, double lf_term) {
    validate_params(p);
    if (norm1 <= 0 || norm_sup <= 0 || X == 0) return 0.0;
    const double n = p.n;
    const double r = static_cast<double>(p.r);
    const double Y = static_cast<double>(p.Y);
    const double Xd = static_cast<double>(X);
    const double bracket = Xd + (lf_term + 1.0 / Y) * std::pow(r, 1.0 + 1.0 / n);
    return std::pow(norm1, 1.0 - 1.0 / n) * std::pow(norm_sup, 1.0 / n) *
           std::pow(Xd, 0.5 / n) * std::pow(Y, 1.0 - 0.5 / n) *
           std::pow(bracket, 0.5 / n) * std::pow(r, p.eps);
}

double safe_ratio(double lhs, double rhs) {
    if (rhs > 0) return lhs / rhs;
    if (lhs == 0) return 0.0;
    return std::numeric_limits<double>::infinity();
}

// Total number of (m, root) pairs with m in (A, A+Y].
std::uint64_t root_pair_count(const PrimeContext& ctx, std::int64_t j,
                              std::int64_t A, std::uint64_t Y) {
    const std::uint64_t jr = ctx.reduce(j);
    std::uint64_t total = 0;
    for (std::int64_t m = A + 1; m <= A + static_cast<std::int64_t>(Y); ++m) {
        total += all_sqrts(static_cast<std::int64_t>(ctx.mul(jr, ctx.reduce(m))), ctx).size();
    }
    return total;
}

void validate_span(const CoeffSeq& alpha, std::uint64_t L) {
    if (alpha.empty()) return;
    const std::int64_t lo = alpha.entries().front().first;
    const std::int64_t hi = alpha.entries().back().first;
    if (hi - lo > static_cast<std::int64_t>(L) - 1) {
        throw InvalidParams("support does not fit in an interval of length L");
    }
}

}  // namespace

RegimeFlags regime_flags(const TheoremParams& p, std::uint64_t X) {
    const double r = static_cast<double>(p.r);
    const double n = p.n;
    const double F = p.f.derivative_bound();
    const double crit = std::pow(r, 1.0 / n + 0.25 + p.eps);
    RegimeFlags flags;
    flags.lcond_ok = (F == 0.0) || (static_cast<double>(p.L) <= 1.0 / (F * crit));
    flags.ycond_ok = static_cast<double>(p.Y) >= crit;
    flags.nontrivial_region =
        static_cast<double>(X) * std::pow(static_cast<double>(p.Y), 2.0) >=
            std::pow(r, 1.0 + p.eps) &&
        static_cast<double>(p.Y) >= std::pow(r, 0.25 + p.eps);
    return flags;
}

double theorem1_rhs(const TheoremParams& p, double norm1, double norm_sup,
                    std::uint64_t X) {
    return rhs_common(p, norm1, norm_sup, X,
                      static_cast<double>(p.L) * p.f.derivative_bound());
}

double corollary_rhs(const TheoremParams& p, double norm1, double norm_sup,
                     std::uint64_t X) {
    return rhs_common(p, norm1, norm_sup, X, 0.0);
}

namespace {

BoundReport check_bilinear(const TheoremParams& p, const PrimeContext& ctx,
                           const CoeffSeq& alpha, bool corollary) {
    validate_params(p);
    if (ctx.modulus() != p.r) throw InvalidParams("context/params modulus mismatch");
    validate_span(alpha, p.L);

    BoundReport rep;
    rep.flags = regime_flags(p, alpha.size());
    if (alpha.empty()) return rep;

    const Complex sum = bilinear_set_sum(ctx, p.j, alpha, IntervalSpec{p.A, p.Y},
                                         corollary ? PhaseFn::zero() : p.f);
    rep.lhs = std::abs(sum);
    rep.rhs = corollary ? corollary_rhs(p, alpha.norm1(), alpha.norm_sup(), alpha.size())
                        : theorem1_rhs(p, alpha.norm1(), alpha.norm_sup(), alpha.size());
    rep.trivial_bound =
        alpha.norm_sup() * static_cast<double>(root_pair_count(ctx, p.j, p.A, p.Y));
    rep.ratio = safe_ratio(rep.lhs, rep.rhs);
    return rep;
}

}  // namespace

BoundReport check_theorem1(const TheoremParams& p, const PrimeContext& ctx,
                           const CoeffSeq& alpha) {
    return check_bilinear(p, ctx, alpha, false);
}

BoundReport check_corollary(const TheoremParams& p, const PrimeContext& ctx,
                            const CoeffSeq& alpha) {
    if (!p.f.is_zero()) throw InvalidParams("the corollary takes f = 0");
    return check_bilinear(p, ctx, alpha, true);
}

ShiftParams choose_shift_params(const TheoremParams& p) {
    validate_params(p);
    const double r = static_cast<double>(p.r);
    const double root = std::pow(r, 1.0 / p.n);
    const double F = p.f.derivative_bound();
    const double inf = std::numeric_limits<double>::infinity();
    const double u_f = F > 0 ? 1.0 / (static_cast<double>(p.L) * F * root) : inf;
    const double u_y = static_cast<double>(p.Y) / root;
    const double u_real = std::min(u_f, u_y);
    if (!(u_real >= 1.0)) {
        throw DegenerateChoice(
            "shift parameter U = " + std::to_string(u_real) +
            " < 1; the hypotheses fail at this scale");
    }
    ShiftParams s;
    s.U = static_cast<std::uint64_t>(u_real);
    s.V = static_cast<std::uint64_t>(std::ceil(root));
    s.ucond_ok = static_cast<double>(s.U) >= std::pow(r, 0.25 + p.eps);
    const double uv_cap = std::min(F > 0 ? 1.0 / (F * static_cast<double>(p.L)) : inf,
                                   static_cast<double>(p.Y));
    s.uvcond_ok = static_cast<double>(s.U) * static_cast<double>(s.V) <= uv_cap;
    return s;
}

Prop1Report check_prop1(std::uint64_t U, const PrimeContext& ctx, double eps) {
    Prop1Report rep;
    rep.window_count = qr_window(U, ctx).size();
    rep.half_u = static_cast<double>(U) / 2.0;
    rep.char_sum = char_window_sum(U, ctx);
    rep.ucond_ok = static_cast<double>(U) >=
                   std::pow(static_cast<double>(ctx.modulus()), 0.25 + eps);
    return rep;
}

Lemma1Report check_lemma1(const PrimeContext& ctx, std::int64_t j,
                          std::uint64_t L, std::uint64_t M, std::uint64_t H,
                          const CoeffSeq& alpha, const CoeffSeq& beta,
                          const PhaseFn& f, double eps) {
    const std::uint64_t r = ctx.modulus();
    if (L < 1 || L > r) throw InvalidParams("lemma 1 requires 1 <= L <= r");
    if (M < 1 || M > r / 2) throw InvalidParams("lemma 1 requires 1 <= M <= r/2");
    const double F = f.derivative_bound();
    if (F > 1.0 / static_cast<double>(L)) {
        throw InvalidParams("lemma 1 requires F <= 1/L");
    }
    const double h_cap = F > 0 ? 1.0 / (static_cast<double>(L) * F)
                               : std::numeric_limits<double>::infinity();
    if (H < 1 || static_cast<double>(H) > std::min(h_cap, static_cast<double>(M))) {
        throw InvalidParams("lemma 1 requires 1 <= H <= min(1/(L F), M)");
    }

    Lemma1Report rep;
    const Complex sum = bilinear_interval_sum(ctx, j, L, M, alpha, beta, f);
    rep.lhs_sq = std::norm(sum);
    const CollisionAggregate agg = collision_aggregate(ctx, j, M, H, L, eps);
    rep.a_total = agg.total;
    rep.D = agg.D;
    rep.rhs = static_cast<double>(L) * static_cast<double>(M) /
              static_cast<double>(H) * alpha.norm2_sq() *
              beta.norm_sup() * beta.norm_sup() * static_cast<double>(agg.total);
    rep.ratio = safe_ratio(rep.lhs_sq, rep.rhs);
    return rep;
}

Prop2Report check_prop2(const PrimeContext& ctx, std::int64_t j,
                        const CoeffSeq& alpha, std::uint64_t U, std::int64_t A,
                        std::uint64_t Y, double eps) {
    const auto window = qr_window(U, ctx);
    const NuTable table = build_nu(ctx, j, alpha, window, A, Y);
    const NuMoments moments = nu_moments(table);

    Prop2Report rep;
    rep.window_size = window.size();
    rep.m1 = moments.m1;
    rep.m1_expected = alpha.norm1() * static_cast<double>(window.size()) *
                      static_cast<double>(3 * Y + 1);
    rep.m2 = moments.m2;
    const double r = static_cast<double>(ctx.modulus());
    const double X = static_cast<double>(alpha.size());
    const double Ud = static_cast<double>(U);
    rep.rhs = alpha.norm_sup() * alpha.norm_sup() * Ud * X *
              static_cast<double>(Y) * (Ud * X / r + 1.0) * std::pow(r, eps);
    rep.ratio = safe_ratio(rep.m2, rep.rhs);
    return rep;
}

Prop3Report check_prop3(const PrimeContext& ctx, std::int64_t j, unsigned n,
                        std::uint64_t V, const std::vector<std::uint64_t>& v_subset,
                        double xi, std::uint64_t budget) {
    for (std::uint64_t v : v_subset) {
        if (2 * v <= V || v > V) {
            throw InvalidParams("v_subset must lie in (V/2, V]");
        }
    }
    Prop3Report rep;
    const SolutionCount sc = prop3_solution_count(ctx, j, n, v_subset, xi, budget);
    rep.raw_count = sc.raw_count;
    rep.phase_weighted = sc.phase_weighted;
    const double Vd = static_cast<double>(V);
    rep.rhs = std::pow(Vd, 2.0 * n) +
              static_cast<double>(ctx.modulus()) * std::pow(Vd, static_cast<double>(n));
    rep.ratio = safe_ratio(static_cast<double>(rep.raw_count), rep.rhs);
    return rep;
}

CishzReport check_cishz(const PrimeContext& ctx,
                        const std::vector<std::int64_t>& x_set,
                        const std::vector<std::uint64_t>& u_window,
                        std::uint64_t U, double eps) {
    CishzReport rep;
    rep.count = quad_congruence_count(ctx, x_set, u_window);
    const double r = static_cast<double>(ctx.modulus());
    const double X = static_cast<double>(x_set.size());
    const double Ud = static_cast<double>(U);
    rep.rhs = X * X * Ud * Ud / r + X * Ud * std::pow(r, eps);
    rep.ratio = safe_ratio(static_cast<double>(rep.count), rep.rhs);
    return rep;
}

}  // namespace sqrtsum
