// Command-line front end: exact sum evaluation, counting oracles, single
// bound checks and deterministic parameter sweeps with CSV reports.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sqrtsum/bounds.hpp"
#include "sqrtsum/counting.hpp"
#include "sqrtsum/expsums.hpp"
#include "sqrtsum/field.hpp"
#include "sqrtsum/sequences.hpp"
#include "sqrtsum/sieve.hpp"
#include "sqrtsum/sweep.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace sqrtsum;

struct Options {
    bool human = false;
};

void print_object(const json& obj, const Options& opt) {
    if (!opt.human) {
        std::cout << obj.dump() << "\n";
        return;
    }
    for (const auto& [key, val] : obj.items()) {
        std::string text;
        if (val.is_number_float()) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", val.get<double>());
            text = buf;
        } else if (val.is_string()) {
            text = val.get<std::string>();
        } else {
            text = val.dump();
        }
        std::printf("%-16s %s\n", key.c_str(), text.c_str());
    }
}

std::vector<std::int64_t> parse_i64_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        std::size_t pos = 0;
        out.push_back(std::stoll(cur, &pos));
        if (pos != cur.size()) throw InvalidParams("bad integer list element '" + cur + "'");
        cur.clear();
    };
    for (char c : csv) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    flush();
    if (out.empty()) throw InvalidParams("empty integer list");
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    for (std::int64_t v : parse_i64_list(csv)) {
        if (v < 0) throw InvalidParams("expected nonnegative integers");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

Rat parse_rat(const std::string& s) {
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        std::size_t pos = 0;
        std::int64_t num = std::stoll(s, &pos);
        if (pos != s.size()) throw InvalidParams("bad rational '" + s + "'");
        return make_rat(num, 1);
    }
    std::size_t p1 = 0, p2 = 0;
    std::int64_t num = std::stoll(s.substr(0, slash), &p1);
    std::int64_t den = std::stoll(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1) {
        throw InvalidParams("bad rational '" + s + "'");
    }
    return make_rat(num, den);
}

// Common flags describing the analytic phase.
struct PhaseFlags {
    std::string family = "zero";
    double theta = 0;
    double c = 0;
    double kappa = 0.5;
};

PhaseFn build_phase(const PhaseFlags& pf, double domain_lo) {
    if (pf.family == "zero") return PhaseFn::zero();
    if (pf.family == "linear") return PhaseFn::linear(pf.theta);
    if (pf.family == "power") return PhaseFn::power(pf.c, pf.kappa, domain_lo);
    throw InvalidParams("phase family must be zero, linear or power");
}

void add_phase_flags(CLI::App* cmd, PhaseFlags& pf) {
    cmd->add_option("--f", pf.family, "phase family: zero, linear, power");
    cmd->add_option("--theta", pf.theta, "slope for the linear phase");
    cmd->add_option("--c", pf.c, "scale for the power phase");
    cmd->add_option("--kappa", pf.kappa, "exponent for the power phase (0,1)");
}

json complex_fields(Complex z) {
    json obj;
    obj["re"] = z.real();
    obj["im"] = z.imag();
    obj["abs"] = std::abs(z);
    return obj;
}

int run(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact bilinear sums with modular square roots, counting "
                 "oracles and bound-ratio sweeps"};
    app.require_subcommand(1);
    app.add_flag("--human", opt.human, "aligned text output instead of JSON");
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    json out;

    std::uint64_t arg_r = 7;
    std::int64_t arg_s = 0, arg_a = 0, arg_b = 0, arg_j = 1, arg_A = 0, arg_d = 0;
    std::uint64_t arg_Y = 1, arg_U = 1, arg_L = 1, arg_M = 1, arg_H = 1, arg_V = 0;
    std::uint64_t arg_n = 1, arg_k = 1, arg_Q = 2, arg_N = 1, arg_seed = 1;
    std::uint64_t arg_budget = 1'000'000'000ull;
    std::uint32_t arg_grid = 16;
    double arg_xi = 0, arg_eps = 0.05;
    std::string arg_x, arg_v, arg_gen = "ones", arg_alpha = "0", arg_delta = "1";
    std::string arg_config, arg_out;
    std::int64_t arg_bnum = 1;
    std::uint64_t arg_rmod = 1;
    bool arg_aggregate = false;

    auto* c_sqrt = app.add_subcommand("sqrt", "all modular square roots of s mod r");
    c_sqrt->add_option("--r", arg_r)->required();
    c_sqrt->add_option("--s", arg_s)->required();
    c_sqrt->callback([&] {
        PrimeContext ctx(arg_r);
        out["roots"] = all_sqrts(arg_s, ctx);
    });

    auto* c_leg = app.add_subcommand("legendre", "Legendre symbol (a/r)");
    c_leg->add_option("--r", arg_r)->required();
    c_leg->add_option("--a", arg_a)->required();
    c_leg->callback([&] {
        PrimeContext ctx(arg_r);
        out["legendre"] = ctx.legendre(arg_a);
    });

    auto* c_gauss = app.add_subcommand("gauss", "quadratic Gauss sum G(a,b,r)");
    c_gauss->add_option("--r", arg_r)->required();
    c_gauss->add_option("--a", arg_a)->required();
    c_gauss->add_option("--b", arg_b)->required();
    c_gauss->callback([&] {
        PrimeContext ctx(arg_r);
        out = complex_fields(gauss_sum(arg_a, arg_b, ctx));
    });

    auto* c_salie = app.add_subcommand("salie", "Salie sum: sum (n/r) e_r(an + b/n)");
    c_salie->add_option("--r", arg_r)->required();
    c_salie->add_option("--a", arg_a)->required();
    c_salie->add_option("--b", arg_b)->required();
    c_salie->callback([&] {
        PrimeContext ctx(arg_r);
        out = complex_fields(salie_sum(arg_a, arg_b, ctx));
    });

    PhaseFlags pf_set, pf_int;
    auto* c_set = app.add_subcommand("sum-set",
                                     "bilinear sum over a support set and interval (A, A+Y]");
    c_set->add_option("--r", arg_r)->required();
    c_set->add_option("--j", arg_j)->required();
    c_set->add_option("--x", arg_x, "comma list: support of alpha")->required();
    c_set->add_option("--A", arg_A);
    c_set->add_option("--Y", arg_Y)->required();
    c_set->add_option("--gen", arg_gen, "ones, unit_phase or rademacher");
    c_set->add_option("--seed", arg_seed);
    add_phase_flags(c_set, pf_set);
    c_set->callback([&] {
        PrimeContext ctx(arg_r);
        const auto support = parse_i64_list(arg_x);
        const CoeffSeq alpha = gen_sequence(arg_gen, support, arg_seed, 0);
        const double dom_lo = static_cast<double>(arg_A) - 2.0 * static_cast<double>(arg_Y);
        const PhaseFn f = build_phase(pf_set, dom_lo);
        out = complex_fields(bilinear_set_sum(ctx, arg_j, alpha,
                                              IntervalSpec{arg_A, arg_Y}, f));
    });

    auto* c_int = app.add_subcommand("sum-interval",
                                     "bilinear sum over |l|<=L, 1<=m<=M");
    c_int->add_option("--r", arg_r)->required();
    c_int->add_option("--j", arg_j)->required();
    c_int->add_option("--L", arg_L)->required();
    c_int->add_option("--M", arg_M)->required();
    c_int->add_option("--gen", arg_gen);
    c_int->add_option("--seed", arg_seed);
    add_phase_flags(c_int, pf_int);
    c_int->callback([&] {
        PrimeContext ctx(arg_r);
        std::vector<std::int64_t> a_support, b_support;
        for (std::int64_t l = -static_cast<std::int64_t>(arg_L);
             l <= static_cast<std::int64_t>(arg_L); ++l) {
            a_support.push_back(l);
        }
        for (std::uint64_t m = 1; m <= arg_M; ++m) {
            b_support.push_back(static_cast<std::int64_t>(m));
        }
        const CoeffSeq alpha = gen_sequence(arg_gen, a_support, arg_seed, 0);
        const CoeffSeq beta = gen_sequence(arg_gen, b_support, arg_seed, 1);
        const PhaseFn f = build_phase(pf_int, 1.0);
        out = complex_fields(
            bilinear_interval_sum(ctx, arg_j, arg_L, arg_M, alpha, beta, f));
    });

    auto* c_nu = app.add_subcommand("nu", "nu-table moments for (S(u)l, u^{-1}m)");
    c_nu->add_option("--r", arg_r)->required();
    c_nu->add_option("--j", arg_j);
    c_nu->add_option("--x", arg_x)->required();
    c_nu->add_option("--U", arg_U, "window bound: u in (U/2, U]")->required();
    c_nu->add_option("--A", arg_A);
    c_nu->add_option("--Y", arg_Y)->required();
    c_nu->add_option("--gen", arg_gen);
    c_nu->add_option("--seed", arg_seed);
    c_nu->callback([&] {
        PrimeContext ctx(arg_r);
        const CoeffSeq alpha = gen_sequence(arg_gen, parse_i64_list(arg_x), arg_seed, 0);
        const auto window = qr_window(arg_U, ctx);
        const NuTable table = build_nu(ctx, arg_j, alpha, window, arg_A, arg_Y);
        const NuMoments m = nu_moments(table);
        out["m1"] = m.m1;
        out["m2"] = m.m2;
        out["nonzero"] = table.nonzero_cells();
        out["window_size"] = window.size();
    });

    auto* c_count = app.add_subcommand("count", "exact combinatorial counts");
    c_count->require_subcommand(1);

    auto* c_cishz = c_count->add_subcommand("cishz",
                                            "#{u1 l1^2 = u2 l2^2 mod r} over X x U-window");
    c_cishz->add_option("--r", arg_r)->required();
    c_cishz->add_option("--x", arg_x)->required();
    c_cishz->add_option("--U", arg_U)->required();
    c_cishz->callback([&] {
        PrimeContext ctx(arg_r);
        const auto window = qr_window(arg_U, ctx);
        out["count"] = quad_congruence_count(ctx, parse_i64_list(arg_x), window);
        out["window_size"] = window.size();
    });

    auto* c_ad = c_count->add_subcommand("Ad", "root-collision count A(d) or its aggregate");
    c_ad->add_option("--r", arg_r)->required();
    c_ad->add_option("--j", arg_j)->required();
    c_ad->add_option("--M", arg_M)->required();
    c_ad->add_option("--H", arg_H)->required();
    c_ad->add_option("--d", arg_d);
    c_ad->add_flag("--aggregate", arg_aggregate, "sum over |d| <= 2 r^(1+eps)/L");
    c_ad->add_option("--L", arg_L);
    c_ad->add_option("--eps", arg_eps);
    c_ad->callback([&] {
        PrimeContext ctx(arg_r);
        if (arg_aggregate) {
            const CollisionAggregate agg =
                collision_aggregate(ctx, arg_j, arg_M, arg_H, arg_L, arg_eps);
            out["A_total"] = agg.total;
            out["D"] = agg.D;
        } else {
            out["A"] = collision_count_A(ctx, arg_j, arg_M, arg_H, arg_d);
            out["d"] = arg_d;
        }
    });

    auto* c_p3 = c_count->add_subcommand("prop3", "2n-fold root-congruence solutions");
    c_p3->add_option("--r", arg_r)->required();
    c_p3->add_option("--j", arg_j)->required();
    c_p3->add_option("--n", arg_n)->required();
    c_p3->add_option("--v", arg_v, "comma list: the set of shifts v")->required();
    c_p3->add_option("--xi", arg_xi);
    c_p3->add_option("--budget", arg_budget);
    c_p3->callback([&] {
        PrimeContext ctx(arg_r);
        const SolutionCount sc = prop3_solution_count(
            ctx, arg_j, static_cast<unsigned>(arg_n), parse_u64_list(arg_v),
            arg_xi, arg_budget, resolve_thread_count(0, 64));
        out["raw_count"] = sc.raw_count;
        out["phase_re"] = sc.phase_weighted.real();
        out["phase_im"] = sc.phase_weighted.imag();
    });

    auto* c_w = c_count->add_subcommand("W", "even-multiplicity tuple count");
    c_w->add_option("--n", arg_n)->required();
    c_w->add_option("--k", arg_k)->required();
    c_w->callback([&] {
        out["W"] = even_multiplicity_count_W(static_cast<unsigned>(arg_n),
                                             static_cast<unsigned>(arg_k));
    });

    auto* c_verify = app.add_subcommand("verify", "single bound-ratio checks");
    c_verify->require_subcommand(1);

    PhaseFlags pf_thm;
    auto* v_thm = c_verify->add_subcommand("thm1", "main bilinear bound");
    v_thm->add_option("--r", arg_r)->required();
    v_thm->add_option("--j", arg_j)->required();
    v_thm->add_option("--n", arg_n);
    v_thm->add_option("--x", arg_x)->required();
    v_thm->add_option("--L", arg_L)->required();
    v_thm->add_option("--A", arg_A);
    v_thm->add_option("--Y", arg_Y)->required();
    v_thm->add_option("--gen", arg_gen);
    v_thm->add_option("--seed", arg_seed);
    v_thm->add_option("--eps", arg_eps);
    add_phase_flags(v_thm, pf_thm);
    v_thm->callback([&] {
        PrimeContext ctx(arg_r);
        const auto support = parse_i64_list(arg_x);
        const CoeffSeq alpha = gen_sequence(arg_gen, support, arg_seed, 0);
        TheoremParams p;
        p.r = arg_r; p.j = arg_j; p.n = static_cast<unsigned>(arg_n);
        p.A = arg_A; p.Y = arg_Y; p.L = arg_L; p.eps = arg_eps;
        p.f = build_phase(pf_thm,
                          static_cast<double>(arg_A) - 2.0 * static_cast<double>(arg_Y));
        const BoundReport rep = check_theorem1(p, ctx, alpha);
        out["lhs"] = rep.lhs;
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
        out["trivial"] = rep.trivial_bound;
        out["lcond_ok"] = rep.flags.lcond_ok;
        out["ycond_ok"] = rep.flags.ycond_ok;
        out["nontrivial"] = rep.flags.nontrivial_region;
    });

    auto* v_cor = c_verify->add_subcommand("cor", "f = 0 corollary bound");
    v_cor->add_option("--r", arg_r)->required();
    v_cor->add_option("--j", arg_j)->required();
    v_cor->add_option("--n", arg_n);
    v_cor->add_option("--x", arg_x)->required();
    v_cor->add_option("--A", arg_A);
    v_cor->add_option("--Y", arg_Y)->required();
    v_cor->add_option("--gen", arg_gen);
    v_cor->add_option("--seed", arg_seed);
    v_cor->add_option("--eps", arg_eps);
    v_cor->callback([&] {
        PrimeContext ctx(arg_r);
        const CoeffSeq alpha = gen_sequence(arg_gen, parse_i64_list(arg_x), arg_seed, 0);
        TheoremParams p;
        p.r = arg_r; p.j = arg_j; p.n = static_cast<unsigned>(arg_n);
        p.A = arg_A; p.Y = arg_Y; p.L = arg_r; p.eps = arg_eps;
        const BoundReport rep = check_corollary(p, ctx, alpha);
        out["lhs"] = rep.lhs;
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
        out["trivial"] = rep.trivial_bound;
        out["ycond_ok"] = rep.flags.ycond_ok;
        out["nontrivial"] = rep.flags.nontrivial_region;
    });

    auto* v_p1 = c_verify->add_subcommand("prop1", "quadratic-residue window density");
    v_p1->add_option("--r", arg_r)->required();
    v_p1->add_option("--U", arg_U)->required();
    v_p1->add_option("--eps", arg_eps);
    v_p1->callback([&] {
        PrimeContext ctx(arg_r);
        const Prop1Report rep = check_prop1(arg_U, ctx, arg_eps);
        out["window_count"] = rep.window_count;
        out["half_u"] = rep.half_u;
        out["char_sum"] = rep.char_sum;
        out["ucond_ok"] = rep.ucond_ok;
    });

    auto* v_p2 = c_verify->add_subcommand("prop2", "nu-table moment bounds");
    v_p2->add_option("--r", arg_r)->required();
    v_p2->add_option("--j", arg_j)->required();
    v_p2->add_option("--x", arg_x)->required();
    v_p2->add_option("--U", arg_U)->required();
    v_p2->add_option("--A", arg_A);
    v_p2->add_option("--Y", arg_Y)->required();
    v_p2->add_option("--gen", arg_gen);
    v_p2->add_option("--seed", arg_seed);
    v_p2->add_option("--eps", arg_eps);
    v_p2->callback([&] {
        PrimeContext ctx(arg_r);
        const CoeffSeq alpha = gen_sequence(arg_gen, parse_i64_list(arg_x), arg_seed, 0);
        const Prop2Report rep = check_prop2(ctx, arg_j, alpha, arg_U, arg_A, arg_Y, arg_eps);
        out["m1"] = rep.m1;
        out["m1_expected"] = rep.m1_expected;
        out["m2"] = rep.m2;
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
        out["window_size"] = rep.window_size;
    });

    auto* v_p3 = c_verify->add_subcommand("prop3", "solution-count bound");
    v_p3->add_option("--r", arg_r)->required();
    v_p3->add_option("--j", arg_j)->required();
    v_p3->add_option("--n", arg_n)->required();
    v_p3->add_option("--V", arg_V, "window bound V")->required();
    v_p3->add_option("--v", arg_v, "comma list: subset of (V/2, V]")->required();
    v_p3->add_option("--xi", arg_xi);
    v_p3->add_option("--budget", arg_budget);
    v_p3->callback([&] {
        PrimeContext ctx(arg_r);
        const Prop3Report rep =
            check_prop3(ctx, arg_j, static_cast<unsigned>(arg_n), arg_V,
                        parse_u64_list(arg_v), arg_xi, arg_budget);
        out["raw_count"] = rep.raw_count;
        out["phase_re"] = rep.phase_weighted.real();
        out["phase_im"] = rep.phase_weighted.imag();
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
    });

    PhaseFlags pf_lem;
    auto* v_lem = c_verify->add_subcommand("lemma1", "pre-energy collision bound");
    v_lem->add_option("--r", arg_r)->required();
    v_lem->add_option("--j", arg_j)->required();
    v_lem->add_option("--L", arg_L)->required();
    v_lem->add_option("--M", arg_M)->required();
    v_lem->add_option("--H", arg_H)->required();
    v_lem->add_option("--gen", arg_gen);
    v_lem->add_option("--seed", arg_seed);
    v_lem->add_option("--eps", arg_eps);
    add_phase_flags(v_lem, pf_lem);
    v_lem->callback([&] {
        PrimeContext ctx(arg_r);
        std::vector<std::int64_t> a_support, b_support;
        for (std::int64_t l = -static_cast<std::int64_t>(arg_L);
             l <= static_cast<std::int64_t>(arg_L); ++l) {
            a_support.push_back(l);
        }
        for (std::uint64_t m = 1; m <= arg_M; ++m) {
            b_support.push_back(static_cast<std::int64_t>(m));
        }
        const CoeffSeq alpha = gen_sequence(arg_gen, a_support, arg_seed, 0);
        const CoeffSeq beta = gen_sequence(arg_gen, b_support, arg_seed, 1);
        const Lemma1Report rep =
            check_lemma1(ctx, arg_j, arg_L, arg_M, arg_H, alpha, beta,
                         build_phase(pf_lem, 1.0), arg_eps);
        out["lhs_sq"] = rep.lhs_sq;
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
        out["A_total"] = rep.a_total;
        out["D"] = rep.D;
    });

    auto* v_ci = c_verify->add_subcommand("cishz", "quadruple congruence bound");
    v_ci->add_option("--r", arg_r)->required();
    v_ci->add_option("--x", arg_x)->required();
    v_ci->add_option("--U", arg_U)->required();
    v_ci->add_option("--eps", arg_eps);
    v_ci->callback([&] {
        PrimeContext ctx(arg_r);
        const auto window = qr_window(arg_U, ctx);
        if (window.empty()) throw InvalidParams("empty quadratic-residue window");
        const CishzReport rep =
            check_cishz(ctx, parse_i64_list(arg_x), window, arg_U, arg_eps);
        out["count"] = rep.count;
        out["rhs"] = rep.rhs;
        out["ratio"] = rep.ratio;
        out["window_size"] = window.size();
    });

    auto* c_sieve = app.add_subcommand("sieve", "large-sieve quantities");
    c_sieve->require_subcommand(1);

    std::int64_t arg_Moff = 0;
    auto* s_lhs = c_sieve->add_subcommand("lhs", "double sum over fractions a/q^2");
    s_lhs->add_option("--Q", arg_Q)->required();
    s_lhs->add_option("--N", arg_N)->required();
    s_lhs->add_option("--M", arg_Moff);
    s_lhs->add_option("--gen", arg_gen);
    s_lhs->add_option("--seed", arg_seed);
    s_lhs->callback([&] {
        std::vector<std::int64_t> support;
        for (std::uint64_t i = 1; i <= arg_N; ++i) {
            support.push_back(arg_Moff + static_cast<std::int64_t>(i));
        }
        SieveSpec spec;
        spec.Q = arg_Q; spec.M = arg_Moff; spec.N = arg_N;
        spec.a = gen_sequence(arg_gen, support, arg_seed, 0);
        out["lhs"] = sieve_lhs(spec);
        out["Z"] = z_norm(spec);
    });

    auto* s_pc = c_sieve->add_subcommand("pcount", "Farey counter P(alpha)");
    s_pc->add_option("--alpha", arg_alpha, "rational, e.g. 1/4")->required();
    s_pc->add_option("--Q", arg_Q)->required();
    s_pc->add_option("--delta", arg_delta, "rational radius")->required();
    s_pc->callback([&] {
        out["count"] = farey_count_P(parse_rat(arg_alpha), arg_Q, parse_rat(arg_delta));
    });

    auto* s_ps = c_sieve->add_subcommand("pscan", "scan P(b/r + z) over the z-range");
    s_ps->add_option("--Q", arg_Q)->required();
    s_ps->add_option("--N", arg_N)->required();
    s_ps->add_option("--rmod", arg_rmod)->required();
    s_ps->add_option("--b", arg_bnum);
    s_ps->add_option("--grid", arg_grid);
    s_ps->callback([&] {
        const PScanReport rep = scan_P_over_ranges(arg_Q, arg_N, arg_rmod, arg_bnum, arg_grid);
        out["max_count"] = rep.max_count;
        out["argmax_num"] = rep.argmax_z.num;
        out["argmax_den"] = rep.argmax_z.den;
        out["sqrtQ"] = rep.q_sqrt;
        out["points"] = rep.points.size();
    });

    int arg_threads = 0;
    auto* c_sweep = app.add_subcommand("sweep", "grid sweep writing a CSV report");
    {
        std::string footer = "CSV columns per target (plus index,...,status,reason):";
        for (SweepTarget t :
             {SweepTarget::Thm1, SweepTarget::Cor, SweepTarget::Prop1,
              SweepTarget::Prop2, SweepTarget::Prop3, SweepTarget::Lemma1,
              SweepTarget::Cishz, SweepTarget::Sieve, SweepTarget::Pscan}) {
            footer += "\n  " + target_name(t) + ":";
            for (const auto& col : sweep_columns(t)) footer += " " + col;
        }
        c_sweep->footer(footer);
    }
    c_sweep->add_option("--config", arg_config, "key = value config file")->required();
    c_sweep->add_option("--out", arg_out, "override the CSV output path");
    c_sweep->add_option("--threads", arg_threads, "override the worker count");
    c_sweep->callback([&] {
        SweepConfig cfg = parse_config_file(arg_config);
        if (!arg_out.empty()) cfg.out = arg_out;
        if (arg_threads > 0) cfg.threads = arg_threads;
        if (cfg.out.empty()) throw InvalidParams("sweep needs an output path ('out' key or --out)");
        const SweepResult result = run_sweep(cfg);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw InvalidParams("cannot write CSV to '" + cfg.out + "'");
        write_csv(cfg, result, file);
        out["target"] = target_name(cfg.target);
        out["rows"] = result.rows.size();
        out["ok"] = result.ok_rows;
        out["skipped"] = result.skipped_rows;
        out["max_ratio"] = result.max_ratio;
        out["c_assert"] = cfg.c_assert;
        out["within_c_assert"] = result.max_ratio <= cfg.c_assert;
        for (const auto& [prime, ratio] : result.max_ratio_by_prime) {
            out["max_ratio_r" + std::to_string(prime)] = ratio;
        }
        out["out"] = cfg.out;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    print_object(out, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
}
