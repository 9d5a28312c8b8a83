#include "sqrtsum/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "sqrtsum/sequences.hpp"

namespace sqrtsum {

namespace {

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }
std::string fmt_i64(std::int64_t v) { return std::to_string(v); }
std::string fmt_bool(bool b) { return b ? "1" : "0"; }

std::uint64_t ceil_pow(double r, double e) {
    return static_cast<std::uint64_t>(std::ceil(std::pow(r, e)));
}

// One grid point; unused fields stay at their defaults for a given target.
struct Task {
    std::uint64_t index = 0;
    std::uint64_t r = 0;
    unsigned n = 1;
    std::string gen;
    std::uint64_t seed = 0;
    std::string phase;
    double xi = 0;
    double u_exp = 0;
    std::uint64_t Q = 0, N = 0, rmod = 0;
    std::int64_t b = 0;
};

std::vector<std::int64_t> to_signed(const std::vector<std::uint64_t>& v) {
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::int64_t>(v[i]);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SweepTarget parse_target(const std::string& name) {
    if (name == "thm1") return SweepTarget::Thm1;
    if (name == "cor") return SweepTarget::Cor;
    if (name == "prop1") return SweepTarget::Prop1;
    if (name == "prop2") return SweepTarget::Prop2;
    if (name == "prop3") return SweepTarget::Prop3;
    if (name == "lemma1") return SweepTarget::Lemma1;
    if (name == "cishz") return SweepTarget::Cishz;
    if (name == "sieve") return SweepTarget::Sieve;
    if (name == "pscan") return SweepTarget::Pscan;
    throw InvalidParams("unknown sweep target '" + name + "'");
}

std::string target_name(SweepTarget t) {
    switch (t) {
        case SweepTarget::Thm1: return "thm1";
        case SweepTarget::Cor: return "cor";
        case SweepTarget::Prop1: return "prop1";
        case SweepTarget::Prop2: return "prop2";
        case SweepTarget::Prop3: return "prop3";
        case SweepTarget::Lemma1: return "lemma1";
        case SweepTarget::Cishz: return "cishz";
        case SweepTarget::Sieve: return "sieve";
        case SweepTarget::Pscan: return "pscan";
    }
    return "?";
}

SweepConfig default_sweep_config(SweepTarget t) {
    SweepConfig cfg;
    cfg.target = t;
    return cfg;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& item : out) {
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
            item.erase(item.begin());
        }
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
            item.pop_back();
        }
    }
    out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidParams("config key '" + key + "': bad integer '" + s + "'");
    }
}

std::int64_t parse_i64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidParams("config key '" + key + "': bad integer '" + s + "'");
    }
}

double parse_f64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidParams("config key '" + key + "': bad number '" + s + "'");
    }
}

template <class T, class Fn>
std::vector<T> parse_list(const std::string& s, const std::string& key, Fn&& one) {
    std::vector<T> out;
    for (const auto& item : split_list(s)) out.push_back(one(item, key));
    if (out.empty()) throw InvalidParams("config key '" + key + "' has no values");
    return out;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg;
    bool have_target = false;
    std::uint64_t prime_min = 0, prime_max = 0;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(std::remove_if(key.begin(), key.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  key.end());
        if (key.empty()) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw InvalidParams("config line " + std::to_string(lineno) +
                                    ": expected 'key = value'");
            }
            continue;
        }
        if (eq == std::string::npos) {
            throw InvalidParams("config line " + std::to_string(lineno) +
                                ": missing '=' after '" + key + "'");
        }
        std::string value = line.substr(eq + 1);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front()))) {
            value.erase(value.begin());
        }
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) {
            value.pop_back();
        }

        if (key == "target") {
            cfg.target = parse_target(value);
            have_target = true;
        } else if (key == "primes") {
            cfg.primes = parse_list<std::uint64_t>(value, key, parse_u64);
        } else if (key == "prime_min") {
            prime_min = parse_u64(value, key);
        } else if (key == "prime_max") {
            prime_max = parse_u64(value, key);
        } else if (key == "n") {
            cfg.ns.clear();
            for (auto v : parse_list<std::uint64_t>(value, key, parse_u64)) {
                cfg.ns.push_back(static_cast<unsigned>(v));
            }
        } else if (key == "gens") {
            cfg.gens = split_list(value);
        } else if (key == "seeds") {
            cfg.seeds = parse_list<std::uint64_t>(value, key, parse_u64);
        } else if (key == "phases") {
            cfg.phases = split_list(value);
        } else if (key == "xi") {
            cfg.xis = parse_list<double>(value, key, parse_f64);
        } else if (key == "eps") {
            cfg.eps = parse_f64(value, key);
        } else if (key == "c_assert") {
            cfg.c_assert = parse_f64(value, key);
        } else if (key == "budget") {
            cfg.budget = parse_u64(value, key);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "x_size") {
            cfg.x_size = parse_u64(value, key);
        } else if (key == "y_size") {
            cfg.y_size = parse_u64(value, key);
        } else if (key == "L") {
            cfg.L = parse_u64(value, key);
        } else if (key == "M") {
            cfg.M = parse_u64(value, key);
        } else if (key == "H") {
            cfg.H = parse_u64(value, key);
        } else if (key == "U") {
            cfg.U = parse_u64(value, key);
        } else if (key == "v_size") {
            cfg.v_size = parse_u64(value, key);
        } else if (key == "A") {
            cfg.A = parse_i64(value, key);
        } else if (key == "Q") {
            cfg.Qs = parse_list<std::uint64_t>(value, key, parse_u64);
        } else if (key == "N") {
            cfg.Ns = parse_list<std::uint64_t>(value, key, parse_u64);
        } else if (key == "rs") {
            cfg.rs = parse_list<std::uint64_t>(value, key, parse_u64);
        } else if (key == "bs") {
            cfg.bs = parse_list<std::int64_t>(value, key, parse_i64);
        } else if (key == "grid_size") {
            cfg.grid_size = static_cast<std::uint32_t>(parse_u64(value, key));
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_u64(value, key));
        } else {
            throw InvalidParams("config line " + std::to_string(lineno) +
                                ": unknown key '" + key + "'");
        }
    }
    if (!have_target) throw InvalidParams("config is missing 'target'");
    if (prime_min != 0 || prime_max != 0) {
        if (prime_min < 3 || prime_max < prime_min ||
            prime_max - prime_min > 1'000'000) {
            throw InvalidParams("bad prime range");
        }
        cfg.primes.clear();
        for (std::uint64_t p = prime_min | 1; p <= prime_max; p += 2) {
            if (is_prime_u64(p)) cfg.primes.push_back(p);
        }
        if (cfg.primes.empty()) throw InvalidParams("prime range contains no primes");
    }
    return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

const std::vector<double> kProp1Exponents = {0.30, 0.45, 0.60};

}  // namespace

std::vector<std::string> sweep_columns(SweepTarget t) {
    switch (t) {
        case SweepTarget::Thm1:
            return {"r", "n", "gen", "seed", "fkind", "j", "L", "X", "Y", "A",
                    "theta", "eps", "norm1", "norm_sup", "lhs", "rhs", "ratio",
                    "trivial", "lcond_ok", "ycond_ok", "nontrivial"};
        case SweepTarget::Cor:
            return {"r", "n", "gen", "seed", "j", "X", "Y", "A", "eps", "norm1",
                    "norm_sup", "lhs", "rhs", "ratio", "trivial", "ycond_ok",
                    "nontrivial"};
        case SweepTarget::Prop1:
            return {"r", "U", "window_count", "half_u", "char_sum", "ucond_ok",
                    "ratio"};
        case SweepTarget::Prop2:
            return {"r", "gen", "seed", "j", "U", "window_size", "X", "Y", "A",
                    "eps", "m1", "m1_expected", "m2", "rhs", "ratio"};
        case SweepTarget::Prop3:
            return {"r", "n", "seed", "j", "V", "v_size", "xi", "raw",
                    "phase_re", "phase_im", "rhs", "ratio"};
        case SweepTarget::Lemma1:
            return {"r", "gen", "seed", "j", "L", "M", "H", "eps", "alpha_norm2_sq",
                    "beta_sup", "lhs_sq", "A_total", "D", "rhs", "ratio"};
        case SweepTarget::Cishz:
            return {"r", "seed", "X", "U", "window_size", "count", "rhs", "ratio"};
        case SweepTarget::Sieve:
            return {"Q", "N", "M", "seed", "Z", "lhs", "rhs", "ratio"};
        case SweepTarget::Pscan:
            return {"Q", "N", "rmod", "b", "grid_size", "max_count",
                    "argmax_num", "argmax_den", "sqrtQ", "ratio"};
    }
    return {};
}

namespace {

std::vector<Task> build_grid(const SweepConfig& cfg) {
    std::vector<Task> tasks;
    auto push = [&tasks](Task t) {
        t.index = tasks.size();
        tasks.push_back(std::move(t));
    };

    switch (cfg.target) {
        case SweepTarget::Thm1:
            for (auto r : cfg.primes)
                for (auto n : cfg.ns)
                    for (const auto& gen : cfg.gens)
                        for (auto seed : cfg.seeds)
                            for (const auto& ph : cfg.phases) {
                                Task t;
                                t.r = r; t.n = n; t.gen = gen; t.seed = seed; t.phase = ph;
                                push(std::move(t));
                            }
            break;
        case SweepTarget::Cor:
            for (auto r : cfg.primes)
                for (auto n : cfg.ns)
                    for (const auto& gen : cfg.gens)
                        for (auto seed : cfg.seeds) {
                            Task t;
                            t.r = r; t.n = n; t.gen = gen; t.seed = seed;
                            push(std::move(t));
                        }
            break;
        case SweepTarget::Prop1:
            for (auto r : cfg.primes)
                for (double e : kProp1Exponents) {
                    Task t;
                    t.r = r; t.u_exp = e;
                    push(std::move(t));
                }
            break;
        case SweepTarget::Prop2:
        case SweepTarget::Lemma1:
            for (auto r : cfg.primes)
                for (const auto& gen : cfg.gens)
                    for (auto seed : cfg.seeds) {
                        Task t;
                        t.r = r; t.gen = gen; t.seed = seed;
                        push(std::move(t));
                    }
            break;
        case SweepTarget::Prop3:
            for (auto r : cfg.primes)
                for (auto n : cfg.ns)
                    for (double xi : cfg.xis)
                        for (auto seed : cfg.seeds) {
                            Task t;
                            t.r = r; t.n = n; t.xi = xi; t.seed = seed;
                            push(std::move(t));
                        }
            break;
        case SweepTarget::Cishz:
            for (auto r : cfg.primes)
                for (auto seed : cfg.seeds) {
                    Task t;
                    t.r = r; t.seed = seed;
                    push(std::move(t));
                }
            break;
        case SweepTarget::Sieve:
            for (auto Q : cfg.Qs)
                for (auto N : cfg.Ns)
                    for (auto seed : cfg.seeds) {
                        Task t;
                        t.Q = Q; t.N = N; t.seed = seed;
                        push(std::move(t));
                    }
            break;
        case SweepTarget::Pscan:
            for (auto Q : cfg.Qs)
                for (auto N : cfg.Ns)
                    for (auto rmod : cfg.rs)
                        for (auto b : cfg.bs) {
                            Task t;
                            t.Q = Q; t.N = N; t.rmod = rmod; t.b = b;
                            push(std::move(t));
                        }
            break;
    }
    return tasks;
}

void run_task(const SweepConfig& cfg, const Task& task, SweepRow& row) {
    auto& v = row.values;
    const double eps = cfg.eps;

    switch (cfg.target) {
        case SweepTarget::Thm1: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t L = cfg.L ? cfg.L : ceil_pow(rd, 0.5);
            const std::uint64_t X = std::min<std::uint64_t>(
                cfg.x_size ? cfg.x_size : ceil_pow(rd, 0.25), L);
            const std::uint64_t Y = std::min<std::uint64_t>(
                cfg.y_size ? cfg.y_size : ceil_pow(rd, 0.8), r - 1);
            CounterRng rng(task.seed, task.index, 10);
            PrimeContext ctx(r);
            const auto x_set = to_signed(sample_distinct(rng, 1, L, X));
            const std::uint64_t j = rng.next_in(1, r - 1);
            double theta = 0.0;
            if (task.phase == "linear") {
                theta = 0.5 / (static_cast<double>(L) *
                               std::pow(rd, 1.0 / task.n + 0.25 + eps));
            } else if (task.phase != "zero") {
                throw InvalidParams("thm1 phase must be zero or linear");
            }
            TheoremParams p;
            p.r = r; p.j = static_cast<std::int64_t>(j); p.n = task.n;
            p.A = cfg.A; p.Y = Y; p.L = L;
            p.f = theta != 0.0 ? PhaseFn::linear(theta) : PhaseFn::zero();
            p.eps = eps; p.c_assert = cfg.c_assert;
            const CoeffSeq alpha = gen_sequence(task.gen, x_set, task.seed, task.index);

            v = {fmt_u64(r), fmt_u64(task.n), task.gen, fmt_u64(task.seed),
                 task.phase, fmt_u64(j), fmt_u64(L), fmt_u64(X), fmt_u64(Y),
                 fmt_i64(cfg.A), format_double(theta), format_double(eps),
                 format_double(alpha.norm1()), format_double(alpha.norm_sup())};
            const BoundReport rep = check_theorem1(p, ctx, alpha);
            v.push_back(format_double(rep.lhs));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            v.push_back(format_double(rep.trivial_bound));
            v.push_back(fmt_bool(rep.flags.lcond_ok));
            v.push_back(fmt_bool(rep.flags.ycond_ok));
            v.push_back(fmt_bool(rep.flags.nontrivial_region));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Cor: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t X = std::min<std::uint64_t>(
                cfg.x_size ? cfg.x_size : ceil_pow(rd, 0.25), r - 1);
            const std::uint64_t Y = std::min<std::uint64_t>(
                cfg.y_size ? cfg.y_size : ceil_pow(rd, 0.8), r - 1);
            CounterRng rng(task.seed, task.index, 11);
            PrimeContext ctx(r);
            const auto x_set = to_signed(sample_distinct(rng, 1, r - 1, X));
            const std::uint64_t j = rng.next_in(1, r - 1);
            TheoremParams p;
            p.r = r; p.j = static_cast<std::int64_t>(j); p.n = task.n;
            p.A = cfg.A; p.Y = Y; p.L = r;
            p.eps = eps; p.c_assert = cfg.c_assert;
            const CoeffSeq alpha = gen_sequence(task.gen, x_set, task.seed, task.index);

            v = {fmt_u64(r), fmt_u64(task.n), task.gen, fmt_u64(task.seed),
                 fmt_u64(j), fmt_u64(X), fmt_u64(Y), fmt_i64(cfg.A),
                 format_double(eps), format_double(alpha.norm1()),
                 format_double(alpha.norm_sup())};
            const BoundReport rep = check_corollary(p, ctx, alpha);
            v.push_back(format_double(rep.lhs));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            v.push_back(format_double(rep.trivial_bound));
            v.push_back(fmt_bool(rep.flags.ycond_ok));
            v.push_back(fmt_bool(rep.flags.nontrivial_region));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Prop1: {
            const std::uint64_t r = task.r;
            const std::uint64_t U =
                cfg.U ? cfg.U : ceil_pow(static_cast<double>(r), task.u_exp);
            PrimeContext ctx(r);
            v = {fmt_u64(r), fmt_u64(U)};
            const Prop1Report rep = check_prop1(U, ctx, eps);
            const double ratio = static_cast<double>(rep.window_count) /
                                 static_cast<double>(U);
            v.push_back(fmt_u64(rep.window_count));
            v.push_back(format_double(rep.half_u));
            v.push_back(fmt_i64(rep.char_sum));
            v.push_back(fmt_bool(rep.ucond_ok));
            v.push_back(format_double(ratio));
            row.ratio = ratio;
            break;
        }
        case SweepTarget::Prop2: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t U = cfg.U ? cfg.U : ceil_pow(rd, 0.55);
            const std::uint64_t X = std::min<std::uint64_t>(
                cfg.x_size ? cfg.x_size : ceil_pow(rd, 0.25), r - 1);
            const std::uint64_t Y = std::min<std::uint64_t>(
                cfg.y_size ? cfg.y_size : ceil_pow(rd, 0.5), r - 1);
            CounterRng rng(task.seed, task.index, 12);
            PrimeContext ctx(r);
            const auto x_set = to_signed(sample_distinct(rng, 1, r - 1, X));
            const std::uint64_t j = rng.next_in(1, r - 1);
            const CoeffSeq alpha = gen_sequence(task.gen, x_set, task.seed, task.index);
            v = {fmt_u64(r), task.gen, fmt_u64(task.seed), fmt_u64(j), fmt_u64(U)};
            const Prop2Report rep = check_prop2(ctx, static_cast<std::int64_t>(j),
                                                alpha, U, cfg.A, Y, eps);
            v.push_back(fmt_u64(rep.window_size));
            v.push_back(fmt_u64(X));
            v.push_back(fmt_u64(Y));
            v.push_back(fmt_i64(cfg.A));
            v.push_back(format_double(eps));
            v.push_back(format_double(rep.m1));
            v.push_back(format_double(rep.m1_expected));
            v.push_back(format_double(rep.m2));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Prop3: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t V = ceil_pow(rd, 1.0 / task.n);
            const std::uint64_t lo = V / 2 + 1;
            const std::uint64_t span = V >= lo ? V - lo + 1 : 0;
            const std::uint64_t want =
                cfg.v_size ? cfg.v_size : (task.n <= 2 ? 3 : 2);
            const std::uint64_t size = std::min<std::uint64_t>(want, span);
            if (size == 0) throw InvalidParams("prop3 window (V/2, V] is empty");
            CounterRng rng(task.seed, task.index, 13);
            PrimeContext ctx(r);
            const auto v_subset = sample_distinct(rng, lo, V, size);
            const std::uint64_t j = rng.next_in(1, r - 1);
            v = {fmt_u64(r), fmt_u64(task.n), fmt_u64(task.seed), fmt_u64(j),
                 fmt_u64(V), fmt_u64(size), format_double(task.xi)};
            const Prop3Report rep =
                check_prop3(ctx, static_cast<std::int64_t>(j), task.n, V,
                            v_subset, task.xi, cfg.budget);
            v.push_back(fmt_u64(rep.raw_count));
            v.push_back(format_double(rep.phase_weighted.real()));
            v.push_back(format_double(rep.phase_weighted.imag()));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Lemma1: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t L = cfg.L ? cfg.L : ceil_pow(rd, 0.25);
            const std::uint64_t M = cfg.M ? cfg.M : r / 2;
            const std::uint64_t H = std::min<std::uint64_t>(cfg.H ? cfg.H : L, M);
            CounterRng rng(task.seed, task.index, 14);
            PrimeContext ctx(r);
            const std::uint64_t j = rng.next_in(1, r - 1);
            std::vector<std::int64_t> a_support;
            for (std::int64_t l = -static_cast<std::int64_t>(L);
                 l <= static_cast<std::int64_t>(L); ++l) {
                a_support.push_back(l);
            }
            std::vector<std::int64_t> b_support;
            for (std::uint64_t m = 1; m <= M; ++m) {
                b_support.push_back(static_cast<std::int64_t>(m));
            }
            const CoeffSeq alpha =
                gen_sequence(task.gen, a_support, task.seed, 2 * task.index);
            const CoeffSeq beta =
                gen_sequence(task.gen, b_support, task.seed, 2 * task.index + 1);
            v = {fmt_u64(r), task.gen, fmt_u64(task.seed), fmt_u64(j),
                 fmt_u64(L), fmt_u64(M), fmt_u64(H), format_double(eps),
                 format_double(alpha.norm2_sq()), format_double(beta.norm_sup())};
            const Lemma1Report rep =
                check_lemma1(ctx, static_cast<std::int64_t>(j), L, M, H, alpha,
                             beta, PhaseFn::zero(), eps);
            v.push_back(format_double(rep.lhs_sq));
            v.push_back(fmt_u64(rep.a_total));
            v.push_back(fmt_u64(rep.D));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Cishz: {
            const std::uint64_t r = task.r;
            const double rd = static_cast<double>(r);
            const std::uint64_t U = cfg.U ? cfg.U : ceil_pow(rd, 0.55);
            const std::uint64_t X = std::min<std::uint64_t>(
                cfg.x_size ? cfg.x_size : ceil_pow(rd, 0.25), r - 1);
            CounterRng rng(task.seed, task.index, 15);
            PrimeContext ctx(r);
            const auto x_set = to_signed(sample_distinct(rng, 1, r - 1, X));
            const auto window = qr_window(U, ctx);
            v = {fmt_u64(r), fmt_u64(task.seed), fmt_u64(X), fmt_u64(U),
                 fmt_u64(window.size())};
            if (window.empty()) throw InvalidParams("empty quadratic-residue window");
            const CishzReport rep = check_cishz(ctx, x_set, window, U, eps);
            v.push_back(fmt_u64(rep.count));
            v.push_back(format_double(rep.rhs));
            v.push_back(format_double(rep.ratio));
            row.ratio = rep.ratio;
            break;
        }
        case SweepTarget::Sieve: {
            const std::uint64_t Q = task.Q;
            const std::uint64_t N = task.N;
            std::vector<std::int64_t> support;
            for (std::uint64_t m = 1; m <= N; ++m) {
                support.push_back(static_cast<std::int64_t>(m));
            }
            SieveSpec spec;
            spec.Q = Q; spec.M = 0; spec.N = N;
            spec.a = gen_sequence("unit_phase", support, task.seed, task.index);
            v = {fmt_u64(Q), fmt_u64(N), fmt_i64(spec.M), fmt_u64(task.seed)};
            const double Z = z_norm(spec);
            const double lhs = sieve_lhs(spec);
            const double Qd = static_cast<double>(Q);
            const double Nd = static_cast<double>(N);
            const double rhs = std::pow(Qd * Nd, eps) *
                               (Qd * Qd * Qd + Nd +
                                std::min(Qd * Qd * std::sqrt(Nd),
                                         std::sqrt(Qd) * Nd)) *
                               Z;
            const double ratio = rhs > 0 ? lhs / rhs : 0.0;
            v.push_back(format_double(Z));
            v.push_back(format_double(lhs));
            v.push_back(format_double(rhs));
            v.push_back(format_double(ratio));
            row.ratio = ratio;
            break;
        }
        case SweepTarget::Pscan: {
            v = {fmt_u64(task.Q), fmt_u64(task.N), fmt_u64(task.rmod),
                 fmt_i64(task.b), fmt_u64(cfg.grid_size)};
            const PScanReport rep = scan_P_over_ranges(task.Q, task.N, task.rmod,
                                                       task.b, cfg.grid_size);
            const double ratio = static_cast<double>(rep.max_count) / rep.q_sqrt;
            v.push_back(fmt_u64(rep.max_count));
            v.push_back(fmt_i64(rep.argmax_z.num));
            v.push_back(fmt_i64(rep.argmax_z.den));
            v.push_back(format_double(rep.q_sqrt));
            v.push_back(format_double(ratio));
            row.ratio = ratio;
            break;
        }
    }
    row.ok = true;
}

}  // namespace

int resolve_thread_count(int requested, std::size_t tasks) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("SQRTSUM_THREADS")) {
            char* end = nullptr;
            long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed >= 1) {
                t = static_cast<int>(parsed);
            } else {
                throw InvalidParams("SQRTSUM_THREADS must be an integer >= 1");
            }
        }
    }
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t <= 0) t = 1;
    if (tasks > 0 && static_cast<std::size_t>(t) > tasks) {
        t = static_cast<int>(tasks);
    }
    return t;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    const std::vector<Task> tasks = build_grid(cfg);
    SweepResult result;
    result.columns = sweep_columns(cfg.target);
    result.rows.resize(tasks.size());

    const int nthreads = resolve_thread_count(cfg.threads, tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            SweepRow& row = result.rows[i];
            row.index = tasks[i].index;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                run_task(cfg, tasks[i], row);
            } catch (const Error& e) {
                row.ok = false;
                row.reason = e.code() + std::string(": ") + e.what();
                std::replace(row.reason.begin(), row.reason.end(), ',', ';');
                std::replace(row.reason.begin(), row.reason.end(), '\n', ' ');
            }
            row.values.resize(result.columns.size());
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::map<std::uint64_t, double> by_prime;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const SweepRow& row = result.rows[i];
        if (row.ok) {
            ++result.ok_rows;
            result.max_ratio = std::max(result.max_ratio, row.ratio);
            if (tasks[i].r != 0) {
                auto [it, inserted] = by_prime.try_emplace(tasks[i].r, row.ratio);
                if (!inserted) it->second = std::max(it->second, row.ratio);
            }
        } else {
            ++result.skipped_rows;
        }
    }
    result.max_ratio_by_prime.assign(by_prime.begin(), by_prime.end());
    return result;
}

void write_csv(const SweepConfig& cfg, const SweepResult& result, std::ostream& os) {
    os << "# schema=1\n";
    os << "# target=" << target_name(cfg.target) << "\n";
    os << "index";
    for (const auto& col : result.columns) os << ',' << col;
    os << ",status,reason\n";
    for (const auto& row : result.rows) {
        os << row.index;
        for (const auto& cell : row.values) os << ',' << cell;
        os << ',' << (row.ok ? "ok" : "skipped") << ',' << row.reason << "\n";
    }
}

std::string csv_string(const SweepConfig& cfg, const SweepResult& result) {
    std::ostringstream os;
    write_csv(cfg, result, os);
    return os.str();
}

}  // namespace sqrtsum
