#include "sqrtsum/counting.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace sqrtsum {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double NuTable::at(std::uint64_t lambda, std::uint64_t mu) const {
    lambda %= r_;
    mu %= r_;
    if (dense_ready()) return dense_[lambda * r_ + mu];
    auto it = sparse_.find(lambda * r_ + mu);
    return it == sparse_.end() ? 0.0 : it->second;
}

std::size_t NuTable::nonzero_cells() const {
    if (!dense_ready()) return sparse_.size();
    std::size_t n = 0;
    for (double v : dense_) {
        if (v != 0.0) ++n;
    }
    return n;
}

void NuTable::add(std::uint64_t lambda, std::uint64_t mu, double w) {
    if (dense_ready()) {
        dense_[lambda * r_ + mu] += w;
    } else {
        sparse_[lambda * r_ + mu] += w;
    }
}

NuTable build_nu(const PrimeContext& ctx, std::int64_t j, const CoeffSeq& alpha,
                 const std::vector<std::uint64_t>& u_window, std::int64_t A,
                 std::uint64_t Y) {
    (void)j;  // provenance only; nu itself does not involve j
    const std::uint64_t r = ctx.modulus();
    if (Y < 1 || Y >= r) throw InvalidParams("build_nu requires 1 <= Y < r");
    for (std::uint64_t u : u_window) {
        if (ctx.legendre(static_cast<std::int64_t>(u)) != 1) {
            throw NotAResidue("u_window element " + std::to_string(u) +
                              " is not a nonzero quadratic residue mod " +
                              std::to_string(r));
        }
    }
    for (const auto& [l, w] : alpha.entries()) {
        (void)w;
        if (ctx.reduce(l) == 0) {
            throw InvalidParams("alpha support must avoid 0 mod r");
        }
    }

    NuTable table;
    table.r_ = r;
    table.A_ = A;
    table.Y_ = Y;
    table.x_size_ = alpha.size();
    table.u_size_ = u_window.size();
    if (r <= NuTable::kDenseLimit) table.dense_.assign(r * r, 0.0);

    const std::int64_t m_lo = A - static_cast<std::int64_t>(Y);
    const std::int64_t m_hi = A + 2 * static_cast<std::int64_t>(Y);
    for (std::uint64_t u : u_window) {
        const std::uint64_t s = fixed_root(u % r, ctx);
        const std::uint64_t uinv = ctx.inverse(u % r);
        for (const auto& [l, w] : alpha.entries()) {
            const std::uint64_t lambda = ctx.mul(s, ctx.reduce(l));
            const double aw = std::abs(w);
            for (std::int64_t m = m_lo; m <= m_hi; ++m) {
                table.add(lambda, ctx.mul(uinv, ctx.reduce(m)), aw);
            }
        }
    }
    return table;
}

NuMoments nu_moments(const NuTable& table) {
    NuMoments out;
    table.for_each_nonzero([&](std::uint64_t, std::uint64_t, double v) {
        out.m1 += v;
        out.m2 += v * v;
    });
    return out;
}

std::uint64_t quad_congruence_count(const PrimeContext& ctx,
                                    const std::vector<std::int64_t>& x_set,
                                    const std::vector<std::uint64_t>& u_window) {
    if (x_set.empty() || u_window.empty()) {
        throw InvalidParams("quad_congruence_count needs nonempty sets");
    }
    std::unordered_map<std::uint64_t, std::uint64_t> buckets;
    buckets.reserve(x_set.size() * u_window.size());
    for (std::int64_t l : x_set) {
        const std::uint64_t lr = ctx.reduce(l);
        if (lr == 0) throw InvalidParams("x_set elements must be nonzero mod r");
        const std::uint64_t l2 = ctx.mul(lr, lr);
        for (std::uint64_t u : u_window) {
            const std::uint64_t ur = u % ctx.modulus();
            if (ur == 0) throw InvalidParams("u_window elements must be nonzero mod r");
            ++buckets[ctx.mul(ur, l2)];
        }
    }
    std::uint64_t total = 0;
    for (const auto& [val, cnt] : buckets) {
        (void)val;
        total += cnt * cnt;
    }
    return total;
}

namespace {

// Root sets of j*m for m = 1..M, stored flat: count in [0,2] plus the roots.
struct RootTable {
    std::vector<std::uint8_t> count;
    std::vector<std::array<std::uint64_t, 2>> roots;
};

RootTable root_table(const PrimeContext& ctx, std::uint64_t jr, std::uint64_t M) {
    RootTable t;
    t.count.resize(M + 1, 0);
    t.roots.resize(M + 1);
    for (std::uint64_t m = 1; m <= M; ++m) {
        auto rs = all_sqrts(static_cast<std::int64_t>(ctx.mul(jr, m % ctx.modulus())), ctx);
        t.count[m] = static_cast<std::uint8_t>(rs.size());
        for (std::size_t i = 0; i < rs.size(); ++i) t.roots[m][i] = rs[i];
    }
    return t;
}

std::vector<std::uint64_t> collision_histogram(const PrimeContext& ctx,
                                               std::int64_t j, std::uint64_t M,
                                               std::uint64_t H) {
    const std::uint64_t r = ctx.modulus();
    if (H < 1 || H > M || M > r / 2) {
        throw RangeError("collision counts require 1 <= H <= M <= r/2");
    }
    const std::uint64_t jr = ctx.reduce(j);
    if (jr == 0) throw BadJ("j must be coprime to r");
    const RootTable rt = root_table(ctx, jr, M);

    std::vector<std::uint64_t> hist(r, 0);
    for (std::uint64_t m1 = 1; m1 <= M; ++m1) {
        if (rt.count[m1] == 0) continue;
        const std::uint64_t lo = m1 > H ? m1 - H : 1;
        const std::uint64_t hi = std::min(M, m1 + H);
        for (std::uint64_t m2 = lo; m2 <= hi; ++m2) {
            for (std::uint8_t i = 0; i < rt.count[m1]; ++i) {
                const std::uint64_t k1 = rt.roots[m1][i];
                for (std::uint8_t l = 0; l < rt.count[m2]; ++l) {
                    const std::uint64_t k2 = rt.roots[m2][l];
                    ++hist[k1 >= k2 ? k1 - k2 : k1 + r - k2];
                }
            }
        }
    }
    return hist;
}

}  // namespace

std::uint64_t collision_count_A(const PrimeContext& ctx, std::int64_t j,
                                std::uint64_t M, std::uint64_t H,
                                std::int64_t d) {
    return collision_histogram(ctx, j, M, H)[ctx.reduce(d)];
}

CollisionAggregate collision_aggregate(const PrimeContext& ctx, std::int64_t j,
                                       std::uint64_t M, std::uint64_t H,
                                       std::uint64_t L, double eps) {
    if (L < 1) throw InvalidParams("collision_aggregate requires L >= 1");
    const std::uint64_t r = ctx.modulus();
    const double d_real = 2.0 * std::pow(static_cast<double>(r), 1.0 + eps) /
                          static_cast<double>(L);
    if (!(d_real < 9e18)) {
        throw InvalidParams("D = 2 r^(1+eps)/L too large to enumerate");
    }

    CollisionAggregate agg;
    agg.D = static_cast<std::uint64_t>(d_real);
    agg.per_residue = collision_histogram(ctx, j, M, H);

    const auto D = static_cast<std::int64_t>(agg.D);
    const auto ri = static_cast<std::int64_t>(r);
    unsigned __int128 total = 0;
    for (std::uint64_t c = 0; c < r; ++c) {
        // #{d in [-D, D] : d = c mod r}
        const auto ci = static_cast<std::int64_t>(c);
        const std::int64_t mult =
            floor_div(D - ci, ri) + floor_div(D + ci, ri) + 1;
        if (mult <= 0) continue;
        total += static_cast<unsigned __int128>(mult) * agg.per_residue[c];
    }
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidParams("collision aggregate overflows 64 bits");
    }
    agg.total = static_cast<std::uint64_t>(total);
    return agg;
}

namespace {

// One worker's scratch state for the 2n-fold congruence enumeration.
struct CongruenceScan {
    const PrimeContext& ctx;
    std::uint64_t jr;
    unsigned n;
    const std::vector<std::uint64_t>& v_set;
    double xi;

    std::vector<std::size_t> digits;
    std::vector<std::uint8_t> rcount;
    std::vector<std::array<std::uint64_t, 2>> rvals;
    std::vector<std::uint64_t> left, right;

    CongruenceScan(const PrimeContext& c, std::uint64_t j, unsigned nn,
                   const std::vector<std::uint64_t>& vs, double x)
        : ctx(c), jr(j), n(nn), v_set(vs), xi(x), digits(2 * nn, 0),
          rcount(vs.size()), rvals(vs.size()) {
        left.reserve(std::size_t(1) << n);
        right.reserve(std::size_t(1) << n);
    }

    void expand_half(unsigned lo, unsigned hi, std::vector<std::uint64_t>& out) {
        const std::uint64_t r = ctx.modulus();
        out.clear();
        out.push_back(0);
        for (unsigned i = lo; i < hi; ++i) {
            const std::size_t vi = digits[i];
            const std::uint8_t c = rcount[vi];
            if (c == 0) {
                out.clear();
                return;
            }
            const std::size_t sz = out.size();
            if (c == 1) {
                for (std::size_t t = 0; t < sz; ++t) {
                    std::uint64_t s = out[t] + rvals[vi][0];
                    out[t] = s >= r ? s - r : s;
                }
            } else {
                out.resize(2 * sz);
                for (std::size_t t = 0; t < sz; ++t) {
                    std::uint64_t s0 = out[t] + rvals[vi][0];
                    std::uint64_t s1 = out[t] + rvals[vi][1];
                    out[t] = s0 >= r ? s0 - r : s0;
                    out[sz + t] = s1 >= r ? s1 - r : s1;
                }
            }
        }
    }

    SolutionCount run(std::uint64_t mu_lo, std::uint64_t mu_hi) {
        const std::uint64_t r = ctx.modulus();
        const unsigned width = 2 * n;
        const std::size_t vn = v_set.size();
        std::uint64_t raw = 0;
        KahanSum phase;
        for (std::uint64_t mu = mu_lo; mu < mu_hi; ++mu) {
            for (std::size_t vi = 0; vi < vn; ++vi) {
                const std::uint64_t s = ctx.mul(
                    jr, ctx.reduce(static_cast<std::int64_t>(mu) -
                                   static_cast<std::int64_t>(v_set[vi] % r)));
                auto rs = all_sqrts(static_cast<std::int64_t>(s), ctx);
                rcount[vi] = static_cast<std::uint8_t>(rs.size());
                for (std::size_t i = 0; i < rs.size(); ++i) rvals[vi][i] = rs[i];
            }

            std::fill(digits.begin(), digits.end(), 0);
            while (true) {
                expand_half(0, n, left);
                if (!left.empty()) {
                    expand_half(n, width, right);
                    if (!right.empty()) {
                        std::uint64_t matches = 0;
                        for (std::uint64_t ls : left) {
                            for (std::uint64_t rs : right) {
                                if (ls == rs) ++matches;
                            }
                        }
                        if (matches != 0) {
                            raw += matches;
                            double dv = 0;
                            for (unsigned i = 0; i < n; ++i) {
                                dv += static_cast<double>(v_set[digits[i]]);
                            }
                            for (unsigned i = n; i < width; ++i) {
                                dv -= static_cast<double>(v_set[digits[i]]);
                            }
                            phase.add(static_cast<double>(matches) *
                                      unit_phase(xi * dv));
                        }
                    }
                }
                unsigned pos = 0;
                while (pos < width && ++digits[pos] == vn) {
                    digits[pos] = 0;
                    ++pos;
                }
                if (pos == width) break;
            }
        }
        return SolutionCount{raw, phase.value()};
    }
};

}  // namespace

SolutionCount prop3_solution_count(const PrimeContext& ctx, std::int64_t j,
                                   unsigned n,
                                   const std::vector<std::uint64_t>& v_set,
                                   double xi, std::uint64_t budget, int threads) {
    if (n < 1) throw InvalidParams("prop3_solution_count requires n >= 1");
    if (v_set.empty()) throw InvalidParams("v_set must be nonempty");
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t jr = ctx.reduce(j);
    if (jr == 0) throw BadJ("j must be coprime to r");

    const std::size_t vn = v_set.size();
    double steps = std::pow(static_cast<double>(vn), 2.0 * n) * static_cast<double>(r);
    if (steps > static_cast<double>(budget)) {
        throw BudgetExceeded("prop3 enumeration needs ~" + std::to_string(steps) +
                             " steps, budget is " + std::to_string(budget));
    }

    // Chunk boundaries are a function of r alone, never of the thread
    // count; merging in chunk order keeps the result schedule-independent.
    const std::uint64_t chunks = std::min<std::uint64_t>(r, 64);
    std::vector<SolutionCount> partial(chunks);
    auto bound = [&](std::uint64_t i) { return r * i / chunks; };

    const int workers =
        std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
    if (workers == 1) {
        CongruenceScan scan(ctx, jr, n, v_set, xi);
        for (std::uint64_t i = 0; i < chunks; ++i) {
            partial[i] = scan.run(bound(i), bound(i + 1));
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            CongruenceScan scan(ctx, jr, n, v_set, xi);
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= chunks) break;
                partial[i] = scan.run(bound(i), bound(i + 1));
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SolutionCount total;
    KahanSum phase;
    for (const SolutionCount& part : partial) {
        total.raw_count += part.raw_count;
        phase.add(part.phase_weighted);
    }
    total.phase_weighted = phase.value();
    return total;
}

namespace {

std::uint64_t factorial_u64(unsigned m) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
}

}  // namespace

std::uint64_t even_multiplicity_count_W(unsigned n, unsigned k) {
    if (n < 1 || n > 6 || k < 1 || k > 12) {
        throw RangeError("even_multiplicity_count_W requires 1 <= n <= 6, 1 <= k <= 12");
    }
    const std::uint64_t fact2n = factorial_u64(2 * n);
    std::uint64_t total = 0;
    std::vector<unsigned> parts;

    // Enumerate partitions n = c_1 + ... + c_w with c_1 <= ... <= c_w. Each
    // gives tuples whose value-multiplicities are the multiset {2 c_i}; the
    // multinomial splits positions into the blocks, the falling factorial
    // assigns distinct values, and the repeated-size factorials undo the
    // overcount from permuting equal-sized blocks.
    auto emit = [&]() {
        const unsigned w = static_cast<unsigned>(parts.size());
        if (w > k) return;
        std::uint64_t ways = fact2n;
        for (unsigned c : parts) ways /= factorial_u64(2 * c);
        unsigned run = 1;
        for (std::size_t i = 1; i <= parts.size(); ++i) {
            if (i < parts.size() && parts[i] == parts[i - 1]) {
                ++run;
            } else {
                ways /= factorial_u64(run);
                run = 1;
            }
        }
        std::uint64_t falling = 1;
        for (unsigned i = 0; i < w; ++i) falling *= (k - i);
        total += ways * falling;
    };

    auto recurse = [&](auto&& self, unsigned remaining, unsigned min_part) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        for (unsigned c = min_part; c <= remaining; ++c) {
            parts.push_back(c);
            self(self, remaining - c, c);
            parts.pop_back();
        }
    };
    recurse(recurse, n, 1);
    return total;
}

}  // namespace sqrtsum
