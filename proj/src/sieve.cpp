#include "sqrtsum/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqrtsum {

namespace {

using I128 = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_div128(I128 a, I128 b) {
    I128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div128(I128 a, I128 b) {
    I128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return static_cast<std::int64_t>(q);
}

// Caps keeping every 128-bit intermediate safely in range.
constexpr std::int64_t kRatCap = 1'000'000'000'000LL;  // 1e12
constexpr std::uint64_t kFareyQCap = 100'000;

void check_rat_range(const Rat& x, const char* what) {
    if (std::llabs(x.num) > kRatCap || x.den > kRatCap) {
        throw InvalidParams(std::string(what) +
                            " exceeds the exact-arithmetic range (1e12 cap)");
    }
}

std::vector<std::int64_t> prime_factors(std::uint64_t q) {
    std::vector<std::int64_t> ps;
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            ps.push_back(static_cast<std::int64_t>(p));
            while (q % p == 0) q /= p;
        }
    }
    if (q > 1) ps.push_back(static_cast<std::int64_t>(q));
    return ps;
}

// #{a in [lo, hi] : gcd(a, q) = 1} by inclusion-exclusion over the prime
// factors of q. Handles a <= 0 (gcd(q, 0) = q, so 0 only counts for q = 1).
std::uint64_t coprime_in_range(std::int64_t lo, std::int64_t hi, std::uint64_t q) {
    if (lo > hi) return 0;
    const auto ps = prime_factors(q);
    const std::size_t nsubsets = std::size_t(1) << ps.size();
    std::int64_t total = 0;
    for (std::size_t mask = 0; mask < nsubsets; ++mask) {
        std::int64_t d = 1;
        int sign = 1;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (mask & (std::size_t(1) << i)) {
                d *= ps[i];
                sign = -sign;
            }
        }
        total += sign * (floor_div(hi, d) - floor_div(lo - 1, d));
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace

Rat make_rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidParams("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat{num, den};
}

Rat rat_add(const Rat& a, const Rat& b) {
    check_rat_range(a, "rational");
    check_rat_range(b, "rational");
    const I128 num = I128(a.num) * b.den + I128(b.num) * a.den;
    const I128 den = I128(a.den) * b.den;
    I128 an = num, ad = den;
    bool neg = an < 0;
    if (neg) an = -an;
    // reduce with a 128-bit gcd, then range-check
    I128 x = an, y = ad;
    while (y != 0) {
        I128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        an /= x;
        ad /= x;
    }
    if (an > kRatCap || ad > kRatCap) {
        throw InvalidParams("rational arithmetic overflow");
    }
    return Rat{neg ? -static_cast<std::int64_t>(an) : static_cast<std::int64_t>(an),
               static_cast<std::int64_t>(ad)};
}

Rat rat_sub(const Rat& a, const Rat& b) {
    return rat_add(a, Rat{-b.num, b.den});
}

int rat_cmp(const Rat& a, const Rat& b) {
    const I128 lhs = I128(a.num) * b.den;
    const I128 rhs = I128(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

double rat_to_double(const Rat& a) {
    return static_cast<double>(a.num) / static_cast<double>(a.den);
}

double sieve_lhs(const SieveSpec& s, std::uint64_t budget) {
    if (s.Q < 1 || s.N < 1) throw InvalidParams("sieve spec requires Q, N >= 1");
    for (const auto& [n, w] : s.a.entries()) {
        (void)w;
        if (n <= s.M || n > s.M + static_cast<std::int64_t>(s.N)) {
            throw InvalidParams("coefficient support must lie in (M, M+N]");
        }
    }
    const double cost = std::pow(static_cast<double>(s.Q), 4.0) *
                        static_cast<double>(s.N);
    if (cost > static_cast<double>(budget)) {
        throw BudgetExceeded("sieve_lhs needs ~Q^4 N = " + std::to_string(cost) +
                             " steps, budget is " + std::to_string(budget));
    }

    KahanSum outer;
    for (std::uint64_t q = 1; q <= s.Q; ++q) {
        const std::uint64_t q2 = q * q;
        std::vector<Complex> tab(q2);
        for (std::uint64_t t = 0; t < q2; ++t) {
            tab[t] = unit_phase(static_cast<double>(t) / static_cast<double>(q2));
        }
        for (std::uint64_t a = 1; a <= q2; ++a) {
            if (std::gcd(a, q) != 1) continue;
            KahanSum inner;
            for (const auto& [n, w] : s.a.entries()) {
                std::int64_t t = (n % static_cast<std::int64_t>(q2)) *
                                 static_cast<std::int64_t>(a);
                t %= static_cast<std::int64_t>(q2);
                if (t < 0) t += static_cast<std::int64_t>(q2);
                inner.add(w * tab[static_cast<std::uint64_t>(t)]);
            }
            outer.add(Complex{std::norm(inner.value()), 0.0});
        }
    }
    return outer.value().real();
}

double z_norm(const SieveSpec& s) { return s.a.norm2_sq(); }

std::uint64_t farey_count_P(const Rat& alpha, std::uint64_t Q, const Rat& delta) {
    if (delta.num <= 0) throw InvalidParams("farey_count_P requires delta > 0");
    if (Q < 1 || Q > kFareyQCap) {
        throw InvalidParams("farey_count_P requires 1 <= Q <= 1e5");
    }
    check_rat_range(alpha, "alpha");
    check_rat_range(delta, "delta");

    // Endpoints alpha -+ delta over the common denominator.
    const I128 den = I128(alpha.den) * delta.den;
    const I128 lo_num = I128(alpha.num) * delta.den - I128(delta.num) * alpha.den;
    const I128 hi_num = I128(alpha.num) * delta.den + I128(delta.num) * alpha.den;

    std::uint64_t count = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const I128 q2 = I128(q) * q;
        const std::int64_t a_lo = ceil_div128(q2 * lo_num, den);
        const std::int64_t a_hi = floor_div128(q2 * hi_num, den);
        count += coprime_in_range(a_lo, a_hi, q);
    }
    return count;
}

PScanReport scan_P_over_ranges(std::uint64_t Q, std::uint64_t N, std::uint64_t r,
                               std::int64_t b, std::uint32_t grid_size) {
    if (Q < 1 || N < 1 || r < 1 || grid_size < 1) {
        throw InvalidParams("pscan requires Q, N, r, grid_size >= 1");
    }
    if (std::gcd(static_cast<std::uint64_t>(std::llabs(b)), r) != 1) {
        throw InvalidParams("pscan requires gcd(b, r) = 1");
    }
    const auto k_min = static_cast<std::int64_t>(r);
    const auto k_max = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(N))));
    if (k_min > k_max) {
        throw InvalidParams("z-range [1/N, sqrt(1/N)/r] is empty; need r <= sqrt(N)");
    }

    std::vector<std::int64_t> ks;
    if (grid_size == 1 || k_min == k_max) {
        ks.push_back(k_min);
    } else {
        const double lo = std::log(static_cast<double>(k_min));
        const double hi = std::log(static_cast<double>(k_max));
        for (std::uint32_t i = 0; i < grid_size; ++i) {
            const double t = static_cast<double>(i) / (grid_size - 1);
            auto k = static_cast<std::int64_t>(std::llround(std::exp(lo + t * (hi - lo))));
            k = std::clamp(k, k_min, k_max);
            if (ks.empty() || ks.back() != k) ks.push_back(k);
        }
    }

    const auto nn = static_cast<std::int64_t>(N);
    const auto rr = static_cast<std::int64_t>(r);
    PScanReport rep;
    rep.q_sqrt = std::sqrt(static_cast<double>(Q));
    const Rat delta = make_rat(1, nn);
    for (std::int64_t k : ks) {
        const Rat alpha = make_rat(b * nn + k, nn * rr);
        PScanPoint pt;
        pt.k = k;
        pt.z = make_rat(k, nn * rr);
        pt.count = farey_count_P(alpha, Q, delta);
        if (rep.points.empty() || pt.count > rep.max_count) {
            rep.max_count = pt.count;
            rep.argmax_z = pt.z;
        }
        rep.points.push_back(pt);
    }
    return rep;
}

}  // namespace sqrtsum
