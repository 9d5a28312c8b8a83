// Independent brute-force oracles used to freeze expected values. These
// deliberately avoid the library's evaluation paths: plain loops, plain
// std::complex accumulation, their own modular arithmetic.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % r);
}

inline std::uint64_t reduce(std::int64_t a, std::uint64_t r) {
    std::int64_t m = a % static_cast<std::int64_t>(r);
    if (m < 0) m += static_cast<std::int64_t>(r);
    return static_cast<std::uint64_t>(m);
}

inline Complex e_frac(double x) {
    return std::exp(Complex(0.0, 2.0 * std::numbers::pi * x));
}

inline Complex e_mod(std::uint64_t k, std::uint64_t r) {
    return e_frac(static_cast<double>(k % r) / static_cast<double>(r));
}

// Brute-force root collection: every k in [0, r) with k^2 = s mod r.
inline std::vector<std::uint64_t> sqrts(std::int64_t s, std::uint64_t r) {
    std::vector<std::uint64_t> out;
    const std::uint64_t sv = reduce(s, r);
    for (std::uint64_t k = 0; k < r; ++k) {
        if (mulmod(k, k, r) == sv) out.push_back(k);
    }
    return out;
}

inline int legendre(std::int64_t a, std::uint64_t r) {
    const std::uint64_t av = reduce(a, r);
    if (av == 0) return 0;
    for (std::uint64_t k = 1; k < r; ++k) {
        if (mulmod(k, k, r) == av) return 1;
    }
    return -1;
}

// Direct triple-loop bilinear sum over a support set, interval (A, A+Y].
inline Complex bilinear_set_sum(
    std::uint64_t r, std::int64_t j,
    const std::vector<std::pair<std::int64_t, Complex>>& alpha, std::int64_t A,
    std::uint64_t Y, double theta_linear = 0.0) {
    Complex total{0, 0};
    for (const auto& [l, w] : alpha) {
        for (std::int64_t m = A + 1; m <= A + static_cast<std::int64_t>(Y); ++m) {
            const std::uint64_t s = mulmod(reduce(j, r), reduce(m, r), r);
            for (std::uint64_t k : sqrts(static_cast<std::int64_t>(s), r)) {
                Complex term = w * e_mod(mulmod(reduce(l, r), k, r), r);
                if (theta_linear != 0.0) {
                    term *= e_frac(static_cast<double>(l) * theta_linear *
                                   static_cast<double>(m));
                }
                total += term;
            }
        }
    }
    return total;
}

// Sextuple loop for the second moment of nu.
inline double nu_m2(std::uint64_t r,
                    const std::vector<std::pair<std::int64_t, Complex>>& alpha,
                    const std::vector<std::uint64_t>& u_window, std::int64_t A,
                    std::uint64_t Y) {
    // fixed root = smaller of the two
    auto fixed_root = [&](std::uint64_t u) {
        auto roots = sqrts(static_cast<std::int64_t>(u % r), r);
        return roots.front();
    };
    auto inv = [&](std::uint64_t u) {
        for (std::uint64_t x = 1; x < r; ++x) {
            if (mulmod(u % r, x, r) == 1) return x;
        }
        return std::uint64_t(0);
    };
    const std::int64_t lo = A - static_cast<std::int64_t>(Y);
    const std::int64_t hi = A + 2 * static_cast<std::int64_t>(Y);
    double total = 0;
    for (const auto& [l1, w1] : alpha)
        for (const auto& [l2, w2] : alpha)
            for (std::uint64_t u1 : u_window)
                for (std::uint64_t u2 : u_window) {
                    const std::uint64_t lam1 = mulmod(fixed_root(u1), reduce(l1, r), r);
                    const std::uint64_t lam2 = mulmod(fixed_root(u2), reduce(l2, r), r);
                    if (lam1 != lam2) continue;
                    for (std::int64_t m1 = lo; m1 <= hi; ++m1)
                        for (std::int64_t m2 = lo; m2 <= hi; ++m2) {
                            if (mulmod(inv(u1), reduce(m1, r), r) ==
                                mulmod(inv(u2), reduce(m2, r), r)) {
                                total += std::abs(w1) * std::abs(w2);
                            }
                        }
                }
    return total;
}

// Quadruple loop for #{u1 l1^2 = u2 l2^2}.
inline std::uint64_t quad_count(std::uint64_t r,
                                const std::vector<std::int64_t>& xs,
                                const std::vector<std::uint64_t>& us) {
    std::uint64_t total = 0;
    for (std::int64_t l1 : xs)
        for (std::int64_t l2 : xs)
            for (std::uint64_t u1 : us)
                for (std::uint64_t u2 : us) {
                    const std::uint64_t a =
                        mulmod(u1 % r, mulmod(reduce(l1, r), reduce(l1, r), r), r);
                    const std::uint64_t b =
                        mulmod(u2 % r, mulmod(reduce(l2, r), reduce(l2, r), r), r);
                    if (a == b) ++total;
                }
    return total;
}

// Quadruple loop for A(d) over m1, m2 and raw root candidates k1, k2.
inline std::uint64_t collision_A(std::uint64_t r, std::int64_t j, std::uint64_t M,
                                 std::uint64_t H, std::int64_t d) {
    const std::uint64_t dv = reduce(d, r);
    std::uint64_t total = 0;
    for (std::uint64_t m1 = 1; m1 <= M; ++m1)
        for (std::uint64_t m2 = 1; m2 <= M; ++m2) {
            const std::uint64_t gap = m1 > m2 ? m1 - m2 : m2 - m1;
            if (gap > H) continue;
            for (std::uint64_t k1 = 0; k1 < r; ++k1) {
                if (mulmod(k1, k1, r) != mulmod(reduce(j, r), m1 % r, r)) continue;
                for (std::uint64_t k2 = 0; k2 < r; ++k2) {
                    if (mulmod(k2, k2, r) != mulmod(reduce(j, r), m2 % r, r)) continue;
                    if (reduce(static_cast<std::int64_t>(k1) -
                                   static_cast<std::int64_t>(k2), r) == dv) {
                        ++total;
                    }
                }
            }
        }
    return total;
}

// Full enumeration of the 2n-fold root congruence.
inline std::uint64_t prop3_raw(std::uint64_t r, std::int64_t j, unsigned n,
                               const std::vector<std::uint64_t>& vs) {
    const unsigned width = 2 * n;
    std::vector<std::size_t> digits(width, 0);
    std::uint64_t total = 0;
    while (true) {
        for (std::uint64_t mu = 0; mu < r; ++mu) {
            // enumerate all root choices recursively
            std::vector<std::vector<std::uint64_t>> rootsets(width);
            bool any_empty = false;
            for (unsigned i = 0; i < width; ++i) {
                const std::uint64_t s = mulmod(
                    reduce(j, r),
                    reduce(static_cast<std::int64_t>(mu) -
                               static_cast<std::int64_t>(vs[digits[i]] % r), r),
                    r);
                rootsets[i] = sqrts(static_cast<std::int64_t>(s), r);
                if (rootsets[i].empty()) {
                    any_empty = true;
                    break;
                }
            }
            if (any_empty) continue;
            std::vector<std::size_t> pick(width, 0);
            while (true) {
                std::int64_t lhs = 0, rhs = 0;
                for (unsigned i = 0; i < n; ++i) {
                    lhs += static_cast<std::int64_t>(rootsets[i][pick[i]]);
                }
                for (unsigned i = n; i < width; ++i) {
                    rhs += static_cast<std::int64_t>(rootsets[i][pick[i]]);
                }
                if (reduce(lhs - rhs, r) == 0) ++total;
                unsigned pos = 0;
                while (pos < width && ++pick[pos] == rootsets[pos].size()) {
                    pick[pos] = 0;
                    ++pos;
                }
                if (pos == width) break;
            }
        }
        unsigned pos = 0;
        while (pos < width && ++digits[pos] == vs.size()) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos == width) break;
    }
    return total;
}

// Direct evaluation of sum_{lambda,mu} |sum_v e_r(lambda sqrt(j(mu-v))) e(xi v)|^{2n}.
inline double parseval_direct(std::uint64_t r, std::int64_t j, unsigned n,
                              const std::vector<std::uint64_t>& vs, double xi) {
    double total = 0;
    for (std::uint64_t lam = 0; lam < r; ++lam) {
        for (std::uint64_t mu = 0; mu < r; ++mu) {
            Complex inner{0, 0};
            for (std::uint64_t v : vs) {
                const std::uint64_t s = mulmod(
                    reduce(j, r), reduce(static_cast<std::int64_t>(mu) -
                                         static_cast<std::int64_t>(v % r), r), r);
                for (std::uint64_t k : sqrts(static_cast<std::int64_t>(s), r)) {
                    inner += e_mod(mulmod(lam, k, r), r) *
                             e_frac(xi * static_cast<double>(v));
                }
            }
            total += std::pow(std::norm(inner), static_cast<double>(n));
        }
    }
    return total;
}

// Brute-force even-multiplicity tuple count over alphabet {0..k-1}.
inline std::uint64_t even_multiplicity_W(unsigned n, unsigned k) {
    const unsigned width = 2 * n;
    std::vector<unsigned> digits(width, 0);
    std::uint64_t total = 0;
    while (true) {
        std::vector<unsigned> mult(k, 0);
        for (unsigned i = 0; i < width; ++i) ++mult[digits[i]];
        bool all_even = true;
        for (unsigned c : mult) {
            if (c % 2 != 0) {
                all_even = false;
                break;
            }
        }
        if (all_even) ++total;
        unsigned pos = 0;
        while (pos < width && ++digits[pos] == k) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos == width) break;
    }
    return total;
}

// Direct double-loop sieve left side with std::exp phases.
inline double sieve_lhs(std::uint64_t Q, std::int64_t M, std::uint64_t N,
                        const std::vector<std::pair<std::int64_t, Complex>>& a) {
    (void)M;
    (void)N;
    double total = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const std::uint64_t q2 = q * q;
        for (std::uint64_t aa = 1; aa <= q2; ++aa) {
            if (std::gcd(aa, q) != 1) continue;
            Complex inner{0, 0};
            for (const auto& [nn, w] : a) {
                inner += w * e_frac(static_cast<double>(nn) * static_cast<double>(aa) /
                                    static_cast<double>(q2));
            }
            total += std::norm(inner);
        }
    }
    return total;
}

// Farey counter by scanning an explicit a-range per q with 128-bit
// cross-multiplied membership tests.
inline std::uint64_t farey_count(std::int64_t alpha_num, std::int64_t alpha_den,
                                 std::uint64_t Q, std::int64_t delta_num,
                                 std::int64_t delta_den) {
    using I128 = __int128;
    std::uint64_t count = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const I128 q2 = I128(q) * q;
        // |a/q^2 - alpha| <= delta  <=>  |a alpha_den - q^2 alpha_num| * delta_den
        //                                 <= delta_num * alpha_den * q^2
        const double approx = static_cast<double>(alpha_num) /
                              static_cast<double>(alpha_den) *
                              static_cast<double>(q) * static_cast<double>(q);
        const double rad = static_cast<double>(delta_num) /
                           static_cast<double>(delta_den) *
                           static_cast<double>(q) * static_cast<double>(q);
        const auto lo = static_cast<std::int64_t>(std::floor(approx - rad)) - 2;
        const auto hi = static_cast<std::int64_t>(std::ceil(approx + rad)) + 2;
        for (std::int64_t a = lo; a <= hi; ++a) {
            I128 diff = I128(a) * alpha_den - q2 * alpha_num;
            if (diff < 0) diff = -diff;
            if (diff * delta_den > I128(delta_num) * alpha_den * q2) continue;
            const std::uint64_t g =
                std::gcd(q, static_cast<std::uint64_t>(a < 0 ? -a : a));
            if ((a == 0 && q == 1) || (a != 0 && g == 1)) ++count;
        }
    }
    return count;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 3; p <= bound; p += 2) {
        bool prime = true;
        for (std::uint64_t d = 3; d * d <= p; d += 2) {
            if (p % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(p);
    }
    return out;
}

}  // namespace oracle
