#include "sqrtsum/field.hpp"

#include <algorithm>

namespace sqrtsum {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a,
                          std::uint64_t d, unsigned s) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set decides primality for every n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

PrimeContext::PrimeContext(std::uint64_t r) : r_(r) {
    if (r < 3 || r >= kMaxModulus || (r & 1) == 0 || !is_prime_u64(r)) {
        throw BadModulus("modulus must be an odd prime in [3, 2^62), got " +
                         std::to_string(r));
    }
    if (r <= kDenseTableLimit) {
        qr_table_.assign(r, false);
        for (std::uint64_t k = 0; k <= (r - 1) / 2; ++k) {
            qr_table_[mulmod_u64(k, k, r)] = true;
        }
    }
    ts_q_ = r - 1;
    ts_s_ = 0;
    while ((ts_q_ & 1) == 0) {
        ts_q_ >>= 1;
        ++ts_s_;
    }
    if (r % 4 == 1) {
        for (std::uint64_t z = 2;; ++z) {
            if (powmod_u64(z, (r - 1) / 2, r) == r - 1) {
                ts_z_ = z;
                break;
            }
        }
    }
}

std::uint64_t PrimeContext::reduce(std::int64_t a) const noexcept {
    std::int64_t m = a % static_cast<std::int64_t>(r_);
    if (m < 0) m += static_cast<std::int64_t>(r_);
    return static_cast<std::uint64_t>(m);
}

std::uint64_t PrimeContext::mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return mulmod_u64(a, b, r_);
}

std::uint64_t PrimeContext::pow(std::uint64_t base, std::uint64_t exp) const noexcept {
    return powmod_u64(base, exp, r_);
}

std::uint64_t PrimeContext::inverse(std::uint64_t a) const {
    a %= r_;
    if (a == 0) throw InvalidParams("no inverse of 0 mod " + std::to_string(r_));
    return powmod_u64(a, r_ - 2, r_);
}

int PrimeContext::legendre(std::int64_t a) const noexcept {
    std::uint64_t v = reduce(a);
    if (v == 0) return 0;
    if (!qr_table_.empty()) return qr_table_[v] ? 1 : -1;
    return powmod_u64(v, (r_ - 1) / 2, r_) == 1 ? 1 : -1;
}

std::vector<std::uint64_t> all_sqrts(std::int64_t s, const PrimeContext& ctx) {
    const std::uint64_t r = ctx.modulus();
    const std::uint64_t v = ctx.reduce(s);
    if (v == 0) return {0};
    if (ctx.legendre(static_cast<std::int64_t>(v)) != 1) return {};

    std::uint64_t k;
    if (r < 64) {
        k = 0;
        for (std::uint64_t c = 1; c < r; ++c) {
            if (ctx.mul(c, c) == v) {
                k = c;
                break;
            }
        }
    } else if (r % 4 == 3) {
        k = ctx.pow(v, (r + 1) / 4);
    } else {
        // Tonelli-Shanks with the precomputed nonresidue.
        std::uint64_t m = ctx.ts_s_;
        std::uint64_t c = ctx.pow(ctx.ts_z_, ctx.ts_q_);
        std::uint64_t t = ctx.pow(v, ctx.ts_q_);
        k = ctx.pow(v, (ctx.ts_q_ + 1) / 2);
        while (t != 1) {
            std::uint64_t i = 0;
            std::uint64_t tt = t;
            while (tt != 1) {
                tt = ctx.mul(tt, tt);
                ++i;
            }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = ctx.mul(b, b);
            m = i;
            c = ctx.mul(b, b);
            t = ctx.mul(t, c);
            k = ctx.mul(k, b);
        }
    }
    std::uint64_t other = r - k;
    if (k > other) std::swap(k, other);
    return {k, other};
}

std::uint64_t fixed_root(std::uint64_t u, const PrimeContext& ctx) {
    const std::uint64_t v = u % ctx.modulus();
    if (v == 0) return 0;
    if (ctx.legendre(static_cast<std::int64_t>(v)) == -1) {
        throw NotAResidue(std::to_string(v) + " is not a quadratic residue mod " +
                          std::to_string(ctx.modulus()));
    }
    return all_sqrts(static_cast<std::int64_t>(v), ctx).front();
}

std::vector<std::uint64_t> qr_window(std::uint64_t U, const PrimeContext& ctx) {
    if (U < 1 || U >= ctx.modulus()) {
        throw RangeError("qr_window requires 1 <= U < r, got U=" +
                         std::to_string(U) + ", r=" + std::to_string(ctx.modulus()));
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t u = U / 2 + 1; u <= U; ++u) {
        if (ctx.legendre(static_cast<std::int64_t>(u)) == 1) out.push_back(u);
    }
    return out;
}

}  // namespace sqrtsum
