#pragma once

#include <cstdint>
#include <vector>

#include "sqrtsum/errors.hpp"

namespace sqrtsum {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// An odd prime modulus r with optional dense quadratic-residue table.
// Immutable after construction; every operation is const and thread-safe.
class PrimeContext {
public:
    // Dense table above this costs more memory than a per-query Euler test
    // is worth.
    static constexpr std::uint64_t kDenseTableLimit = std::uint64_t(1) << 22;
    static constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 62;

    explicit PrimeContext(std::uint64_t r);

    std::uint64_t modulus() const noexcept { return r_; }
    bool has_qr_table() const noexcept { return !qr_table_.empty(); }

    // Maps any integer into [0, r).
    std::uint64_t reduce(std::int64_t a) const noexcept;

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
    std::uint64_t inverse(std::uint64_t a) const;  // a != 0 mod r

    // Legendre symbol (a/r) in {-1, 0, 1}; total on all integers.
    int legendre(std::int64_t a) const noexcept;

private:
    std::uint64_t r_;
    std::vector<bool> qr_table_;
    // r - 1 = ts_q * 2^ts_s with ts_q odd; ts_z is a quadratic nonresidue
    // (only set when r = 1 mod 4, where Tonelli-Shanks needs it).
    std::uint64_t ts_q_ = 0;
    unsigned ts_s_ = 0;
    std::uint64_t ts_z_ = 0;

    friend std::vector<std::uint64_t> all_sqrts(std::int64_t, const PrimeContext&);
};

// The full collection of modular square roots of s: {} for a nonresidue,
// {0} for s = 0 mod r, {k, r-k} for a nonzero residue. Sorted ascending.
std::vector<std::uint64_t> all_sqrts(std::int64_t s, const PrimeContext& ctx);

// The canonical root: the smaller of the two roots, i.e. the one in [0, r/2].
// Throws NotAResidue when (u/r) = -1.
std::uint64_t fixed_root(std::uint64_t u, const PrimeContext& ctx);

// {u in Z : U/2 < u <= U, (u/r) = 1}, ascending. Requires 1 <= U < r, so the
// window never wraps mod r.
std::vector<std::uint64_t> qr_window(std::uint64_t U, const PrimeContext& ctx);

}  // namespace sqrtsum
