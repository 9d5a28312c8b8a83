#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sqrtsum/errors.hpp"
#include "sqrtsum/expsums.hpp"
#include "sqrtsum/field.hpp"

namespace sqrtsum {

// The weighted count of triples (l, u, m) landing on a given
// (lambda, mu) = (S(u) l, u^{-1} m) mod r. Dense storage below a size
// threshold, hashed otherwise.
class NuTable {
public:
    static constexpr std::uint64_t kDenseLimit = 4096;

    std::uint64_t modulus() const noexcept { return r_; }
    double at(std::uint64_t lambda, std::uint64_t mu) const;
    std::size_t nonzero_cells() const;

    template <class Fn>
    void for_each_nonzero(Fn&& fn) const {
        if (!dense_.empty()) {
            for (std::uint64_t lam = 0; lam < r_; ++lam) {
                const double* row = dense_.data() + lam * r_;
                for (std::uint64_t mu = 0; mu < r_; ++mu) {
                    if (row[mu] != 0.0) fn(lam, mu, row[mu]);
                }
            }
        } else {
            for (const auto& [key, val] : sparse_) {
                fn(key / r_, key % r_, val);
            }
        }
    }

    // Provenance echo of the build parameters.
    std::int64_t A() const noexcept { return A_; }
    std::uint64_t Y() const noexcept { return Y_; }
    std::size_t x_size() const noexcept { return x_size_; }
    std::size_t u_size() const noexcept { return u_size_; }

private:
    friend NuTable build_nu(const PrimeContext&, std::int64_t, const CoeffSeq&,
                            const std::vector<std::uint64_t>&, std::int64_t,
                            std::uint64_t);

    std::uint64_t r_ = 0;
    std::vector<double> dense_;  // r*r row-major when non-empty
    std::unordered_map<std::uint64_t, double> sparse_;
    std::int64_t A_ = 0;
    std::uint64_t Y_ = 0;
    std::size_t x_size_ = 0, u_size_ = 0;

    void add(std::uint64_t lambda, std::uint64_t mu, double w);
    bool dense_ready() const noexcept { return !dense_.empty(); }
    bool densep() const noexcept { return dense_ready(); }
};

// nu(lambda, mu) = sum of |alpha_l| over l in the support of alpha,
// u in u_window, m in [A-Y, A+2Y] with (S(u) l, u^{-1} m) = (lambda, mu)
// mod r, where S is the canonical fixed root. Every u must be a nonzero
// quadratic residue. j is carried along for provenance only; the count
// itself does not involve it.
NuTable build_nu(const PrimeContext& ctx, std::int64_t j, const CoeffSeq& alpha,
                 const std::vector<std::uint64_t>& u_window, std::int64_t A,
                 std::uint64_t Y);

struct NuMoments {
    double m1 = 0;  // sum of nu
    double m2 = 0;  // sum of nu^2
};
NuMoments nu_moments(const NuTable& table);

// #{(l1, u1, l2, u2) in X^2 x U^2 : u1 l1^2 = u2 l2^2 mod r}, via bucketing
// the values u l^2 and summing squared bucket sizes.
std::uint64_t quad_congruence_count(const PrimeContext& ctx,
                                    const std::vector<std::int64_t>& x_set,
                                    const std::vector<std::uint64_t>& u_window);

// A(d): quadruples (m1, m2, k1, k2) with 1 <= m1, m2 <= M, |m1 - m2| <= H,
// ki^2 = j mi mod r and k1 - k2 = d mod r. Requires 1 <= H <= M <= r/2.
std::uint64_t collision_count_A(const PrimeContext& ctx, std::int64_t j,
                                std::uint64_t M, std::uint64_t H,
                                std::int64_t d);

// The aggregate sum_{|d| <= D} A(d) over integer d, with
// D = floor(2 r^(1+eps) / L). Integer d-classes repeat mod r; the repeat
// multiplicities are counted exactly.
struct CollisionAggregate {
    std::uint64_t total = 0;
    std::uint64_t D = 0;
    std::vector<std::uint64_t> per_residue;  // A(c) for c in [0, r)
};
CollisionAggregate collision_aggregate(const PrimeContext& ctx, std::int64_t j,
                                       std::uint64_t M, std::uint64_t H,
                                       std::uint64_t L, double eps);

// Solutions of the 2n-fold root congruence behind the Parseval identity:
// tuples (v_1..v_2n, k_1..k_2n, mu) with v_i in v_set, k_i^2 = j(mu - v_i)
// mod r and sum_{i<=n} k_i = sum_{i>n} k_i mod r. phase_weighted attaches
// e(xi (sum_{i<=n} v_i - sum_{i>n} v_i)) to each solution.
//
// The mu-loop splits into a fixed set of chunks merged in index order, so
// the result is identical for every thread count.
struct SolutionCount {
    std::uint64_t raw_count = 0;
    Complex phase_weighted{0.0, 0.0};
};
SolutionCount prop3_solution_count(const PrimeContext& ctx, std::int64_t j,
                                   unsigned n,
                                   const std::vector<std::uint64_t>& v_set,
                                   double xi,
                                   std::uint64_t budget = 1'000'000'000ull,
                                   int threads = 1);

// Number of 2n-tuples over a k-element alphabet in which every value occurs
// an even number of times. Closed form over the partitions of n, corrected
// for repeated part sizes; exact. Requires n <= 6, k <= 12.
std::uint64_t even_multiplicity_count_W(unsigned n, unsigned k);

}  // namespace sqrtsum
