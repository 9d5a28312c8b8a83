#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqrtsum/errors.hpp"
#include "sqrtsum/field.hpp"

namespace sqrtsum {

using Complex = std::complex<double>;

// Compensated (Kahan) accumulator; keeps long sums accurate to well below
// 1e-9 relative per 10^6 terms.
class KahanSum {
public:
    void add(Complex term) noexcept {
        add_part(re_, re_c_, term.real());
        add_part(im_, im_c_, term.imag());
    }
    Complex value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double term) noexcept {
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double re_ = 0, im_ = 0, re_c_ = 0, im_c_ = 0;
};

// e(x) = exp(2 pi i x).
Complex unit_phase(double x);

// e_r(k) = e(k/r), with k reduced mod r before the division so huge k loses
// no precision.
Complex unit_phase_ratio(std::int64_t k, std::uint64_t r);

// A finite complex-weighted support set: the sequence alpha over a set of
// integer indices (or beta over an interval). Norms are computed once at
// construction. The default-constructed value is the zero sequence.
class CoeffSeq {
public:
    using Entry = std::pair<std::int64_t, Complex>;

    CoeffSeq() = default;
    explicit CoeffSeq(std::vector<Entry> entries);

    static CoeffSeq ones(const std::vector<std::int64_t>& support);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    Complex at(std::int64_t index) const noexcept;  // 0 when absent
    std::vector<std::int64_t> support() const;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    double norm1() const noexcept { return norm1_; }
    double norm2() const noexcept { return norm2_; }
    double norm2_sq() const noexcept { return norm2_sq_; }
    double norm_sup() const noexcept { return norm_sup_; }

private:
    std::vector<Entry> entries_;  // sorted by index, unique
    double norm1_ = 0, norm2_ = 0, norm2_sq_ = 0, norm_sup_ = 0;
};

// The analytic phase f as a closed-form family so its derivative bound F is
// exact: Zero (f = 0), Linear (f = theta * m, F = |theta|) and
// Power (f = c * m^kappa with 0 < kappa < 1; F = |c| kappa domain_lo^(kappa-1),
// valid on [domain_lo, inf) with domain_lo >= 1).
class PhaseFn {
public:
    enum class Family { Zero, Linear, Power };

    static PhaseFn zero();
    static PhaseFn linear(double theta);
    static PhaseFn power(double c, double kappa, double domain_lo);

    double operator()(double m) const;
    double derivative_bound() const noexcept { return deriv_bound_; }
    Family family() const noexcept { return family_; }
    bool is_zero() const noexcept { return family_ == Family::Zero; }

    double param_c() const noexcept { return c_; }
    double param_kappa() const noexcept { return kappa_; }
    double domain_lo() const noexcept { return domain_lo_; }

private:
    PhaseFn(Family fam, double c, double kappa, double domain_lo, double bound)
        : family_(fam), c_(c), kappa_(kappa), domain_lo_(domain_lo),
          deriv_bound_(bound) {}

    Family family_ = Family::Zero;
    double c_ = 0;        // theta for Linear, c for Power
    double kappa_ = 0;
    double domain_lo_ = 0;
    double deriv_bound_ = 0;
};

// The integer interval (A, A+Y].
struct IntervalSpec {
    std::int64_t A = 0;
    std::uint64_t Y = 1;

    std::int64_t first() const noexcept { return A + 1; }
    std::int64_t last() const noexcept { return A + static_cast<std::int64_t>(Y); }
};

// Sum over l in the support of alpha (all indices nonzero mod r), m in
// (A, A+Y], and every modular square root k of j*m:
//   alpha_l * e_r(l*k) * e(l*f(m)).
// e_r sees l mod r; e(l*f(m)) sees the integer l and the integer m.
Complex bilinear_set_sum(const PrimeContext& ctx, std::int64_t j,
                         const CoeffSeq& alpha, const IntervalSpec& yspan,
                         const PhaseFn& f);

// Sum over |l| <= L, 1 <= m <= M and every root k of j*m:
//   alpha_l * beta_m * e_r(l*k) * e(l*f(m)).
// The l = 0 term contributes alpha_0 * sum_m beta_m * #roots(j*m).
Complex bilinear_interval_sum(const PrimeContext& ctx, std::int64_t j,
                              std::uint64_t L, std::uint64_t M,
                              const CoeffSeq& alpha, const CoeffSeq& beta,
                              const PhaseFn& f);

// G(a, b, r) = sum_{n=1}^{r-1} e_r(a n^2 + b n). Note the sum starts at
// n = 1, so this is the complete quadratic Gauss sum minus 1.
Complex gauss_sum(std::int64_t a, std::int64_t b, const PrimeContext& ctx);

// sum_{n=1}^{r-1} (n/r) e_r(a n + b n^{-1}), the complete Salie sum.
Complex salie_sum(std::int64_t a, std::int64_t b, const PrimeContext& ctx);

// The exact integer sum_{U/2 < u <= U} (u/r). Requires 1 <= U < r.
std::int64_t char_window_sum(std::uint64_t U, const PrimeContext& ctx);

}  // namespace sqrtsum
