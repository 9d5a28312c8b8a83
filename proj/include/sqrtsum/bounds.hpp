#pragma once

#include <cstdint>
#include <vector>

#include "sqrtsum/counting.hpp"
#include "sqrtsum/expsums.hpp"
#include "sqrtsum/field.hpp"

namespace sqrtsum {

// Parameters of the main bilinear bound: modulus, twist j, Hoelder exponent
// n, the interval (A, A+Y], the length L of an interval containing the
// support set, the analytic phase and the epsilon exponent.
struct TheoremParams {
    std::uint64_t r = 3;
    std::int64_t j = 1;
    unsigned n = 1;
    std::int64_t A = 0;
    std::uint64_t Y = 1;
    std::uint64_t L = 1;
    PhaseFn f = PhaseFn::zero();
    double eps = 0.05;
    double c_assert = 64.0;
};

struct RegimeFlags {
    bool lcond_ok = false;        // L <= 1/(F r^(1/n+1/4+eps))
    bool ycond_ok = false;        // Y >= r^(1/n+1/4+eps)
    bool nontrivial_region = false;  // X Y^2 >= r^(1+eps) and Y >= r^(1/4+eps)
};

RegimeFlags regime_flags(const TheoremParams& p, std::uint64_t X);

// ||alpha||_1^(1-1/n) ||alpha||_inf^(1/n) X^(1/2n) Y^(1-1/2n)
//   (X + (L F + 1/Y) r^(1+1/n))^(1/2n) r^eps, unit implied constant.
double theorem1_rhs(const TheoremParams& p, double norm1, double norm_sup,
                    std::uint64_t X);

// Same with the phase dropped (L F term = 0).
double corollary_rhs(const TheoremParams& p, double norm1, double norm_sup,
                     std::uint64_t X);

struct BoundReport {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    double trivial_bound = 0;
    RegimeFlags flags;
};

// Evaluates the bilinear sum exactly and compares against theorem1_rhs. The
// trivial comparison bound is ||alpha||_inf times the exact number of
// (m, root) pairs in the interval.
BoundReport check_theorem1(const TheoremParams& p, const PrimeContext& ctx,
                           const CoeffSeq& alpha);

// The f = 0 special case against corollary_rhs.
BoundReport check_corollary(const TheoremParams& p, const PrimeContext& ctx,
                            const CoeffSeq& alpha);

// The amplification parameters V = ceil(r^(1/n)) and
// U = floor(min(1/(L F r^(1/n)), Y/r^(1/n))). Throws DegenerateChoice when
// U < 1. The uvcond flag tests U V <= min(1/(F L), Y) literally; after
// integerization it can fail by at most the floor/ceiling slack
// (U V <= min + U always holds).
struct ShiftParams {
    std::uint64_t U = 0;
    std::uint64_t V = 0;
    bool ucond_ok = false;   // U >= r^(1/4+eps)
    bool uvcond_ok = false;  // U V <= min(1/(F L), Y)
};

ShiftParams choose_shift_params(const TheoremParams& p);

struct Prop1Report {
    std::uint64_t window_count = 0;  // #{u in (U/2, U] : (u/r) = 1}
    double half_u = 0;
    std::int64_t char_sum = 0;
    bool ucond_ok = false;
};

Prop1Report check_prop1(std::uint64_t U, const PrimeContext& ctx, double eps);

struct Lemma1Report {
    double lhs_sq = 0;  // |Sigma|^2
    double rhs = 0;     // (L M / H) ||alpha||_2^2 ||beta||_inf^2 * aggregate
    double ratio = 0;
    std::uint64_t a_total = 0;
    std::uint64_t D = 0;
};

Lemma1Report check_lemma1(const PrimeContext& ctx, std::int64_t j,
                          std::uint64_t L, std::uint64_t M, std::uint64_t H,
                          const CoeffSeq& alpha, const CoeffSeq& beta,
                          const PhaseFn& f, double eps);

struct Prop2Report {
    double m1 = 0;
    double m1_expected = 0;  // ||alpha||_1 |U| (3Y+1)
    double m2 = 0;
    double rhs = 0;  // ||alpha||_inf^2 U X Y (U X / r + 1) r^eps
    double ratio = 0;
    std::uint64_t window_size = 0;
};

Prop2Report check_prop2(const PrimeContext& ctx, std::int64_t j,
                        const CoeffSeq& alpha, std::uint64_t U, std::int64_t A,
                        std::uint64_t Y, double eps);

struct Prop3Report {
    std::uint64_t raw_count = 0;
    Complex phase_weighted{0, 0};
    double rhs = 0;  // V^(2n) + r V^n
    double ratio = 0;
};

Prop3Report check_prop3(const PrimeContext& ctx, std::int64_t j, unsigned n,
                        std::uint64_t V, const std::vector<std::uint64_t>& v_subset,
                        double xi, std::uint64_t budget);

struct CishzReport {
    std::uint64_t count = 0;
    double rhs = 0;  // X^2 U^2 / r + X U r^eps
    double ratio = 0;
};

CishzReport check_cishz(const PrimeContext& ctx,
                        const std::vector<std::int64_t>& x_set,
                        const std::vector<std::uint64_t>& u_window,
                        std::uint64_t U, double eps);

}  // namespace sqrtsum
