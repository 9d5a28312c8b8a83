#pragma once

#include <cstdint>
#include <vector>

#include "sqrtsum/errors.hpp"
#include "sqrtsum/expsums.hpp"

namespace sqrtsum {

// Exact rational with a canonical representation (den > 0, reduced).
// Comparisons cross-multiply in 128 bits, so no membership test ever
// depends on floating point.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

Rat make_rat(std::int64_t num, std::int64_t den);
Rat rat_add(const Rat& a, const Rat& b);
Rat rat_sub(const Rat& a, const Rat& b);
int rat_cmp(const Rat& a, const Rat& b);  // sign of a - b
double rat_to_double(const Rat& a);

// The large-sieve data: moduli q <= Q, fractions a/q^2, and a coefficient
// sequence supported on (M, M+N].
struct SieveSpec {
    std::uint64_t Q = 1;
    std::int64_t M = 0;
    std::uint64_t N = 1;
    CoeffSeq a;
};

// sum_{q<=Q} sum_{a=1..q^2, (a,q)=1} |sum_{M<n<=M+N} a_n e(n a / q^2)|^2
// by direct evaluation. The default budget admits Q <= 32, N <= 2^14.
double sieve_lhs(const SieveSpec& s,
                 std::uint64_t budget = std::uint64_t(1) << 34);

// Z = sum |a_n|^2.
double z_norm(const SieveSpec& s);

// P(alpha) = #{(q, a) in Z^2 : 1 <= q <= Q, (q, a) = 1, |a/q^2 - alpha| <= delta},
// with exact rational interval tests. a ranges over all integers.
std::uint64_t farey_count_P(const Rat& alpha, std::uint64_t Q, const Rat& delta);

// Scans P(b/r + z) over a geometric grid of z in [Delta, sqrt(Delta)/r],
// Delta = 1/N. Grid points are snapped to exact rationals k/(N r), k integer,
// which keeps every membership test exact; the endpoints k = r and
// k = floor(sqrt(N)) are always included.
struct PScanPoint {
    std::int64_t k = 0;  // z = k/(N r)
    Rat z;
    std::uint64_t count = 0;
};

struct PScanReport {
    std::vector<PScanPoint> points;
    std::uint64_t max_count = 0;
    Rat argmax_z;
    double q_sqrt = 0;  // the Q^(1/2) comparison shape
};

PScanReport scan_P_over_ranges(std::uint64_t Q, std::uint64_t N, std::uint64_t r,
                               std::int64_t b, std::uint32_t grid_size);

}  // namespace sqrtsum
