#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqrtsum/expsums.hpp"

namespace sqrtsum {

// Counter-based deterministic randomness: every draw is a pure function of
// (master_seed, instance, stream, counter), so results are identical across
// platforms and thread schedules.
class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint64_t instance,
               std::uint64_t stream) noexcept;

    std::uint64_t next_u64() noexcept;
    double next_unit() noexcept;  // uniform in [0, 1), 53-bit
    // uniform in [lo, hi] without modulo bias
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) noexcept;

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

// Sample `count` distinct values from [lo, hi], ascending. count must not
// exceed the range size.
std::vector<std::uint64_t> sample_distinct(CounterRng& rng, std::uint64_t lo,
                                           std::uint64_t hi, std::size_t count);

// The three sweep generators: ones, unit_phase (angles uniform in [0,1)),
// rademacher (+-1). All produce ||alpha||_inf = 1 on a nonempty support.
CoeffSeq gen_sequence(const std::string& tag,
                      const std::vector<std::int64_t>& support,
                      std::uint64_t master_seed, std::uint64_t index);

}  // namespace sqrtsum
