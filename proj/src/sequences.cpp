#include "sqrtsum/sequences.hpp"

#include <algorithm>

namespace sqrtsum {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t master_seed, std::uint64_t instance,
                       std::uint64_t stream) noexcept
    : base_(splitmix64(splitmix64(master_seed) ^
                       splitmix64(instance * 0xA24BAED4963EE407ull) ^
                       splitmix64(stream * 0x9FB21C651E98DF25ull))) {}

std::uint64_t CounterRng::next_u64() noexcept {
    return splitmix64(base_ + 0x9E3779B97F4A7C15ull * ++counter_);
}

double CounterRng::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_in(std::uint64_t lo, std::uint64_t hi) noexcept {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t(0) / span) * span;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (limit != 0 && x >= limit);
    return span == 0 ? x : lo + x % span;
}

std::vector<std::uint64_t> sample_distinct(CounterRng& rng, std::uint64_t lo,
                                           std::uint64_t hi, std::size_t count) {
    const std::uint64_t span = hi - lo + 1;
    if (count > span) {
        throw InvalidParams("cannot sample " + std::to_string(count) +
                            " distinct values from a range of " +
                            std::to_string(span));
    }
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (count * 3 >= span) {
        // dense: Fisher-Yates over the whole range
        std::vector<std::uint64_t> all(span);
        for (std::uint64_t i = 0; i < span; ++i) all[i] = lo + i;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t pick = rng.next_in(i, span - 1);
            std::swap(all[i], all[pick]);
            out.push_back(all[i]);
        }
    } else {
        // sparse: rejection
        while (out.size() < count) {
            std::uint64_t v = rng.next_in(lo, hi);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CoeffSeq gen_sequence(const std::string& tag,
                      const std::vector<std::int64_t>& support,
                      std::uint64_t master_seed, std::uint64_t index) {
    std::vector<std::int64_t> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<CoeffSeq::Entry> entries;
    entries.reserve(sorted.size());
    if (tag == "ones") {
        for (std::int64_t idx : sorted) entries.emplace_back(idx, Complex{1.0, 0.0});
    } else if (tag == "unit_phase") {
        CounterRng rng(master_seed, index, /*stream=*/1);
        for (std::int64_t idx : sorted) {
            entries.emplace_back(idx, unit_phase(rng.next_unit()));
        }
    } else if (tag == "rademacher") {
        CounterRng rng(master_seed, index, /*stream=*/2);
        for (std::int64_t idx : sorted) {
            entries.emplace_back(idx, Complex{(rng.next_u64() & 1) ? 1.0 : -1.0, 0.0});
        }
    } else {
        throw UnknownTag("unknown sequence generator '" + tag +
                         "' (expected ones, unit_phase or rademacher)");
    }
    return CoeffSeq(std::move(entries));
}

}  // namespace sqrtsum
