#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqrtsum/bounds.hpp"
#include "sqrtsum/sieve.hpp"

namespace sqrtsum {

enum class SweepTarget { Thm1, Cor, Prop1, Prop2, Prop3, Lemma1, Cishz, Sieve, Pscan };

SweepTarget parse_target(const std::string& name);
std::string target_name(SweepTarget t);

// The CSV column list of a target (without the index/status/reason frame).
std::vector<std::string> sweep_columns(SweepTarget t);

// One sweep: a target plus the parameter grid. Numeric knobs left at 0 are
// derived from each prime (the published defaults, see default_sweep_config).
struct SweepConfig {
    SweepTarget target = SweepTarget::Thm1;
    std::vector<std::uint64_t> primes = {101, 211, 401, 809, 1009};
    std::vector<unsigned> ns = {1, 2, 3};
    std::vector<std::string> gens = {"ones", "unit_phase", "rademacher"};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<std::string> phases = {"zero", "linear"};  // thm1 f-variants
    std::vector<double> xis = {0.0, 0.3};                  // prop3
    double eps = 0.05;
    double c_assert = 64.0;
    std::uint64_t budget = 1'000'000'000ull;
    std::string out;  // CSV path ("" = stdout only)

    // 0 means "derive from r".
    std::uint64_t x_size = 0, y_size = 0, L = 0, M = 0, H = 0, U = 0, v_size = 0;
    std::int64_t A = 0;

    // sieve / pscan axes
    std::vector<std::uint64_t> Qs = {4, 8, 16};
    std::vector<std::uint64_t> Ns = {64, 512, 4096};
    std::vector<std::uint64_t> rs = {1, 2, 3, 5, 7};  // pscan moduli
    std::vector<std::int64_t> bs = {1};               // pscan numerators
    std::uint32_t grid_size = 16;

    int threads = 0;  // 0 = SQRTSUM_THREADS env or hardware concurrency
};

// The published default grid for a target (what the acceptance sweep runs).
SweepConfig default_sweep_config(SweepTarget t);

// Config file: UTF-8 "key = value" lines, '#' comments, comma lists.
SweepConfig parse_config_text(const std::string& text);
SweepConfig parse_config_file(const std::string& path);

struct SweepRow {
    std::uint64_t index = 0;
    bool ok = false;
    std::string reason;  // skip reason when !ok
    std::vector<std::string> values;  // aligned with SweepResult::columns
    double ratio = 0;
    double wall_ms = 0;  // informational only; never written to the CSV
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
    std::uint64_t ok_rows = 0;
    std::uint64_t skipped_rows = 0;
    double max_ratio = 0;
    std::vector<std::pair<std::uint64_t, double>> max_ratio_by_prime;
};

SweepResult run_sweep(const SweepConfig& cfg);

// CSV with a "# schema=1" header comment; byte-identical for identical
// (config, seeds) regardless of thread count.
void write_csv(const SweepConfig& cfg, const SweepResult& result, std::ostream& os);
std::string csv_string(const SweepConfig& cfg, const SweepResult& result);

// Full binary64 round-trip formatting (%.17g) used everywhere machine
// output needs to survive a parse.
std::string format_double(double v);

int resolve_thread_count(int requested, std::size_t tasks);

}  // namespace sqrtsum
