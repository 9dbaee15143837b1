#ifndef FRFOLD_BENCH_HPP
#define FRFOLD_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frfold/fasta.hpp"
#include "frfold/structure.hpp"

namespace frfold {

// Counter-based deterministic generator: record `index` under `seed` always
// yields the same sequence, independent of call order.
RnaSequence random_sequence(std::uint64_t seed, std::uint64_t index, int n);

struct RunConfig {
    std::string algorithm = "oracle";  // oracle | fr | fr2
    std::optional<int> w_override;
    int min_loop = 0;
    bool wobble = false;
    std::string output_format = "dotbracket";  // dotbracket | json
    std::uint64_t seed = 0;
};

// Dispatches to the selected solver; also reports the block width used.
FoldResult dispatch_fold(const RunConfig& config, const RnaSequence& seq, int* w_used = nullptr);

// Folds every record and renders the output text in the configured format.
// Every structure is re-validated before serialization.
std::string run_fold(const RunConfig& config, const std::vector<FastaRecord>& records);

struct BenchRecord {
    int n = 0;
    int w = 0;
    std::string algorithm;
    int score = 0;
    std::uint64_t central_queries = 0;
    std::uint64_t updation_queries = 0;
    std::uint64_t inner_iterations = 0;
    std::uint64_t peak_table_words = 0;
    std::uint64_t precompute_steps = 0;
    double wall_time_ms = 0.0;
    std::string up_mode;  // dense | cached for fr2, "-" otherwise
};

struct BenchConfig {
    std::string algorithm = "fr";  // fr | fr2 | all
    std::vector<int> sizes;        // ascending
    std::optional<int> w_override;
    int reps = 1;
    std::uint64_t seed = 1;
    int min_loop = 0;
    bool wobble = false;
    double time_tolerance = 0.15;  // relative deviation allowed on count ratios
    double space_tolerance = 2.0;  // max/min allowed on normalized peak words
    std::uint64_t budget_bytes = 0;  // 0: FRFOLD_MEM_BUDGET_MB
};

struct BenchOutcome {
    std::vector<BenchRecord> records;
    std::string csv;     // header + one row per record, fixed column order
    std::string report;  // human-readable scaling verdicts
    bool gate_ok = true;
};

BenchOutcome run_bench(const BenchConfig& config);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

}  // namespace frfold

#endif
