#ifndef FRFOLD_COUNTERS_HPP
#define FRFOLD_COUNTERS_HPP

#include <algorithm>
#include <cstdint>

namespace frfold {

// Instrumentation owned by a single solver run. The query counters are the
// quantities the benchmark harness checks scaling laws against; the word
// counter tracks peak simultaneously allocated table cells.
struct CounterSet {
    std::uint64_t central_queries = 0;    // central-table lookups
    std::uint64_t updation_queries = 0;   // updation-table lookups
    std::uint64_t inner_iterations = 0;   // innermost-loop steps
    std::uint64_t peak_table_words = 0;   // peak allocated table cells, in words
    std::uint64_t precompute_steps = 0;   // precomputation inner steps

    void note_words(std::uint64_t live_words) {
        peak_table_words = std::max(peak_table_words, live_words);
    }
};

}  // namespace frfold

#endif
