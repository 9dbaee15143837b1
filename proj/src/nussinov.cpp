#include "frfold/nussinov.hpp"

#include <stdexcept>

namespace frfold {

FullDpTable dp_table(const RnaSequence& seq, const PairingRule& rule) {
    const int n = seq.size();
    FullDpTable table(n);
    for (int j = 2; j <= n; ++j) {
        for (int i = j - 1; i >= 1; --i) {
            std::int32_t best = table.at(i + 1, j);
            best = std::max(best, table.at(i, j - 1));
            if (rule.pair_allowed(seq, i, j)) {
                best = std::max(best, table.at(i + 1, j - 1) + 1);
            }
            for (int p = i; p < j; ++p) {
                best = std::max(best, table.at(i, p) + table.at(p + 1, j));
            }
            table.set(i, j, best);
        }
    }
    return table;
}

FoldResult fold_oracle(const RnaSequence& seq, const PairingRule& rule) {
    const int n = seq.size();
    FoldResult result;
    FullDpTable table = dp_table(seq, rule);
    result.counters.peak_table_words = table.cell_count();
    if (n > 0) {
        result.score = table.at(1, n);
        auto m = [&table](int i, int j) { return table.at(i, j); };
        traceback_table(m, seq, rule, 1, n, result.structure);
        result.structure.normalize();
    }
    return result;
}

namespace {

// Enumerates every non-crossing legal pair set over [i, j] and returns the
// maximum cardinality. No memoization: each structure is visited explicitly.
int enumerate_interval(const RnaSequence& seq, const PairingRule& rule, int i, int j) {
    if (i >= j) return 0;
    // Position i unpaired.
    int best = enumerate_interval(seq, rule, i + 1, j);
    // Position i paired with q.
    for (int q = i + 1; q <= j; ++q) {
        if (!rule.pair_allowed(seq, i, q)) continue;
        int inside = enumerate_interval(seq, rule, i + 1, q - 1);
        int outside = enumerate_interval(seq, rule, q + 1, j);
        best = std::max(best, 1 + inside + outside);
    }
    return best;
}

}  // namespace

int enumerate_optimal_count(const RnaSequence& seq, const PairingRule& rule) {
    const int n = seq.size();
    if (n > 16) throw std::invalid_argument("enumerate_optimal_count: n must be at most 16");
    if (n == 0) return 0;
    return enumerate_interval(seq, rule, 1, n);
}

}  // namespace frfold
