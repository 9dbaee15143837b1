#ifndef FRFOLD_NUSSINOV_HPP
#define FRFOLD_NUSSINOV_HPP

#include <cstdint>
#include <vector>

#include "frfold/structure.hpp"

namespace frfold {

// Full triangular DP table for the reference solver. Cell (i, j) holds the
// maximum number of non-crossing base pairs in positions [i, j]; empty
// intervals (i > j) read as 0.
class FullDpTable {
public:
    FullDpTable() = default;
    explicit FullDpTable(int n) : n_(n), cells_(triangle_size(n), 0) {}

    int n() const { return n_; }

    std::int32_t at(int i, int j) const {
        if (i >= j) return 0;
        return cells_[index(i, j)];
    }

    void set(int i, int j, std::int32_t v) { cells_[index(i, j)] = v; }

    std::uint64_t cell_count() const { return cells_.size(); }

private:
    static std::size_t triangle_size(int n) {
        return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
    }
    // Row-major over the upper triangle, 1 <= i <= j <= n.
    std::size_t index(int i, int j) const {
        std::size_t row = static_cast<std::size_t>(i) - 1;
        return row * n_ - row * (row - 1) / 2 + static_cast<std::size_t>(j - i);
    }

    int n_ = 0;
    std::vector<std::int32_t> cells_;
};

// Reference O(n^3)-time / O(n^2)-space solver. Deliberately the simplest
// correct implementation; it is the ground truth every other solver in this
// library is tested against.
FullDpTable dp_table(const RnaSequence& seq, const PairingRule& rule);

FoldResult fold_oracle(const RnaSequence& seq, const PairingRule& rule);

// Exhaustive maximizer over all non-crossing pair sets; exponential-time,
// restricted to n <= 16. Independent check on the DP itself.
int enumerate_optimal_count(const RnaSequence& seq, const PairingRule& rule);

// Traceback over any fully materialized table exposed through an accessor
// m(i, j) (must return 0 for empty intervals). Deterministic tie-break:
// pair term, then M[i+1,j], then M[i,j-1], then smallest split p.
template <typename MAccessor>
void traceback_table(const MAccessor& m, const RnaSequence& seq, const PairingRule& rule,
                     int i, int j, SecondaryStructure& out) {
    while (i < j) {
        const std::int32_t c = m(i, j);
        if (c == 0) return;
        if (rule.pair_allowed(seq, i, j) && c == m(i + 1, j - 1) + 1) {
            out.add(i, j);
            ++i;
            --j;
            continue;
        }
        if (c == m(i + 1, j)) {
            ++i;
            continue;
        }
        if (c == m(i, j - 1)) {
            --j;
            continue;
        }
        int split = -1;
        for (int p = i; p < j; ++p) {
            if (c == m(i, p) + m(p + 1, j)) {
                split = p;
                break;
            }
        }
        if (split < 0) throw InternalError("traceback: no recurrence case matches table cell");
        traceback_table(m, seq, rule, i, split, out);
        i = split + 1;
    }
}

}  // namespace frfold

#endif
