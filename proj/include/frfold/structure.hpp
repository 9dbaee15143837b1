#ifndef FRFOLD_STRUCTURE_HPP
#define FRFOLD_STRUCTURE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frfold/counters.hpp"
#include "frfold/sequence.hpp"

namespace frfold {

// A set of non-crossing base pairs (i, j), 1 <= i < j <= n. Kept sorted by i.
struct SecondaryStructure {
    std::vector<std::pair<int, int>> pairs;

    void add(int i, int j) {
        if (i > j) std::swap(i, j);
        pairs.emplace_back(i, j);
    }

    void merge(const SecondaryStructure& other) {
        pairs.insert(pairs.end(), other.pairs.begin(), other.pairs.end());
    }

    void normalize() { std::sort(pairs.begin(), pairs.end()); }

    int size() const { return static_cast<int>(pairs.size()); }

    bool operator==(const SecondaryStructure& other) const = default;
};

struct FoldResult {
    int score = 0;
    SecondaryStructure structure;
    CounterSet counters;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string msg) {
        ok = false;
        violations.push_back(std::move(msg));
    }
};

// Checks every structural invariant against the sequence and rule.
// Violations are reported, not thrown.
inline ValidationReport validate_structure(const RnaSequence& seq, const PairingRule& rule,
                                           const SecondaryStructure& st) {
    ValidationReport report;
    const int n = seq.size();
    std::vector<int> used(static_cast<std::size_t>(n) + 1, 0);
    for (auto [i, j] : st.pairs) {
        if (i < 1 || j > n || i >= j) {
            report.fail("pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for n=" + std::to_string(n));
            continue;
        }
        if (used[i]++) report.fail("position " + std::to_string(i) + " in more than one pair");
        if (used[j]++) report.fail("position " + std::to_string(j) + " in more than one pair");
        if (!rule.complementary(seq.at(i), seq.at(j))) {
            report.fail("pair (" + std::to_string(i) + "," + std::to_string(j) + ") not complementary: " +
                        std::string(1, nuc_to_char(seq.at(i))) + "-" + std::string(1, nuc_to_char(seq.at(j))));
        }
        if (j - i <= rule.min_loop) {
            report.fail("pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") violates minimum loop length " + std::to_string(rule.min_loop));
        }
    }
    // Crossing check over all pairs with i < k.
    for (std::size_t a = 0; a < st.pairs.size(); ++a) {
        for (std::size_t b = 0; b < st.pairs.size(); ++b) {
            auto [i, j] = st.pairs[a];
            auto [k, l] = st.pairs[b];
            if (i < k && k < j && j < l) {
                report.fail("pairs (" + std::to_string(i) + "," + std::to_string(j) + ") and (" +
                            std::to_string(k) + "," + std::to_string(l) + ") cross");
            }
        }
    }
    return report;
}

}  // namespace frfold

#endif
