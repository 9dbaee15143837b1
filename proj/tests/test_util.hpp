// Shared helpers for the test suites: independent brute-force oracles and
// small generators. Everything here is deliberately written from the
// definitions, not by calling the library paths under test.
#ifndef FRFOLD_TEST_UTIL_HPP
#define FRFOLD_TEST_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "frfold/bench.hpp"
#include "frfold/nussinov.hpp"
#include "frfold/sequence.hpp"

namespace testutil {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Deterministic pseudo-random integer in [0, bound).
inline int pick(std::uint64_t seed, std::uint64_t index, int bound) {
    return static_cast<int>(mix64(seed * 0x9E3779B97F4A7C15ull + index) % static_cast<std::uint64_t>(bound));
}

// Best split value with the split restricted to [t, o], straight from a
// finished reference table.
inline std::int32_t partial_from_table(const frfold::FullDpTable& m, int i, int j, int t, int o) {
    std::int32_t best = 0;
    bool any = false;
    for (int l = t; l <= o; ++l) {
        std::int32_t v = m.at(i, l) + m.at(l + 1, j);
        if (!any || v > best) best = v;
        any = true;
    }
    return best;
}

// Maximum size of a non-crossing legal pair set on [i, j] that admits a cut
// somewhere in [t, o]. For non-crossing sets that is exactly the sets with
// no pair from positions <= t to positions > o: such a pair blocks every cut
// in [t, o], and an unsplittable set always contains one (grow the pair
// blocking cut t rightwards through nesting until it clears o). Exhaustive
// recursion over pair sets.
inline int constrained_enumerate(const frfold::RnaSequence& seq, const frfold::PairingRule& rule,
                                 int i, int j, int t, int o) {
    if (i >= j) return 0;
    int best = constrained_enumerate(seq, rule, i + 1, j, t, o);
    for (int q = i + 1; q <= j; ++q) {
        if (!rule.pair_allowed(seq, i, q)) continue;
        if (i <= t && q > o) continue;  // would block every cut in [t, o]
        int inside = constrained_enumerate(seq, rule, i + 1, q - 1, t, o);
        int outside = constrained_enumerate(seq, rule, q + 1, j, t, o);
        best = std::max(best, 1 + inside + outside);
    }
    return best;
}

// Independent evaluation of a central-table entry by literal enumeration of
// the prefix sums, leftmost maximizer.
inline std::pair<int, int> central_by_enumeration(const std::vector<int>& u, const std::vector<int>& v) {
    const int w = static_cast<int>(u.size());
    int best_t = 1;
    int best = 0;
    std::vector<int> prefix(static_cast<std::size_t>(w) + 1, 0);
    for (int t = 1; t <= w; ++t) {
        prefix[t] = prefix[t - 1] + u[static_cast<std::size_t>(t) - 1] - v[static_cast<std::size_t>(t) - 1];
        if (t == 1 || prefix[t] > best) {
            best = prefix[t];
            best_t = t;
        }
    }
    int dev = 0;
    for (int c = 2; c <= best_t; ++c) dev += u[static_cast<std::size_t>(c) - 1] - v[static_cast<std::size_t>(c) - 1];
    return {best_t, dev};
}

}  // namespace testutil

#endif
