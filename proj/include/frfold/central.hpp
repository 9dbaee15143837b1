#ifndef FRFOLD_CENTRAL_HPP
#define FRFOLD_CENTRAL_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frfold/counters.hpp"
#include "frfold/diffvec.hpp"

namespace frfold {

// For a block strictly between i and j, the split offsets t = 1..w have
// values J(t) = M[i, sw+t] + M[sw+t+1, j] = J(0) + prefix_t(U - V), where U
// and V are the left and right difference vectors meeting at the block.
// The central table maps (U, V) to:
//   rep: the smallest t in [1, w] maximizing the prefix sum,
//   dev: J(rep) - J(1) = sum_{c=2..rep} (U(c) - V(c)).
// Adding dev to M[i, sw+1] + M[sw+2, j] yields the best split value through
// the block without touching any per-cell storage.
struct CentralEntry {
    std::uint8_t rep = 1;
    std::int8_t dev = 0;
};

// Direct O(w) evaluation of one entry.
inline CentralEntry central_compute(std::uint64_t u, std::uint64_t v, int w,
                                    CounterSet* counters = nullptr) {
    int prefix = 0;
    int best = 0;  // prefix sum at t = 1 is the baseline after the loop below
    int best_t = 1;
    for (int t = 1; t <= w; ++t) {
        prefix += vec_bit(u, t) - vec_bit(v, t);
        if (t == 1) {
            best = prefix;
        } else if (prefix > best) {
            best = prefix;
            best_t = t;
        }
        if (counters) ++counters->precompute_steps;
    }
    CentralEntry e;
    e.rep = static_cast<std::uint8_t>(best_t);
    int dev = 0;
    for (int c = 2; c <= e.rep; ++c) dev += vec_bit(u, c) - vec_bit(v, c);
    e.dev = static_cast<std::int8_t>(dev);
    return e;
}

// Query table over all (u, v) pairs of encoded difference vectors. Dense and
// fully precomputed for widths where 4^w entries are affordable; backed by a
// memoizing cache above that so absurd user-chosen widths stay usable.
// Immutable once built in dense mode; the cache requires single-writer use.
class CentralTable {
public:
    static constexpr int kDenseWidthLimit = 12;

    explicit CentralTable(int w, CounterSet* counters = nullptr) : w_(w) {
        if (w <= kDenseWidthLimit) {
            const std::uint64_t side = std::uint64_t{1} << w;
            dense_.resize(side * side);
            for (std::uint64_t u = 0; u < side; ++u) {
                for (std::uint64_t v = 0; v < side; ++v) {
                    dense_[(u << w_) | v] = central_compute(u, v, w, counters);
                }
            }
        }
    }

    int w() const { return w_; }

    CentralEntry lookup(std::uint64_t u, std::uint64_t v) const {
        if (!dense_.empty()) return dense_[(u << w_) | v];
        auto it = cache_.find({u, v});
        if (it != cache_.end()) return it->second;
        CentralEntry e = central_compute(u, v, w_);
        cache_.emplace(std::make_pair(u, v), e);
        return e;
    }

    std::uint64_t word_count() const {
        return dense_.empty() ? cache_.size() : dense_.size();
    }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
            std::uint64_t x = p.first * 0x9E3779B97F4A7C15ull;
            x ^= x >> 32;
            x += p.second * 0xBF58476D1CE4E5B9ull;
            x ^= x >> 29;
            return static_cast<std::size_t>(x);
        }
    };

    int w_;
    std::vector<CentralEntry> dense_;
    mutable std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, CentralEntry, PairHash> cache_;
};

inline std::shared_ptr<const CentralTable> precompute_central(int w, CounterSet* counters = nullptr) {
    if (w < 1 || w > kWordBits - 1) throw std::invalid_argument("central table width out of range");
    return std::make_shared<const CentralTable>(w, counters);
}

}  // namespace frfold

#endif
