#ifndef FRFOLD_FR2_FOLD_HPP
#define FRFOLD_FR2_FOLD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "frfold/diffvec.hpp"
#include "frfold/nussinov.hpp"
#include "frfold/structure.hpp"

namespace frfold {

// ---------------------------------------------------------------------------
// Partial results.
//
// P[i, j, t, o] = max over splits l in [t, o] of M[i, l] + M[l+1, j]. For a
// fixed column j and block of rows i, the w values of P step by 0 or 1 as i
// decreases, so a block's worth is one difference vector plus one anchored
// deviation. Vector component l (1 <= l <= w-1) is
// P[base+l, ...] - P[base+l+1, ...]; the deviation is anchored at the
// block's last row: dev = P[(s+1)w, j, t, j-1] - M[(s+1)w, j-1].
// ---------------------------------------------------------------------------

struct PartialEntry {
    std::uint64_t vec = 0;
    std::int32_t dev = 0;
    bool valid = false;
};

// Central partial entry for a row-block/split-block pair: the family
// P[row, j, s2*w+1, (s2+1)*w] over the w rows of block s1, relative to
// W = M[(s1+1)w, (s2+1)w] + M[(s2+1)w+1, j]. Depends on j only through the
// (j, s2) right difference vector, which is why it can be precomputed for
// all 2^w vector values when block s2 closes.
struct CpEntry {
    std::uint64_t vec = 0;
    std::int8_t dev = 0;
};

// Pure evaluation of one central-partial entry from its three vector inputs:
// u_right   the (j, s2) right difference vector (enumerated at precompute),
// x_left    the ((s1+1)w, s2) left difference vector,
// v_rows    the (s2*w+m, s1) right difference vectors for m = 1..w.
CpEntry compute_partial_central(int w, std::uint64_t u_right, std::uint64_t x_left,
                                const std::vector<std::uint64_t>& v_rows,
                                CounterSet* counters = nullptr);

struct UpdationValue {
    std::uint64_t vec = 0;
    std::int32_t dev = 0;
};

// The updation table combines two compressed partial families in O(1):
//   A1[q] = d1 + suffix(u1, q)        splits right of the processed block
//   A2[q] = (d2 - n) + suffix(u2, q)  splits inside the processed block
// and re-compresses max(A1, A2). Dense precomputation over all
// (n+1)(2n+1)4^w keys when that fits the memory budget; otherwise entries
// are computed on first use and cached (result-identical). A run owns its
// table; a dense table is immutable and shareable across runs of equal
// (n, w).
class UpdationTable {
public:
    enum class Mode { dense, cached };

    UpdationTable(int n, int w, std::uint64_t budget_bytes, CounterSet* counters);

    static UpdationValue compute(int n, int w, int d1, int d2, std::uint64_t u1, std::uint64_t u2,
                                 CounterSet* counters = nullptr);

    UpdationValue query(int d1, int d2, std::uint64_t u1, std::uint64_t u2) const;

    Mode mode() const { return mode_; }
    const char* mode_name() const { return mode_ == Mode::dense ? "dense" : "cached"; }
    std::uint64_t word_count() const;

private:
    std::size_t dense_index(int d1, int d2, std::uint64_t u1, std::uint64_t u2) const;

    int n_;
    int w_;
    Mode mode_;
    std::vector<std::uint8_t> dense_vec_;
    std::vector<std::uint16_t> dense_dev_;

    struct Key {
        std::uint64_t d;
        std::uint64_t u1;
        std::uint64_t u2;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t x = k.d * 0x9E3779B97F4A7C15ull;
            x ^= x >> 32;
            x += k.u1 * 0xBF58476D1CE4E5B9ull;
            x ^= x >> 29;
            x += k.u2 * 0x94D049BB133111EBull;
            x ^= x >> 31;
            return static_cast<std::size_t>(x);
        }
    };
    mutable std::unordered_map<Key, UpdationValue, KeyHash> cache_;
    std::size_t cache_cap_ = 0;
};

struct Fr2Options {
    // Cap for dense updation-table materialization, in bytes. Defaults to
    // FRFOLD_MEM_BUDGET_MB (2048 MB when unset).
    std::uint64_t budget_bytes = 0;
    // When set, every partial-table store and central-partial query is
    // cross-checked against this reference table; mismatches throw.
    const FullDpTable* verify_oracle = nullptr;
};

std::uint64_t default_mem_budget_bytes();

// Storage complex of the two-log solver: the full result table M_r plus the
// compressed partial machinery.
struct Fr2Tables {
    int n = 0;
    int w = 1;
    int k = 1;
    bool machinery = true;  // false: blockwise acceleration disabled (cp over budget)

    std::vector<std::int32_t> mr;        // n*n, row-major; cells i <= j used
    std::vector<std::uint64_t> lt, rt;   // n*k, as in the one-log solver
    std::vector<PartialEntry> rp;        // n*k
    std::vector<CpEntry> cp;             // k*k*2^w
    std::shared_ptr<UpdationTable> up;
    CounterSet counters;

    std::int32_t m(int i, int j) const {
        if (i >= j) return 0;
        return mr[(static_cast<std::size_t>(i) - 1) * n + (j - 1)];
    }

    const PartialEntry& rp_at(int j, int s) const {
        return rp[(static_cast<std::size_t>(j) - 1) * k + s];
    }
    const CpEntry& cp_at(int s1, int s2, std::uint64_t u) const {
        return cp[((static_cast<std::size_t>(s1) * k + s2) << w) | u];
    }
    std::uint64_t rt_at(int j, int s) const { return rt[(static_cast<std::size_t>(j) - 1) * k + s]; }
    std::uint64_t lt_at(int i, int s) const { return lt[(static_cast<std::size_t>(i) - 1) * k + s]; }

    std::uint64_t table_words() const {
        return static_cast<std::uint64_t>(mr.size()) + lt.size() + rt.size() + 2 * rp.size() +
               2 * cp.size() + (up ? up->word_count() : 0);
    }
};

Fr2Tables run_fr2_dp(const RnaSequence& seq, const PairingRule& rule,
                     std::optional<int> w_override = std::nullopt, const Fr2Options& options = {});

FoldResult fold_fr2(const RnaSequence& seq, const PairingRule& rule,
                    std::optional<int> w_override = std::nullopt, const Fr2Options& options = {});

}  // namespace frfold

#endif
