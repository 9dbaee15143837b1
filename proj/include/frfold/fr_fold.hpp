#ifndef FRFOLD_FR_FOLD_HPP
#define FRFOLD_FR_FOLD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "frfold/central.hpp"
#include "frfold/diffvec.hpp"
#include "frfold/nussinov.hpp"
#include "frfold/structure.hpp"

namespace frfold {

// Storage complex of the memory-efficient solver. No table here ever has
// n x n integer cells; rows and columns of the folding matrix are kept as
// one-word difference vectors plus a thin set of anchor tables:
//
//   Lt[i][s]  encoded left difference vector of row i across block s
//   Rt[j][s]  encoded right difference vector of column j across block s
//   D[i][len] M[i, i+len-1] for spans that stay inside one block (len <= w)
//   E[i][f]   M[i, f*w+1]   (row i at each block's first column)
//   F[f][j]   M[f*w+2, j]   (each block's second row, all columns)
//   G[i][q]   M[i, b*w+q]   rolling copy of the block b currently being swept
//   N[i]      M[i, j]       current column
//   prev_close[i]           column b*w (last column of the previous block)
//
// After the run, reconstruct_m / traceback_fr recover any cell from Lt, Rt,
// D, E, F alone.
struct BlockTables {
    int n = 0;
    int w = 1;
    int k = 1;
    BlockPartition part;

    std::vector<std::uint64_t> lt, rt;   // n*k
    std::vector<std::int32_t> d;         // n*(w+1)
    std::vector<std::int32_t> e;         // n*k
    std::vector<std::int32_t> f;         // k*n
    std::vector<std::int32_t> g;         // n*w
    std::vector<std::int32_t> ncol;      // n+2
    std::vector<std::int32_t> prev_close;  // n+1

    std::shared_ptr<const CentralTable> central;
    CounterSet counters;

    // Largest single allocation, in cells; the structural no-quadratic-table
    // guarantee is asserted against this.
    std::uint64_t max_single_table_cells = 0;

    std::uint64_t lt_at(int i, int s) const { return lt[idx_nk(i, s)]; }
    std::uint64_t rt_at(int j, int s) const { return rt[idx_nk(j, s)]; }
    std::int32_t d_at(int i, int len) const { return d[(static_cast<std::size_t>(i) - 1) * (w + 1) + len]; }
    std::int32_t e_at(int i, int s) const { return e[idx_nk(i, s)]; }
    std::int32_t f_at(int s, int j) const { return f[static_cast<std::size_t>(s) * n + j - 1]; }

    std::size_t idx_nk(int pos, int s) const {
        return (static_cast<std::size_t>(pos) - 1) * k + static_cast<std::size_t>(s);
    }

    std::uint64_t table_words() const {
        return static_cast<std::uint64_t>(lt.size()) + rt.size() + d.size() + e.size() + f.size() +
               g.size() + ncol.size() + prev_close.size() + (central ? central->word_count() : 0);
    }
};

// Runs the block DP over the whole sequence and returns the storage complex
// with counters populated. Exposed separately from fold_fr so tests can
// inspect the tables afterwards.
BlockTables run_fr_dp(const RnaSequence& seq, const PairingRule& rule,
                      std::optional<int> w_override = std::nullopt);

// Recovers M[i, j] from the compressed tables; requires the DP to have
// completed column j. Same-block cells come from D, others from the F anchor
// of column j plus a prefix of Rt difference bits.
std::int32_t reconstruct_m(const BlockTables& t, int i, int j);

struct TracebackStats {
    std::uint64_t nodes = 0;  // recursive invocations
    std::uint64_t steps = 0;  // split candidates scanned / array cells filled
};

// Recursive traceback over the compressed tables: O(n^2) time, O(n)
// additional space (two scratch arrays reused across the recursion).
SecondaryStructure traceback_fr(const BlockTables& t, const RnaSequence& seq,
                                const PairingRule& rule, int i, int j,
                                TracebackStats* stats = nullptr);

FoldResult fold_fr(const RnaSequence& seq, const PairingRule& rule,
                   std::optional<int> w_override = std::nullopt);

}  // namespace frfold

#endif
