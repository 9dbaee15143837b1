#include "frfold/fr_fold.hpp"

#include <cassert>
#include <stdexcept>

namespace frfold {

namespace {

// Solver state for one run; owns the storage complex while it is being
// filled. The column sweep is: j ascending, i descending from j-1 to 1.
struct FrSolver {
    const RnaSequence& seq;
    const PairingRule& rule;
    BlockTables& t;

    FrSolver(const RnaSequence& s, const PairingRule& r, BlockTables& tables)
        : seq(s), rule(r), t(tables) {}

    int block_of(int pos) const { return (pos - 1) / t.w; }

    // M[i, j-1] for the current column j. Sources, in order: same-block span
    // (D), a column of the block currently swept (G), or the closing column
    // of the previous block (prev_close).
    std::int32_t m_left(int i, int j, int bj) const {
        const int jm = j - 1;
        if (i >= jm) return 0;
        if (block_of(jm) == block_of(i)) return t.d_at(i, jm - i + 1);
        if (block_of(jm) == bj) return t.g[(static_cast<std::size_t>(i) - 1) * t.w + (jm - bj * t.w - 1)];
        return t.prev_close[i];
    }

    std::int32_t cell_value(int i, int j, int bj) {
        const int w = t.w;
        const int bi = block_of(i);
        std::int32_t best = t.ncol[i + 1];                   // M[i+1, j]
        best = std::max(best, m_left(i, j, bj));             // M[i, j-1]
        if (rule.pair_allowed(seq, i, j)) {
            std::int32_t inner = (i + 1 >= j - 1) ? 0 : m_left(i + 1, j, bj);
            best = std::max(best, inner + 1);
        }
        if (bi == bj) {
            // Case 1: whole split range inside one block.
            for (int p = i; p < j; ++p) {
                best = std::max(best, t.d_at(i, p - i + 1) + t.ncol[p + 1]);
                ++t.counters.inner_iterations;
            }
            return best;
        }
        // Left boundary: splits with p in i's block.
        const int bi_end = (bi + 1) * w;
        for (int p = i; p <= bi_end; ++p) {
            best = std::max(best, t.d_at(i, p - i + 1) + t.ncol[p + 1]);
            if (bj == bi + 1) ++t.counters.inner_iterations;
        }
        // Right boundary: splits with p in j's block (earlier columns, in G).
        for (int p = bj * w + 1; p < j; ++p) {
            best = std::max(best, t.g[(static_cast<std::size_t>(i) - 1) * w + (p - bj * w - 1)] + t.ncol[p + 1]);
            if (bj == bi + 1) ++t.counters.inner_iterations;
        }
        // Case 3: one central-table query per full block strictly between.
        for (int f = bi + 1; f <= bj - 1; ++f) {
            CentralEntry entry = t.central->lookup(t.lt_at(i, f), t.rt_at(j, f));
            ++t.counters.central_queries;
            ++t.counters.inner_iterations;
            best = std::max(best, entry.dev + t.e_at(i, f) + t.f_at(f, j));
        }
        return best;
    }

    void run() {
        const int n = t.n;
        const int w = t.w;
        for (int j = 1; j <= n; ++j) {
            const int bj = block_of(j);
            t.ncol[j] = 0;
            for (int i = j - 1; i >= 1; --i) {
                const std::int32_t value = cell_value(i, j, bj);
                t.ncol[i] = value;
                t.g[(static_cast<std::size_t>(i) - 1) * w + (j - bj * w - 1)] = value;
                if (block_of(i) == bj) t.d[(static_cast<std::size_t>(i) - 1) * (w + 1) + (j - i + 1)] = value;
                if ((i - 2) >= 0 && (i - 2) % w == 0) {
                    t.f[static_cast<std::size_t>((i - 2) / w) * n + (j - 1)] = value;  // M[f*w+2, j]
                }
                if ((i - 1) % w == 0) {
                    const int s = (i - 1) / w;
                    if ((s + 1) * w < j) write_rt(j, s);
                }
            }
            if (j == bj * w + 1) {
                for (int i = 1; i <= j; ++i) t.e[t.idx_nk(i, bj)] = t.ncol[i];  // M[i, bj*w+1]
            }
            if (j == (bj + 1) * w) close_block(bj, j);
        }
        t.counters.note_words(t.table_words());
    }

    // Encode column j's difference vector over block s from the live column.
    void write_rt(int j, int s) {
        const int w = t.w;
        std::uint64_t bits = 0;
        for (int q = 1; q <= w; ++q) {
            const int diff = t.ncol[s * w + q] - t.ncol[s * w + q + 1];
            assert(diff == 0 || diff == 1);
            bits |= static_cast<std::uint64_t>(diff) << (q - 1);
        }
        t.rt[t.idx_nk(j, s)] = bits;
    }

    // Column j = (b+1)*w just finished: encode the left vectors of block b
    // for every row above it, then snapshot the closing column.
    void close_block(int b, int j) {
        const int w = t.w;
        for (int i = 1; i <= b * w; ++i) {
            std::uint64_t bits = 0;
            std::int32_t prev = t.prev_close[i];  // M[i, b*w]
            for (int q = 1; q <= w; ++q) {
                const std::int32_t cur = t.g[(static_cast<std::size_t>(i) - 1) * w + (q - 1)];
                const int diff = cur - prev;
                assert(diff == 0 || diff == 1);
                bits |= static_cast<std::uint64_t>(diff) << (q - 1);
                prev = cur;
            }
            t.lt[t.idx_nk(i, b)] = bits;
        }
        for (int i = 1; i <= j; ++i) t.prev_close[i] = t.ncol[i];
    }
};

}  // namespace

BlockTables run_fr_dp(const RnaSequence& seq, const PairingRule& rule, std::optional<int> w_override) {
    const int n = seq.size();
    BlockTables t;
    t.n = n;
    t.w = w_override.value_or(default_block_width(n));
    t.part = BlockPartition::make(std::max(n, 1), t.w);
    t.k = t.part.k;
    if (n == 0) return t;

    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t kk = static_cast<std::size_t>(t.k);
    const std::size_t ww = static_cast<std::size_t>(t.w);
    t.lt.assign(nn * kk, 0);
    t.rt.assign(nn * kk, 0);
    t.d.assign(nn * (ww + 1), 0);
    t.e.assign(nn * kk, 0);
    t.f.assign(kk * nn, 0);
    t.g.assign(nn * ww, 0);
    t.ncol.assign(nn + 2, 0);
    t.prev_close.assign(nn + 1, 0);
    t.central = precompute_central(t.w, &t.counters);

    t.max_single_table_cells = std::max<std::uint64_t>(
        {t.lt.size(), t.rt.size(), t.d.size(), t.e.size(), t.f.size(), t.g.size(), t.ncol.size(),
         t.prev_close.size()});
    // Structural space contract: no folding-matrix table is n x n; every one
    // is n x k, n x (w+1) or linear.
    assert(t.max_single_table_cells <= nn * (nn / ww + ww + 2));
    t.counters.note_words(t.table_words());

    FrSolver solver(seq, rule, t);
    solver.run();
    return t;
}

std::int32_t reconstruct_m(const BlockTables& t, int i, int j) {
    if (i > t.n || j > t.n || i < 1 || j < 1) {
        throw std::invalid_argument("reconstruct_m: position out of range");
    }
    if (i >= j) return 0;
    const int w = t.w;
    const int bi = (i - 1) / w;
    if (bi == (j - 1) / w) return t.d_at(i, j - i + 1);
    const std::uint64_t bits = t.rt_at(j, bi);
    const std::int32_t anchor = t.f_at(bi, j);  // M[bi*w+2, j]
    const int q = i - bi * w;
    if (q == 1) return anchor + vec_bit(bits, 1);
    std::int32_t val = anchor;
    for (int l = 2; l < q; ++l) val -= vec_bit(bits, l);
    return val;
}

namespace {

struct TbContext {
    const BlockTables& t;
    const RnaSequence& seq;
    const PairingRule& rule;
    std::vector<std::int32_t> o, q;  // reused across all recursion levels
    TracebackStats stats;

    TbContext(const BlockTables& tables, const RnaSequence& s, const PairingRule& r)
        : t(tables), seq(s), rule(r), o(static_cast<std::size_t>(tables.n) + 2, 0),
          q(static_cast<std::size_t>(tables.n) + 2, 0) {}

    int block_of(int pos) const { return (pos - 1) / t.w; }
    bool closed(int s) const { return (s + 1) * t.w <= t.n; }

    // o[p] = M[i, p] for p in [i, j-1]: same-block spans from D, then one
    // anchor + difference-vector walk per block, falling back to per-cell
    // reconstruction for the final (never-closed) short block.
    void fill_o(int i, int j) {
        const int w = t.w;
        const int bi = block_of(i);
        int p = i;
        for (; p < j && block_of(p) == bi; ++p) {
            o[p] = t.d_at(i, p - i + 1);
            ++stats.steps;
        }
        while (p < j) {
            const int s = block_of(p);
            if (!closed(s)) {
                for (; p < j; ++p) {
                    o[p] = reconstruct_m(t, i, p);
                    ++stats.steps;
                }
                break;
            }
            const std::uint64_t bits = t.lt_at(i, s);
            std::int32_t val = t.e_at(i, s);  // M[i, s*w+1]
            o[p] = val;
            ++stats.steps;
            ++p;
            for (int c = 2; c <= w && p < j; ++c, ++p) {
                val += vec_bit(bits, c);
                o[p] = val;
                ++stats.steps;
            }
        }
    }

    // q[x] = M[x, j] for x in [i+1, j]: per-block anchor F + Rt bits, D for
    // the block containing j.
    void fill_q(int i, int j) {
        const int w = t.w;
        const int bj = block_of(j);
        int x = i + 1;
        while (x <= j && block_of(x) != bj) {
            const int s = block_of(x);
            const std::uint64_t bits = t.rt_at(j, s);
            std::int32_t val = t.f_at(s, j) + vec_bit(bits, 1);  // M[s*w+1, j]
            const int q0 = x - s * w;
            for (int c = 2; c <= q0; ++c) val -= vec_bit(bits, c - 1);
            q[x] = val;
            ++stats.steps;
            ++x;
            for (int c = q0 + 1; c <= w; ++c, ++x) {
                val -= vec_bit(bits, c - 1);
                q[x] = val;
                ++stats.steps;
            }
        }
        for (; x <= j; ++x) {
            q[x] = t.d_at(x, j - x + 1);
            ++stats.steps;
        }
    }

    void trace(int i, int j, SecondaryStructure& out) {
        ++stats.nodes;
        if (i >= j) return;
        fill_o(i, j);
        fill_q(i, j);
        const std::int32_t c = reconstruct_m(t, i, j);
        if (c == o[j - 1]) {  // M[i, j-1]
            trace(i, j - 1, out);
            return;
        }
        if (c == q[i + 1]) {  // M[i+1, j]
            trace(i + 1, j, out);
            return;
        }
        if (rule.pair_allowed(seq, i, j) && c == reconstruct_m(t, i + 1, j - 1) + 1) {
            out.add(i, j);
            trace(i + 1, j - 1, out);
            return;
        }
        int split = -1;
        for (int p = i; p < j; ++p) {
            ++stats.steps;
            if (c == o[p] + q[p + 1]) {
                split = p;
                break;
            }
        }
        if (split < 0) throw InternalError("traceback_fr: no recurrence case matches reconstructed cell");
        trace(i, split, out);
        trace(split + 1, j, out);
    }
};

}  // namespace

SecondaryStructure traceback_fr(const BlockTables& t, const RnaSequence& seq, const PairingRule& rule,
                                int i, int j, TracebackStats* stats) {
    SecondaryStructure out;
    if (t.n == 0) return out;
    TbContext ctx(t, seq, rule);
    ctx.trace(i, j, out);
    out.normalize();
    if (stats) *stats = ctx.stats;
    return out;
}

FoldResult fold_fr(const RnaSequence& seq, const PairingRule& rule, std::optional<int> w_override) {
    FoldResult result;
    BlockTables t = run_fr_dp(seq, rule, w_override);
    if (t.n > 0) {
        result.score = reconstruct_m(t, 1, t.n);
        result.structure = traceback_fr(t, seq, rule, 1, t.n);
        t.counters.note_words(t.table_words());
    }
    result.counters = t.counters;
    return result;
}

}  // namespace frfold
