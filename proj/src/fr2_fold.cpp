#include "frfold/fr2_fold.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace frfold {

std::uint64_t default_mem_budget_bytes() {
    std::uint64_t mb = 2048;
    if (const char* env = std::getenv("FRFOLD_MEM_BUDGET_MB")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) mb = parsed;
    }
    return mb * 1024ull * 1024ull;
}

CpEntry compute_partial_central(int w, std::uint64_t u_right, std::uint64_t x_left,
                                const std::vector<std::uint64_t>& v_rows, CounterSet* counters) {
    if (static_cast<int>(v_rows.size()) != w) {
        throw std::invalid_argument("compute_partial_central: need one row vector per block position");
    }
    // tail(sc) = sum_{l=sc+1..w} (U(l) - X(l)); suffix sums keep each J O(1).
    std::vector<int> tail(static_cast<std::size_t>(w) + 2, 0);
    for (int sc = w - 1; sc >= 0; --sc) {
        tail[sc] = tail[sc + 1] + vec_bit(u_right, sc + 1) - vec_bit(x_left, sc + 1);
    }
    std::vector<int> suff_v(static_cast<std::size_t>(w) + 2, 0);
    std::vector<int> p_rel(static_cast<std::size_t>(w) + 1, 0);
    bool first = true;
    for (int sc = 1; sc <= w; ++sc) {
        const std::uint64_t v = v_rows[static_cast<std::size_t>(sc) - 1];
        suff_v[w] = 0;
        for (int l = w - 1; l >= 1; --l) suff_v[l] = suff_v[l + 1] + vec_bit(v, l);
        for (int sb = 1; sb <= w; ++sb) {
            const int val = tail[sc] + suff_v[sb];  // J(sb, sc) - W
            if (first || val > p_rel[sb]) p_rel[sb] = val;
            if (counters) ++counters->precompute_steps;
        }
        first = false;
    }
    CpEntry entry;
    for (int l = 1; l < w; ++l) {
        const int diff = p_rel[l] - p_rel[l + 1];
        assert(diff == 0 || diff == 1);
        entry.vec |= static_cast<std::uint64_t>(diff) << (l - 1);
    }
    assert(p_rel[w] >= 0 && p_rel[w] <= w);
    entry.dev = static_cast<std::int8_t>(p_rel[w]);
    return entry;
}

UpdationValue UpdationTable::compute(int n, int w, int d1, int d2, std::uint64_t u1, std::uint64_t u2,
                                     CounterSet* counters) {
    // Walk q downward keeping both suffix sums incrementally.
    UpdationValue out;
    int a1 = d1;
    int a2 = d2 - n;
    int prev = std::max(a1, a2);  // q = w
    out.dev = prev;
    for (int q = w - 1; q >= 1; --q) {
        a1 += vec_bit(u1, q);
        a2 += vec_bit(u2, q);
        const int cur = std::max(a1, a2);
        const int diff = cur - prev;
        assert(diff == 0 || diff == 1);
        out.vec |= static_cast<std::uint64_t>(diff) << (q - 1);
        prev = cur;
        if (counters) ++counters->precompute_steps;
    }
    return out;
}

UpdationTable::UpdationTable(int n, int w, std::uint64_t budget_bytes, CounterSet* counters)
    : n_(n), w_(w) {
    bool dense_ok = w <= 8 && n <= 65534;  // keeps the key arithmetic narrow too
    std::uint64_t keys = 0;
    if (dense_ok) {
        keys = static_cast<std::uint64_t>(n + 1) * (2 * static_cast<std::uint64_t>(n) + 1) << (2 * w);
        // A run issues about n^3/w^2 queries; a dense table bigger than that
        // costs more to build than it can ever save.
        const std::uint64_t query_volume =
            static_cast<std::uint64_t>(n) * n * n / (static_cast<std::uint64_t>(w) * w);
        dense_ok = keys * 3 <= budget_bytes && keys <= query_volume;
    }
    mode_ = dense_ok ? Mode::dense : Mode::cached;
    if (mode_ == Mode::dense) {
        dense_vec_.resize(keys);
        dense_dev_.resize(keys);
        std::size_t idx = 0;
        for (int d1 = 0; d1 <= n; ++d1) {
            for (int d2 = 0; d2 <= 2 * n; ++d2) {
                for (std::uint64_t u1 = 0; u1 < (std::uint64_t{1} << w); ++u1) {
                    for (std::uint64_t u2 = 0; u2 < (std::uint64_t{1} << w); ++u2, ++idx) {
                        UpdationValue v = compute(n, w, d1, d2, u1, u2, counters);
                        dense_vec_[idx] = static_cast<std::uint8_t>(v.vec);
                        dense_dev_[idx] = static_cast<std::uint16_t>(v.dev);
                    }
                }
            }
        }
    } else {
        cache_cap_ = static_cast<std::size_t>(budget_bytes / 64);
    }
}

std::size_t UpdationTable::dense_index(int d1, int d2, std::uint64_t u1, std::uint64_t u2) const {
    const std::size_t base = static_cast<std::size_t>(d1) * (2 * static_cast<std::size_t>(n_) + 1) + d2;
    return (base << (2 * w_)) | (u1 << w_) | u2;
}

UpdationValue UpdationTable::query(int d1, int d2, std::uint64_t u1, std::uint64_t u2) const {
    if (mode_ == Mode::dense) {
        const std::size_t idx = dense_index(d1, d2, u1, u2);
        return {dense_vec_[idx], dense_dev_[idx]};
    }
    const Key key{(static_cast<std::uint64_t>(d1) << 33) | static_cast<std::uint64_t>(d2), u1, u2};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    UpdationValue v = compute(n_, w_, d1, d2, u1, u2);
    if (cache_.size() < cache_cap_) cache_.emplace(key, v);
    return v;
}

std::uint64_t UpdationTable::word_count() const {
    return mode_ == Mode::dense ? 2 * dense_vec_.size() : 2 * cache_.size();
}

namespace {

struct Fr2Solver {
    const RnaSequence& seq;
    const PairingRule& rule;
    Fr2Tables& t;
    const FullDpTable* verify;
    std::vector<std::int32_t> partial_col;  // P[i, j, s*w+1, j-1] scratch, step 5

    Fr2Solver(const RnaSequence& s, const PairingRule& r, Fr2Tables& tables, const FullDpTable* v)
        : seq(s), rule(r), t(tables), verify(v),
          partial_col(static_cast<std::size_t>(tables.n) + 1, 0) {}

    int block_of(int pos) const { return (pos - 1) / t.w; }

    void set_m(int i, int j, std::int32_t v) {
        t.mr[(static_cast<std::size_t>(i) - 1) * t.n + (j - 1)] = v;
    }

    // Brute-force partial optimal result from the reference table (only used
    // by the verify hook).
    std::int32_t oracle_partial(int i, int j, int lo, int hi) const {
        std::int32_t best = 0;
        bool any = false;
        for (int l = lo; l <= hi; ++l) {
            const std::int32_t v = verify->at(i, l) + verify->at(l + 1, j);
            if (!any || v > best) best = v;
            any = true;
        }
        return best;
    }

    void verify_rp(int j, int s, int frontier) const {
        if (!verify) return;
        const PartialEntry& entry = t.rp_at(j, s);
        const int w = t.w;
        const int last = (s + 1) * w;
        const std::int32_t anchor = oracle_partial(last, j, frontier, j - 1);
        if (entry.dev != anchor - verify->at(last, j - 1)) {
            throw InternalError("fr2 verify: partial deviation mismatch at j=" + std::to_string(j) +
                                " s=" + std::to_string(s));
        }
        for (int l = 1; l < w; ++l) {
            const std::int32_t hi = oracle_partial(s * w + l, j, frontier, j - 1);
            const std::int32_t lo = oracle_partial(s * w + l + 1, j, frontier, j - 1);
            if (vec_bit(entry.vec, l) != hi - lo) {
                throw InternalError("fr2 verify: partial vector mismatch at j=" + std::to_string(j) +
                                    " s=" + std::to_string(s));
            }
        }
    }

    void verify_cp(int j, int g, int y, const CpEntry& entry) const {
        if (!verify) return;
        const int w = t.w;
        const int lo = y * w + 1;
        const int hi = (y + 1) * w;
        const std::int32_t base = verify->at((g + 1) * w, hi) + verify->at(hi + 1, j);
        if (entry.dev != oracle_partial((g + 1) * w, j, lo, hi) - base) {
            throw InternalError("fr2 verify: central partial deviation mismatch");
        }
        for (int l = 1; l < w; ++l) {
            const std::int32_t a = oracle_partial(g * w + l, j, lo, hi);
            const std::int32_t b = oracle_partial(g * w + l + 1, j, lo, hi);
            if (vec_bit(entry.vec, l) != a - b) {
                throw InternalError("fr2 verify: central partial vector mismatch");
            }
        }
    }

    // Full-recurrence evaluation of one cell with splits read straight from
    // M_r and the live column. Used for columns in the first two blocks and
    // for rows in the block containing j.
    std::int32_t exhaustive_cell(int i, int j) {
        std::int32_t best = t.m(i + 1, j);
        best = std::max(best, t.m(i, j - 1));
        if (rule.pair_allowed(seq, i, j)) best = std::max(best, t.m(i + 1, j - 1) + 1);
        for (int p = i; p < j; ++p) {
            best = std::max(best, t.m(i, p) + t.m(p + 1, j));
            ++t.counters.inner_iterations;
        }
        return best;
    }

    void write_rt(int j, int s) {
        const int w = t.w;
        std::uint64_t bits = 0;
        for (int q = 1; q <= w; ++q) {
            const int diff = t.m(s * w + q, j) - t.m(s * w + q + 1, j);
            assert(diff == 0 || diff == 1);
            bits |= static_cast<std::uint64_t>(diff) << (q - 1);
        }
        t.rt[(static_cast<std::size_t>(j) - 1) * t.k + s] = bits;
    }

    void exhaustive_column(int j) {
        for (int i = j - 1; i >= 1; --i) set_m(i, j, exhaustive_cell(i, j));
        for (int s = 0; (s + 1) * t.w < j; ++s) write_rt(j, s);
    }

    // Finalizes block y for column j: within-block splits exhaustively,
    // everything right of the block through the stored partial family.
    void finalize_block(int j, int y) {
        const int w = t.w;
        const PartialEntry& entry = t.rp_at(j, y);
        const std::int32_t anchor =
            entry.valid ? t.m((y + 1) * w, j - 1) + entry.dev : 0;
        std::int32_t suffix = 0;  // sum of entry.vec bits l = q0..w-1
        for (int i = (y + 1) * w; i >= y * w + 1; --i) {
            std::int32_t best = t.m(i + 1, j);
            best = std::max(best, t.m(i, j - 1));
            if (rule.pair_allowed(seq, i, j)) best = std::max(best, t.m(i + 1, j - 1) + 1);
            for (int q = i; q <= (y + 1) * w; ++q) {
                best = std::max(best, t.m(i, q) + t.m(q + 1, j));
                ++t.counters.inner_iterations;
            }
            if (entry.valid) best = std::max(best, anchor + suffix);
            set_m(i, j, best);
            const int q0 = i - y * w;  // next row uses suffix from q0-1
            if (q0 - 1 >= 1) suffix += vec_bit(entry.vec, q0 - 1);
        }
        write_rt(j, y);
    }

    // One O(1) frontier extension of block g's partial family across the
    // just-finalized block y.
    void update_rp(int j, int g, int y) {
        const int w = t.w;
        const CpEntry& cp = t.cp_at(g, y, t.rt_at(j, y));
        ++t.counters.central_queries;
        verify_cp(j, g, y, cp);
        const std::int32_t d2 = t.m((g + 1) * w, (y + 1) * w) + t.m((y + 1) * w + 1, j) -
                                t.m((g + 1) * w, j - 1) + cp.dev + t.n;
        assert(d2 >= 0 && d2 <= 2 * t.n);
        PartialEntry& slot = t.rp[(static_cast<std::size_t>(j) - 1) * t.k + g];
        if (slot.valid) {
            assert(slot.dev >= 0 && slot.dev <= t.n);
            UpdationValue v = t.up->query(slot.dev, d2, slot.vec, cp.vec);
            ++t.counters.updation_queries;
            slot.vec = v.vec;
            slot.dev = v.dev;
        } else {
            // Only the first column of a block reaches here, where the
            // just-finalized block's split range is exactly [y*w+1, j-1].
            assert((y + 1) * w == j - 1);
            slot.vec = cp.vec;
            slot.dev = d2 - t.n;
            slot.valid = true;
        }
        verify_rp(j, g, y * w + 1);
    }

    void machinery_column(int j, int s) {
        const int w = t.w;
        // Rows of j's own block, full recurrence.
        for (int i = std::min(j - 1, (s + 1) * w); i >= s * w + 1; --i) {
            set_m(i, j, exhaustive_cell(i, j));
        }
        // Seed partial families against frontier s*w+1 for every lower block.
        if (j > s * w + 1) {
            for (int i = s * w; i >= 1; --i) {
                std::int32_t best = 0;
                bool any = false;
                for (int q = s * w + 1; q < j; ++q) {
                    const std::int32_t v = t.m(i, q) + t.m(q + 1, j);
                    if (!any || v > best) best = v;
                    any = true;
                    ++t.counters.inner_iterations;
                }
                partial_col[i] = best;
            }
            for (int h = 0; h <= s - 1; ++h) {
                PartialEntry& slot = t.rp[(static_cast<std::size_t>(j) - 1) * t.k + h];
                slot.vec = 0;
                for (int l = 1; l < w; ++l) {
                    const int diff = partial_col[h * w + l] - partial_col[h * w + l + 1];
                    assert(diff == 0 || diff == 1);
                    slot.vec |= static_cast<std::uint64_t>(diff) << (l - 1);
                }
                slot.dev = partial_col[(h + 1) * w] - t.m((h + 1) * w, j - 1);
                slot.valid = true;
                verify_rp(j, h, s * w + 1);
            }
        } else {
            for (int h = 0; h <= s - 1; ++h) {
                t.rp[(static_cast<std::size_t>(j) - 1) * t.k + h].valid = false;
            }
        }
        // Right-to-left sweep: finalize each block, then push every lower
        // block's frontier across it.
        for (int y = s - 1; y >= 0; --y) {
            finalize_block(j, y);
            for (int g = y - 1; g >= 0; --g) update_rp(j, g, y);
        }
    }

    // Block b just closed at column (b+1)*w: record left vectors and
    // precompute the central-partial rows for every pair (q, b).
    void close_block(int b) {
        const int w = t.w;
        for (int i = 1; i <= b * w; ++i) {
            std::uint64_t bits = 0;
            for (int q = 1; q <= w; ++q) {
                const int diff = t.m(i, b * w + q) - t.m(i, b * w + q - 1);
                assert(diff == 0 || diff == 1);
                bits |= static_cast<std::uint64_t>(diff) << (q - 1);
            }
            t.lt[(static_cast<std::size_t>(i) - 1) * t.k + b] = bits;
        }
        if (!t.machinery) return;
        std::vector<std::uint64_t> v_rows(static_cast<std::size_t>(w));
        for (int q = 0; q <= b - 1; ++q) {
            for (int m = 1; m <= w; ++m) v_rows[static_cast<std::size_t>(m) - 1] = t.rt_at(b * w + m, q);
            const std::uint64_t x_left = t.lt_at((q + 1) * w, b);
            for (std::uint64_t u = 0; u < (std::uint64_t{1} << w); ++u) {
                t.cp[((static_cast<std::size_t>(q) * t.k + b) << w) | u] =
                    compute_partial_central(w, u, x_left, v_rows, &t.counters);
            }
        }
    }

    void run() {
        const int n = t.n;
        for (int j = 1; j <= n; ++j) {
            const int s = block_of(j);
            if (!t.machinery || s <= 1) {
                exhaustive_column(j);
            } else {
                machinery_column(j, s);
            }
            if (j == (s + 1) * t.w) close_block(s);
        }
        t.counters.note_words(t.table_words());
    }
};

}  // namespace

Fr2Tables run_fr2_dp(const RnaSequence& seq, const PairingRule& rule, std::optional<int> w_override,
                     const Fr2Options& options) {
    const int n = seq.size();
    Fr2Tables t;
    t.n = n;
    t.w = w_override.value_or(default_block_width(n));
    if (t.w < 1 || t.w > kWordBits - 1) throw std::invalid_argument("fr2: block width out of range");
    t.k = n / t.w + 1;
    if (n == 0) return t;

    const std::uint64_t budget = options.budget_bytes ? options.budget_bytes : default_mem_budget_bytes();
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t kk = static_cast<std::size_t>(t.k);
    t.mr.assign(nn * nn, 0);
    t.lt.assign(nn * kk, 0);
    t.rt.assign(nn * kk, 0);
    t.rp.assign(nn * kk, PartialEntry{});
    // The central-partial cube must itself fit the budget; when a pathological
    // width makes it infeasible, every column falls back to the exhaustive
    // path (result-identical, just unaccelerated).
    const std::uint64_t cp_limit = budget / 2 / sizeof(CpEntry);
    t.machinery = t.w <= 40 && static_cast<std::uint64_t>(kk) * kk <= (cp_limit >> t.w);
    if (t.machinery) t.cp.assign((static_cast<std::uint64_t>(kk) * kk) << t.w, CpEntry{});
    t.up = std::make_shared<UpdationTable>(n, t.w, budget, &t.counters);
    t.counters.note_words(t.table_words());

    Fr2Solver solver(seq, rule, t, options.verify_oracle);
    solver.run();
    return t;
}

FoldResult fold_fr2(const RnaSequence& seq, const PairingRule& rule, std::optional<int> w_override,
                    const Fr2Options& options) {
    FoldResult result;
    Fr2Tables t = run_fr2_dp(seq, rule, w_override, options);
    if (t.n > 0) {
        result.score = t.m(1, t.n);
        auto m = [&t](int i, int j) { return t.m(i, j); };
        traceback_table(m, seq, rule, 1, t.n, result.structure);
        result.structure.normalize();
        t.counters.note_words(t.table_words());
    }
    result.counters = t.counters;
    return result;
}

}  // namespace frfold
