#include "doctest.h"

#include <algorithm>

#include "frfold/bench.hpp"
#include "frfold/fr2_fold.hpp"
#include "frfold/nussinov.hpp"
#include "test_util.hpp"

using namespace frfold;

namespace {

// Two-family combination by literal enumeration, the way the updation-table
// contract states it.
UpdationValue updation_by_enumeration(int n, int w, int d1, int d2, std::uint64_t u1, std::uint64_t u2) {
    std::vector<int> p(static_cast<std::size_t>(w) + 1, 0);
    for (int q = 1; q <= w; ++q) {
        int a1 = d1, a2 = d2 - n;
        for (int l = q; l <= w - 1; ++l) {
            a1 += vec_bit(u1, l);
            a2 += vec_bit(u2, l);
        }
        p[q] = std::max(a1, a2);
    }
    UpdationValue out;
    out.dev = p[w];
    for (int l = 1; l < w; ++l) out.vec |= static_cast<std::uint64_t>(p[l] - p[l + 1]) << (l - 1);
    return out;
}

// Literal J(sb, sc) enumeration for the central-partial entry.
CpEntry cp_by_enumeration(int w, std::uint64_t u_right, std::uint64_t x_left,
                          const std::vector<std::uint64_t>& v_rows) {
    std::vector<int> p(static_cast<std::size_t>(w) + 1, 0);
    for (int sb = 1; sb <= w; ++sb) {
        bool first = true;
        for (int sc = 1; sc <= w; ++sc) {
            int j_rel = 0;
            for (int l = sc + 1; l <= w; ++l) j_rel += vec_bit(u_right, l) - vec_bit(x_left, l);
            for (int l = sb; l <= w - 1; ++l) j_rel += vec_bit(v_rows[static_cast<std::size_t>(sc) - 1], l);
            if (first || j_rel > p[sb]) p[sb] = j_rel;
            first = false;
        }
    }
    CpEntry out;
    out.dev = static_cast<std::int8_t>(p[w]);
    for (int l = 1; l < w; ++l) out.vec |= static_cast<std::uint64_t>(p[l] - p[l + 1]) << (l - 1);
    return out;
}

}  // namespace

TEST_CASE("updation combination fixed examples") {
    const int n = 40;
    {
        UpdationValue v = UpdationTable::compute(n, 3, 0, n, 0, 0);
        CHECK(v.dev == 0);
        CHECK(v.vec == 0);
    }
    {
        // u1 = [1,1,0]: the right-fragment family dominates everywhere
        const std::uint64_t u1 = encode_vector({1, 1, 0}, 3);
        UpdationValue v = UpdationTable::compute(n, 3, 0, n - 5, u1, 0);
        UpdationValue e = updation_by_enumeration(n, 3, 0, n - 5, u1, 0);
        CHECK(v.dev == e.dev);
        CHECK(v.vec == e.vec);
        CHECK(v.dev == 0);          // at q = w both families collapse to d1 vs d2-n
        CHECK(v.vec == 0b011);      // A1 gains u1's bits walking left
    }
}

TEST_CASE("updation combination matches enumeration on random keys") {
    for (int rep = 0; rep < 4000; ++rep) {
        const int w = 1 + testutil::pick(7, 4 * rep, 4);
        const int n = 30;
        const int d1 = testutil::pick(7, 4 * rep + 1, n + 1);
        const int d2 = testutil::pick(7, 4 * rep + 2, 2 * n + 1);
        const std::uint64_t u1 = testutil::mix64(rep * 2 + 1) & ((1u << (w - 1)) - 1);
        const std::uint64_t u2 = testutil::mix64(rep * 2 + 2) & ((1u << (w - 1)) - 1);
        UpdationValue a = UpdationTable::compute(n, w, d1, d2, u1, u2);
        UpdationValue b = updation_by_enumeration(n, w, d1, d2, u1, u2);
        CHECK(a.dev == b.dev);
        CHECK(a.vec == b.vec);
    }
}

TEST_CASE("updation table dense and cached modes agree") {
    const int n = 140, w = 2;  // large enough that dense materialization pays
    CounterSet counters;
    UpdationTable dense(n, w, 1ull << 30, &counters);
    UpdationTable cached(n, w, 16384, &counters);  // below the dense footprint
    REQUIRE(dense.mode() == UpdationTable::Mode::dense);
    REQUIRE(cached.mode() == UpdationTable::Mode::cached);
    CHECK(counters.precompute_steps > 0);
    for (int rep = 0; rep < 500; ++rep) {
        const int d1 = testutil::pick(17, 3 * rep, n + 1);
        const int d2 = testutil::pick(17, 3 * rep + 1, 2 * n + 1);
        const std::uint64_t u1 = testutil::mix64(rep) & 1u;
        const std::uint64_t u2 = testutil::mix64(rep + 9999) & 1u;
        UpdationValue a = dense.query(d1, d2, u1, u2);
        UpdationValue b = cached.query(d1, d2, u1, u2);
        CHECK(a.dev == b.dev);
        CHECK(a.vec == b.vec);
    }
    CHECK(cached.word_count() > 0);
}

TEST_CASE("compute_partial_central fixed and hand cases") {
    {
        std::vector<std::uint64_t> zeros(4, 0);
        CpEntry e = compute_partial_central(4, 0, 0, zeros);
        CHECK(e.dev == 0);
        CHECK(e.vec == 0);
    }
    {
        // w=2 hand case: U=[1,0], X=[0,1], V1=[0,0], V2=[1,0]
        const int w = 2;
        std::vector<std::uint64_t> v_rows = {encode_vector({0, 0}, w), encode_vector({1, 0}, w)};
        CpEntry got = compute_partial_central(w, encode_vector({1, 0}, w), encode_vector({0, 1}, w), v_rows);
        CpEntry want = cp_by_enumeration(w, encode_vector({1, 0}, w), encode_vector({0, 1}, w), v_rows);
        CHECK(got.dev == want.dev);
        CHECK(got.vec == want.vec);
    }
}

TEST_CASE("compute_partial_central matches enumeration on random vectors") {
    for (int rep = 0; rep < 2000; ++rep) {
        const int w = 1 + testutil::pick(27, rep, 5);
        const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
        const std::uint64_t u = testutil::mix64(rep * 7 + 1) & mask;
        const std::uint64_t x = testutil::mix64(rep * 7 + 2) & mask;
        std::vector<std::uint64_t> v_rows(static_cast<std::size_t>(w));
        for (int m = 0; m < w; ++m) v_rows[m] = testutil::mix64(rep * 7 + 3 + m) & mask;
        CpEntry got = compute_partial_central(w, u, x, v_rows);
        CpEntry want = cp_by_enumeration(w, u, x, v_rows);
        CHECK(got.dev == want.dev);
        CHECK(got.vec == want.vec);
    }
}

TEST_CASE("fold_fr2 fixed examples") {
    PairingRule plain;
    CHECK(fold_fr2(RnaSequence::parse(""), plain).score == 0);
    CHECK(fold_fr2(RnaSequence::parse("AU"), plain).score == 1);
    CHECK(fold_fr2(RnaSequence::parse("ACGU"), plain, 2).score == 2);
    PairingRule h3{false, 3};
    CHECK(fold_fr2(RnaSequence::parse("GGGAAACCC"), h3).score == 3);

    // pair-free input: every block finalizes to zeros
    Fr2Tables zeros = run_fr2_dp(RnaSequence::parse("AAAAAAAAAAAA"), plain, 2);
    for (int i = 1; i <= 12; ++i) {
        for (int j = i; j <= 12; ++j) CHECK(zeros.m(i, j) == 0);
    }
    for (int j = 1; j <= 12; ++j) {
        for (int s = 0; (s + 1) * 2 < j; ++s) CHECK(zeros.rt_at(j, s) == 0);
    }
}

TEST_CASE("fold_fr2 equals the oracle across rules and widths") {
    int rep = 0;
    for (int w = 1; w <= 4; ++w) {
        for (int combo = 0; combo < 4; ++combo) {
            PairingRule rule{combo % 2 == 1, combo < 2 ? 0 : 3};
            for (int c = 0; c < 6; ++c, ++rep) {
                const int n = testutil::pick(201, rep, 161);  // n in [0, 160]
                RnaSequence seq = random_sequence(201, rep, n);
                CAPTURE(n);
                CAPTURE(w);
                CAPTURE(combo);
                FoldResult r2 = fold_fr2(seq, rule, w);
                CHECK(r2.score == fold_oracle(seq, rule).score);
                CHECK(r2.structure.size() == r2.score);
                CHECK(validate_structure(seq, rule, r2.structure).ok);
            }
        }
    }
}

TEST_CASE("final M_r equals the reference table cell for cell") {
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 60 + testutil::pick(211, rep, 91);  // up to 150
        const int w = 1 + testutil::pick(212, rep, 4);
        RnaSequence seq = random_sequence(211, rep, n);
        PairingRule rule{rep % 2 == 1, rep % 3 == 0 ? 3 : 0};
        Fr2Tables t = run_fr2_dp(seq, rule, w);
        FullDpTable m = dp_table(seq, rule);
        for (int i = 1; i <= n; ++i) {
            for (int j = i; j <= n; ++j) CHECK(t.m(i, j) == m.at(i, j));
        }
    }
}

TEST_CASE("debug verification against the reference table stays silent") {
    for (int rep = 0; rep < 4; ++rep) {
        const int n = 80 + testutil::pick(221, rep, 41);  // up to 120
        const int w = 2 + testutil::pick(222, rep, 3);
        RnaSequence seq = random_sequence(221, rep, n);
        PairingRule rule;
        FullDpTable m = dp_table(seq, rule);
        Fr2Options options;
        options.verify_oracle = &m;
        Fr2Tables t = run_fr2_dp(seq, rule, w, options);
        CHECK(t.m(1, n) == m.at(1, n));
        CHECK(t.counters.updation_queries > 0);
    }
}

TEST_CASE("partial optimal results obey the unit-step sandwich") {
    // brute-force P from the reference table on random instances
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 10 + testutil::pick(231, rep, 71);  // up to 80
        RnaSequence seq = random_sequence(231, rep, n);
        PairingRule rule{rep % 2 == 0, 0};
        FullDpTable m = dp_table(seq, rule);
        for (int c = 0; c < 60; ++c) {
            int i = 2 + testutil::pick(232, rep * 100 + c, n - 2);
            int j = i + 1 + testutil::pick(233, rep * 100 + c, n - i);
            if (j > n) continue;
            if (j - 1 < i) continue;
            int t = i + testutil::pick(234, rep * 100 + c, j - i);
            int o = t + testutil::pick(235, rep * 100 + c, j - t);
            if (o >= j) o = j - 1;
            if (t > o) continue;
            const std::int32_t p_i = testutil::partial_from_table(m, i, j, t, o);
            const std::int32_t p_im1 = testutil::partial_from_table(m, i - 1, j, t, o);
            CHECK(p_i <= p_im1);
            CHECK(p_im1 <= p_i + 1);
            CHECK(p_i >= m.at(i, o) + m.at(o + 1, j));  // deviation never negative
        }
    }
}

TEST_CASE("partial optimal result equals the optimal constrained pair set") {
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 6 + testutil::pick(241, rep, 9);  // up to 14
        RnaSequence seq = random_sequence(241, rep, n);
        PairingRule rule{rep % 2 == 1, 0};
        FullDpTable m = dp_table(seq, rule);
        const int i = 1;
        const int j = n;
        int t = 1 + testutil::pick(242, rep, n - 1);
        int o = t + testutil::pick(243, rep, n - t);
        if (o >= j) o = j - 1;
        if (t > o) continue;
        CHECK(testutil::partial_from_table(m, i, j, t, o) ==
              testutil::constrained_enumerate(seq, rule, i, j, t, o));
    }
}

TEST_CASE("dense and cached updation backing give identical folds") {
    const int n = 140;
    RnaSequence seq = random_sequence(251, 0, n);
    PairingRule rule;
    Fr2Options dense_opts;
    dense_opts.budget_bytes = 1ull << 31;
    Fr2Options cached_opts;
    cached_opts.budget_bytes = 1ull << 20;  // fits cp, too small for dense up
    Fr2Tables a = run_fr2_dp(seq, rule, 2, dense_opts);
    Fr2Tables b = run_fr2_dp(seq, rule, 2, cached_opts);
    REQUIRE(a.up->mode() == UpdationTable::Mode::dense);
    REQUIRE(b.up->mode() == UpdationTable::Mode::cached);
    CHECK(a.counters.updation_queries == b.counters.updation_queries);
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) CHECK(a.m(i, j) == b.m(i, j));
    }
}

TEST_CASE("fr2 counters are deterministic") {
    RnaSequence seq = random_sequence(261, 0, 180);
    PairingRule rule;
    FoldResult a = fold_fr2(seq, rule, 2);
    FoldResult b = fold_fr2(seq, rule, 2);
    CHECK(a.score == b.score);
    CHECK(a.counters.updation_queries == b.counters.updation_queries);
    CHECK(a.counters.central_queries == b.counters.central_queries);
    CHECK(a.counters.updation_queries > 0);
}
