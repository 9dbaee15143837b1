#include "doctest.h"

#include <cmath>

#include "frfold/bench.hpp"
#include "frfold/fr_fold.hpp"
#include "frfold/nussinov.hpp"
#include "test_util.hpp"

using namespace frfold;

TEST_CASE("fold_fr fixed examples") {
    PairingRule plain;
    CHECK(fold_fr(RnaSequence::parse(""), plain).score == 0);
    CHECK(fold_fr(RnaSequence::parse("AU"), plain).score == 1);
    CHECK(fold_fr(RnaSequence::parse("ACGU"), plain).score == 2);
    PairingRule h3{false, 3};
    CHECK(fold_fr(RnaSequence::parse("GGGAAACCC"), h3).score == 3);
}

TEST_CASE("fold_fr equals the oracle across rules and widths") {
    int rep = 0;
    for (int w = 1; w <= 6; ++w) {
        for (int combo = 0; combo < 4; ++combo) {
            PairingRule rule{combo % 2 == 1, combo < 2 ? 0 : 3};
            for (int c = 0; c < 7; ++c, ++rep) {
                const int n = testutil::pick(101, rep, 121);  // n in [0, 120]
                RnaSequence seq = random_sequence(101, rep, n);
                CAPTURE(n);
                CAPTURE(w);
                CAPTURE(combo);
                FoldResult fr = fold_fr(seq, rule, w);
                CHECK(fr.score == fold_oracle(seq, rule).score);
                CHECK(fr.structure.size() == fr.score);
                CHECK(validate_structure(seq, rule, fr.structure).ok);
            }
        }
    }
}

TEST_CASE("w=1 degenerates to per-cell evaluation and stays correct") {
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 1 + testutil::pick(55, rep, 90);
        RnaSequence seq = random_sequence(55, rep, n);
        PairingRule rule;
        CHECK(fold_fr(seq, rule, 1).score == fold_oracle(seq, rule).score);
    }
}

TEST_CASE("difference vectors in Rt and Lt match the reference table") {
    for (int rep = 0; rep < 8; ++rep) {
        const int n = 20 + testutil::pick(66, rep, 131);  // up to 150
        const int w = 1 + testutil::pick(67, rep, 5);
        RnaSequence seq = random_sequence(66, rep, n);
        PairingRule rule{rep % 2 == 0, rep % 3 == 0 ? 3 : 0};
        BlockTables t = run_fr_dp(seq, rule, w);
        FullDpTable m = dp_table(seq, rule);
        for (int j = 1; j <= n; ++j) {
            for (int s = 0; (s + 1) * w < j; ++s) {
                auto bits = decode_vector(t.rt_at(j, s), w);
                for (int q = 1; q <= w; ++q) {
                    CHECK(bits[static_cast<std::size_t>(q) - 1] == m.at(s * w + q, j) - m.at(s * w + q + 1, j));
                }
            }
        }
        for (int s = 0; (s + 1) * w <= n; ++s) {
            for (int i = 1; i <= s * w; ++i) {
                auto bits = decode_vector(t.lt_at(i, s), w);
                for (int q = 1; q <= w; ++q) {
                    CHECK(bits[static_cast<std::size_t>(q) - 1] == m.at(i, s * w + q) - m.at(i, s * w + q - 1));
                }
            }
        }
    }
}

TEST_CASE("reconstruct_m recovers every cell") {
    const int n = 120;
    RnaSequence seq = random_sequence(77, 0, n);
    PairingRule rule;
    BlockTables t = run_fr_dp(seq, rule, 3);
    FullDpTable m = dp_table(seq, rule);
    for (int i = 1; i <= n; ++i) CHECK(reconstruct_m(t, i, i) == 0);
    for (int rep = 0; rep < 400; ++rep) {
        int i = 1 + testutil::pick(78, 2 * rep, n);
        int j = 1 + testutil::pick(78, 2 * rep + 1, n);
        if (i > j) std::swap(i, j);
        CHECK(reconstruct_m(t, i, j) == m.at(i, j));
    }
    CHECK_THROWS_AS(reconstruct_m(t, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_m(t, 1, n + 1), std::invalid_argument);
}

TEST_CASE("traceback_fr base cases") {
    PairingRule plain;
    RnaSequence au = RnaSequence::parse("AU");
    BlockTables t = run_fr_dp(au, plain, 1);
    CHECK(traceback_fr(t, au, plain, 1, 1).pairs.empty());
    CHECK(traceback_fr(t, au, plain, 1, 2).pairs == std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("traceback_fr on random sequences and subintervals") {
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 40 + testutil::pick(88, rep, 81);
        const int w = 1 + testutil::pick(89, rep, 6);
        RnaSequence seq = random_sequence(88, rep, n);
        PairingRule rule{rep % 2 == 1, 0};
        BlockTables t = run_fr_dp(seq, rule, w);
        TracebackStats stats;
        SecondaryStructure st = traceback_fr(t, seq, rule, 1, n, &stats);
        CHECK(st.size() == reconstruct_m(t, 1, n));
        CHECK(validate_structure(seq, rule, st).ok);
        CHECK(stats.nodes >= 1);
        // subinterval traceback against the subinterval cell value
        int i = 1 + testutil::pick(90, rep, n);
        int j = 1 + testutil::pick(91, rep, n);
        if (i > j) std::swap(i, j);
        SecondaryStructure sub = traceback_fr(t, seq, rule, i, j);
        CHECK(sub.size() == reconstruct_m(t, i, j));
        CHECK(validate_structure(seq, rule, sub).ok);
    }
}

TEST_CASE("no quadratic table and the word budget holds") {
    for (int n : {256, 512, 1024}) {
        RnaSequence seq = random_sequence(99, static_cast<std::uint64_t>(n), n);
        PairingRule rule;
        BlockTables t = run_fr_dp(seq, rule);
        const int w = t.w;
        REQUIRE(w >= 2);
        CHECK(t.max_single_table_cells < static_cast<std::uint64_t>(n) * n);
        const double budget = 6.0 * (static_cast<double>(n) * n / w + static_cast<double>(n) * w +
                                     std::pow(2.0, 2 * w) + n);
        CHECK(static_cast<double>(t.table_words()) <= budget);
        CHECK(t.counters.peak_table_words >= t.table_words());
    }
}

TEST_CASE("counters are deterministic") {
    RnaSequence seq = random_sequence(123, 0, 200);
    PairingRule rule;
    FoldResult a = fold_fr(seq, rule, 2);
    FoldResult b = fold_fr(seq, rule, 2);
    CHECK(a.score == b.score);
    CHECK(a.structure.pairs == b.structure.pairs);
    CHECK(a.counters.central_queries == b.counters.central_queries);
    CHECK(a.counters.inner_iterations == b.counters.inner_iterations);
    CHECK(a.counters.peak_table_words == b.counters.peak_table_words);
    CHECK(a.counters.central_queries > 0);
}
