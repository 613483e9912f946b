#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mts/pearl_tree.hpp"
#include "mts/search.hpp"
#include "mts/synth_tree.hpp"
#include "mts/tt.hpp"
#include "support/oracle.hpp"

using namespace mts;
using namespace mts::test;

namespace {

SynthTreeConfig rand_tree_cfg(std::mt19937_64& rng, int w_max = 4, int d_max = 5) {
    SynthTreeConfig cfg;
    cfg.seed = rng();
    cfg.branch_min = cfg.branch_max = 2 + static_cast<int>(rng() % (w_max - 1));
    cfg.depth = 2 + static_cast<int>(rng() % (d_max - 1));
    return cfg;
}

}  // namespace

TEST_CASE("full-window searches agree on the hand example") {
    PearlTree g;
    for (bool ordering : {false, true}) {
        SearchOptions opts;
        opts.dynamic_ordering = ordering;

        TranspositionTable t1(TTConfig::lossless_table());
        SearchContext c1(g, &t1, opts);
        CHECK(alpha_beta(c1, g.root(), 4, {-kInf, kInf}) == 35);

        TranspositionTable t2(TTConfig::lossless_table());
        SearchContext c2(g, &t2, opts);
        CHECK(negascout(c2, g.root(), 4, {-kInf, kInf}) == 35);

        SearchContext c3(g, nullptr, opts);  // storage-free works too
        CHECK(alpha_beta(c3, g.root(), 4, {-kInf, kInf}) == 35);
    }
}

TEST_CASE("pearl null-window pass sequence drives the bound down") {
    PearlTree g;
    TranspositionTable tt(TTConfig::lossless_table());
    SearchOptions opts;
    opts.dynamic_ordering = false;
    SearchContext ctx(g, &tt, opts);

    CHECK(mt(ctx, g.root(), 4, kInf) == 41);
    // A (40,41) alpha-beta run on the pass-1 table fails low with 36.
    CHECK(alpha_beta(ctx, g.root(), 4, {40, 41}) == 36);
    CHECK(mt(ctx, g.root(), 4, 36) == 35);
    CHECK(mt(ctx, g.root(), 4, 35) == 35);
    CHECK(ctx.stats.mt_calls == 3);
}

TEST_CASE("depth zero returns the static value whatever the window") {
    PearlTree g;
    SearchContext ctx(g, nullptr, {});
    CHECK(alpha_beta(ctx, g.root(), 0, {100, 101}) == 35);
    CHECK(alpha_beta(ctx, g.root(), 0, {-101, -100}) == 35);
    CHECK(mt(ctx, g.root(), 0, -60) == 35);

    SyntheticTree s(SynthTreeConfig{});
    SearchContext ctx2(s, nullptr, {});
    CHECK(alpha_beta(ctx2, s.root(), 0, {50, 60}) == s.evaluate(s.root()));
}

TEST_CASE("search contracts reject malformed calls") {
    PearlTree g;
    TranspositionTable tt(TTConfig::bounded(8));
    SearchContext ctx(g, &tt, {});
    CHECK_THROWS_AS(alpha_beta(ctx, g.root(), 4, {5, 5}), std::logic_error);
    CHECK_THROWS_AS(alpha_beta(ctx, g.root(), -1, {0, 1}), std::logic_error);
    CHECK_THROWS_AS(mt(ctx, g.root(), 4, -kInf), std::logic_error);
    CHECK_THROWS_AS(aspiration_negascout(ctx, g.root(), 4, 0, 0),
                    std::logic_error);
    CHECK_THROWS_AS(iterative_deepen(ctx, g.root(), 0, Algorithm::AlphaBeta),
                    std::logic_error);
}

TEST_CASE("alpha-beta keeps its three-case postcondition on 200 instances") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        SyntheticTree g(rand_tree_cfg(rng));
        int depth = g.config().depth;
        GameState start = g.root();
        if (i % 3 == 1) {  // every third instance searches from a Min node
            start = g.apply_move(start, 0);
            depth -= 1;
        }
        Value alpha = static_cast<Value>(rng() % 241) - 120;
        Value beta = alpha + 1 + static_cast<Value>(rng() % 60);

        TranspositionTable tt(TTConfig::lossless_table());
        SearchContext ctx(g, &tt, {});
        Value got = alpha_beta(ctx, start, depth, {alpha, beta});
        Value truth = oracle_minimax(g, start, depth);
        if (got <= alpha) {
            CHECK(got >= truth);  // fail low: returned value is an upper bound
        } else if (got >= beta) {
            CHECK(got <= truth);  // fail high: a lower bound
        } else {
            CHECK(got == truth);
        }
    }
}

TEST_CASE("mt visits exactly what the null-window alpha-beta visits") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        SyntheticTree g(rand_tree_cfg(rng));
        int depth = g.config().depth;
        Value gamma = static_cast<Value>(rng() % 241) - 120;
        bool warm = i % 2 == 1;

        SearchOptions opts;
        opts.trace_visits = true;
        TranspositionTable t1(TTConfig::lossless_table());
        SearchContext c1(g, &t1, opts);
        TranspositionTable t2(TTConfig::lossless_table());
        SearchContext c2(g, &t2, opts);
        if (warm) {  // identical non-empty tables, built the same way
            mt(c1, g.root(), depth, kInf);
            mt(c2, g.root(), depth, kInf);
            c1.reset_stats();
            c2.reset_stats();
            c1.stats.visit_trace.clear();
            c2.stats.visit_trace.clear();
        }

        Value vm = mt(c1, g.root(), depth, gamma);
        Value va = alpha_beta(c2, g.root(), depth, {gamma - 1, gamma});
        CHECK(vm == va);
        REQUIRE(c1.stats.visit_trace.size() == c2.stats.visit_trace.size());
        CHECK(c1.stats.visit_trace == c2.stats.visit_trace);
        CHECK(c1.stats.leaf_evals == c2.stats.leaf_evals);
    }
}

TEST_CASE("aspiration windows re-search only when they must") {
    PearlTree g;
    SearchOptions opts;
    opts.dynamic_ordering = false;

    TranspositionTable t1(TTConfig::lossless_table());
    SearchContext on_target(g, &t1, opts);
    CHECK(aspiration_negascout(on_target, g.root(), 4, 35, 2) == 35);
    CHECK(on_target.stats.asp_researches == 0);

    TranspositionTable t2(TTConfig::lossless_table());
    SearchContext below(g, &t2, opts);
    CHECK(aspiration_negascout(below, g.root(), 4, -90, 2) == 35);
    CHECK(below.stats.asp_researches == 1);  // fail high, one wide re-search

    TranspositionTable t3(TTConfig::lossless_table());
    SearchContext above(g, &t3, opts);
    CHECK(aspiration_negascout(above, g.root(), 4, 90, 2) == 35);
    CHECK(above.stats.asp_researches == 1);  // fail low mirror
}

TEST_CASE("move ordering starts static and follows the table") {
    PearlTree g;
    GameState p = g.state_of(15);  // p has two children q, r
    TranspositionTable tt(TTConfig::bounded(8));
    SearchContext ctx(g, &tt, {});

    CHECK(order_moves(ctx, p, 2) == std::vector<int>{0, 1});

    // Stored best move jumps the queue.
    tt.store(g.state_key(p), 2, Bound::Lower, 1, 1);
    CHECK(order_moves(ctx, p, 2) == std::vector<int>{1, 0});

    // An ordinal past the move list is a stale hint: ignored.
    tt.store(g.state_key(p), 2, Bound::Lower, 1, 5);
    CHECK(order_moves(ctx, p, 2) == std::vector<int>{0, 1});

    // Static mode never consults the table.
    tt.store(g.state_key(p), 2, Bound::Lower, 1, 1);
    SearchOptions fixed;
    fixed.dynamic_ordering = false;
    SearchContext static_ctx(g, &tt, fixed);
    CHECK(order_moves(static_ctx, p, 2) == std::vector<int>{0, 1});
}

TEST_CASE("history scores shape the tail of the order") {
    PearlTree g;
    GameState a = g.root();
    TranspositionTable tt(TTConfig::bounded(8));
    SearchContext ctx(g, &tt, {});
    ctx.history.bump(a.to_move, g.move_feature(a, 1), 6);
    CHECK(order_moves(ctx, a, 2) == std::vector<int>{1, 0});

    // The table move still outranks any history score.
    tt.store(g.state_key(a), 4, Bound::Lower, 1, 0);
    CHECK(order_moves(ctx, a, 2) == std::vector<int>{0, 1});

    SearchOptions no_hist;
    no_hist.use_history = false;
    SearchContext plain(g, nullptr, no_hist);
    plain.history.bump(a.to_move, g.move_feature(a, 1), 6);
    CHECK(order_moves(plain, a, 2) == std::vector<int>{0, 1});

    ctx.history.halve();
    CHECK(ctx.history.get(a.to_move, g.move_feature(a, 1)) == (1ull << 5));
    ctx.history.clear();
    CHECK(ctx.history.get(a.to_move, g.move_feature(a, 1)) == 0);
}

TEST_CASE("iterative deepening accumulates and lands on the direct value") {
    PearlTree pearl;
    TranspositionTable tt(TTConfig::bounded(10));
    SearchContext ctx(pearl, &tt, {});
    IdResult one = iterative_deepen(ctx, pearl.root(), 1, Algorithm::AlphaBeta);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.value == oracle_minimax(pearl, pearl.root(), 1));

    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        SyntheticTree g(rand_tree_cfg(rng, 3, 5));
        int depth = g.config().depth;

        TranspositionTable t1(TTConfig::bounded(14));
        SearchContext id_ctx(g, &t1, {});
        IdResult id = iterative_deepen(id_ctx, g.root(), depth,
                                       Algorithm::AlphaBeta);

        TranspositionTable t2(TTConfig::bounded(14));
        SearchContext direct_ctx(g, &t2, {});
        Value direct = alpha_beta(direct_ctx, g.root(), depth, {-kInf, kInf});
        CHECK(id.value == direct);

        for (std::size_t r = 1; r < id.rows.size(); ++r) {
            CHECK(id.rows[r].leaf_evals >= id.rows[r - 1].leaf_evals);
            CHECK(id.rows[r].total_nodes >= id.rows[r - 1].total_nodes);
            CHECK(id.rows[r].depth == id.rows[r - 1].depth + 1);
        }
    }
}

TEST_CASE("deepening stride keeps the final-depth parity") {
    SyntheticTree g(SynthTreeConfig::parse("seed=9 w=3 d=8"));
    SearchOptions opts;
    opts.id_step = 2;
    TranspositionTable tt(TTConfig::bounded(14));
    SearchContext ctx(g, &tt, opts);
    IdResult even = iterative_deepen(ctx, g.root(), 8, Algorithm::AlphaBeta);
    REQUIRE(even.rows.size() == 4);
    CHECK(even.rows[0].depth == 2);
    CHECK(even.rows[3].depth == 8);

    tt.clear();
    ctx.reset_stats();
    IdResult odd = iterative_deepen(ctx, g.root(), 7, Algorithm::AlphaBeta);
    REQUIRE(odd.rows.size() == 4);
    CHECK(odd.rows[0].depth == 1);
    CHECK(odd.rows[3].depth == 7);

    SearchOptions pinned;
    pinned.id_step = 2;
    pinned.id_start = 4;
    SearchContext ctx2(g, &tt, pinned);
    tt.clear();
    IdResult fixed = iterative_deepen(ctx2, g.root(), 8, Algorithm::AlphaBeta);
    REQUIRE(fixed.rows.size() == 3);
    CHECK(fixed.rows[0].depth == 4);
}

TEST_CASE("every deepening algorithm reaches the oracle value") {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 30; ++i) {
        SyntheticTree g(rand_tree_cfg(rng, 3, 5));
        int depth = g.config().depth;
        Value truth = oracle_minimax(g, g.root(), depth);
        for (Algorithm a :
             {Algorithm::AlphaBeta, Algorithm::NegaScout, Algorithm::AspNega,
              Algorithm::SSS, Algorithm::Dual, Algorithm::MtdF,
              Algorithm::MtdBi, Algorithm::MtdStep}) {
            TranspositionTable tt(TTConfig::bounded(14));
            SearchContext ctx(g, &tt, {});
            CHECK(iterative_deepen(ctx, g.root(), depth, a).value == truth);
        }
    }
}
