#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "mts/othello.hpp"
#include "mts/pearl_tree.hpp"
#include "mts/synth_tree.hpp"
#include "support/explicit_tree.hpp"
#include "support/oracle.hpp"

using namespace mts;
using namespace mts::test;

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    double cov = sxy / n - sx / n * sy / n;
    double vx = sxx / n - sx / n * sx / n;
    double vy = syy / n - sy / n * sy / n;
    return cov / std::sqrt(vx * vy);
}

SynthTreeConfig synth_cfg(std::uint64_t seed, int w, int d, double corr = 0.0,
                          double tp = 0.0) {
    SynthTreeConfig cfg;
    cfg.seed = seed;
    cfg.branch_min = cfg.branch_max = w;
    cfg.depth = d;
    cfg.correlation = corr;
    cfg.transposition_density = tp;
    return cfg;
}

}  // namespace

TEST_CASE("pearl tree shape matches the hand example") {
    PearlTree g;
    GameState a = g.root();
    CHECK(g.describe(a) == "a");
    CHECK(g.move_count(a) == 2);
    CHECK(a.to_move == Side::Max);

    GameState h = g.apply_move(a, 1);
    CHECK(g.describe(h) == "h");
    CHECK(h.to_move == Side::Min);
    CHECK(g.state_key(h) == g.state_key(g.apply_move(a, 1)));

    std::set<std::uint64_t> keys;
    for (int id = 0; id < PearlTree::kNodes; ++id)
        keys.insert(g.state_key(g.state_of(id)));
    CHECK(keys.size() == PearlTree::kNodes);

    CHECK_THROWS_AS(g.apply_move(a, 2), std::out_of_range);
    CHECK_THROWS_AS(g.apply_move(a, -1), std::out_of_range);

    // Leaf statics quoted in the walkthrough.
    CHECK(g.evaluate(g.state_of(12)) == 36);  // m
    CHECK(g.evaluate(g.state_of(13)) == 5);   // n
    CHECK(g.is_terminal(g.state_of(12)));
    CHECK(!g.is_terminal(g.state_of(11)));  // l
}

TEST_CASE("pearl tree minimax is 35 whatever u holds") {
    for (Value u : {0, -1000, 1000, 35}) {
        PearlTree g(u);
        CHECK(oracle_minimax(g, g.root(), 4) == 35);
        // Interior statics are subtree minimax values.
        CHECK(g.evaluate(g.root()) == 35);
    }
    // Root move values: b is capped at 12, h carries the 35.
    PearlTree g;
    std::vector<Value> mv = oracle_move_values(g, g.root(), 4);
    REQUIRE(mv.size() == 2);
    CHECK(mv[0] == 12);
    CHECK(mv[1] == 35);
}

TEST_CASE("synthetic trees are reproducible") {
    SynthTreeConfig cfg = synth_cfg(7, 3, 5, 0.4, 0.1);
    SyntheticTree g1(cfg);
    SyntheticTree g2(cfg);
    REQUIRE(g1.node_count() == g2.node_count());
    CHECK(g1.alias_fraction() == g2.alias_fraction());
    for (int id = 0; id < g1.node_count(); ++id) {
        CHECK(g1.state_key(g1.state_of(id)) == g2.state_key(g2.state_of(id)));
        CHECK(g1.evaluate(g1.state_of(id)) == g2.evaluate(g2.state_of(id)));
    }
    // corr=0 root draw is a plain seeded uniform, stable across builds.
    SyntheticTree g3(synth_cfg(7, 3, 5));
    SyntheticTree g4(synth_cfg(7, 3, 5));
    CHECK(g3.evaluate(g3.root()) == g4.evaluate(g4.root()));
}

TEST_CASE("correlation knob couples shallow and deep values") {
    auto correlation_at = [](double c) {
        std::vector<double> shallow, deep;
        for (int t = 0; t < 150; ++t) {
            SyntheticTree g(synth_cfg(1000 + static_cast<std::uint64_t>(t), 3, 4, c));
            shallow.push_back(oracle_negamax(g, g.root(), 2));
            deep.push_back(oracle_negamax(g, g.root(), 4));
        }
        return pearson(shallow, deep);
    };
    double r3 = correlation_at(0.3);
    double r6 = correlation_at(0.6);
    double r9 = correlation_at(0.9);
    CHECK(r3 > 0.05);
    CHECK(r6 > r3 + 0.2);
    CHECK(r9 > r6);
    CHECK(r9 > 0.9);
}

TEST_CASE("alias fraction tracks the transposition density") {
    for (double tp : {0.1, 0.2, 0.3}) {
        // Aliasing shrinks the built tree, so deepen until the sample of
        // child slots stays above ten thousand nodes.
        SyntheticTree g(synth_cfg(42, 4, tp < 0.25 ? 8 : 9, 0.0, tp));
        CHECK(g.node_count() >= 10000);
        CHECK(std::abs(g.alias_fraction() - tp) <= 0.05);
    }
    SyntheticTree plain(synth_cfg(42, 4, 6));
    CHECK(plain.alias_fraction() == 0.0);
}

TEST_CASE("aliased children share their target's key") {
    SyntheticTree g(synth_cfg(5, 2, 4, 0.0, 1.0));
    // Walk every edge; with density 1 some child of two different parents
    // must be the same node, with density 0 never.
    auto edge_targets = [](const SyntheticTree& t) {
        std::vector<std::uint64_t> keys;
        for (int id = 0; id < t.node_count(); ++id) {
            GameState s = t.state_of(id);
            if (t.is_terminal(s)) continue;
            for (int m = 0; m < t.move_count(s); ++m)
                keys.push_back(t.state_key(t.apply_move(s, m)));
        }
        return keys;
    };
    std::vector<std::uint64_t> dense = edge_targets(g);
    std::set<std::uint64_t> dense_set(dense.begin(), dense.end());
    CHECK(dense_set.size() < dense.size());
    CHECK(g.alias_fraction() > 0.4);

    SyntheticTree free_tree(synth_cfg(5, 2, 4, 0.0, 0.0));
    std::vector<std::uint64_t> sparse = edge_targets(free_tree);
    std::set<std::uint64_t> sparse_set(sparse.begin(), sparse.end());
    CHECK(sparse_set.size() == sparse.size());
}

TEST_CASE("synthetic config parses and round-trips") {
    SynthTreeConfig cfg =
        SynthTreeConfig::parse("seed=7 w=2..4 d=6 corr=0.5 tp=0.1 order=0.9");
    CHECK(cfg.seed == 7);
    CHECK(cfg.branch_min == 2);
    CHECK(cfg.branch_max == 4);
    CHECK(cfg.depth == 6);
    CHECK(cfg.correlation == doctest::Approx(0.5));
    CHECK(cfg.transposition_density == doctest::Approx(0.1));
    CHECK(cfg.ordering == doctest::Approx(0.9));

    SynthTreeConfig back = SynthTreeConfig::parse(cfg.to_string());
    CHECK(back.seed == cfg.seed);
    CHECK(back.branch_max == cfg.branch_max);
    CHECK(back.ordering == doctest::Approx(cfg.ordering));

    CHECK_THROWS_AS(SynthTreeConfig::parse("sed=7"), std::runtime_error);
    CHECK_THROWS_AS(SynthTreeConfig::parse("w=abc"), std::runtime_error);
    CHECK_THROWS_AS(SynthTreeConfig::parse("w=4..2"), std::runtime_error);
    CHECK_THROWS_AS(SynthTreeConfig::parse("corr=1.5"), std::runtime_error);
    CHECK_THROWS_AS(SynthTreeConfig::parse("order=-0.1"), std::runtime_error);
    CHECK_THROWS_AS(SynthTreeConfig::parse("seed"), std::runtime_error);
}

TEST_CASE("othello start position and determinism") {
    Othello6 g;
    GameState s = g.root();
    CHECK(g.evaluate(s) == 0);
    CHECK(g.move_count(s) == 4);
    CHECK(s.to_move == Side::Max);
    CHECK(!g.is_terminal(s));
    CHECK(g.state_key(s) == g.state_key(g.root()));
    for (int m = 0; m < 4; ++m) {
        GameState c1 = g.apply_move(s, m);
        GameState c2 = g.apply_move(s, m);
        CHECK(g.state_key(c1) == g.state_key(c2));
        CHECK(c1.a == c2.a);
        CHECK(c1.b == c2.b);
    }
    CHECK_THROWS_AS(g.apply_move(s, 4), std::out_of_range);
}

TEST_CASE("othello equal boards share one key across move orders") {
    Othello6 g;
    std::map<std::tuple<std::uint64_t, std::uint64_t, int>, std::uint64_t> seen;
    long duplicate_boards = 0;
    struct Rec {
        GameState s;
        int d;
    };
    std::vector<Rec> stack{{g.root(), 0}};
    while (!stack.empty()) {
        Rec r = stack.back();
        stack.pop_back();
        if (r.d == 4) {
            auto board = std::make_tuple(r.s.a, r.s.b, static_cast<int>(r.s.to_move));
            auto [it, fresh] = seen.emplace(board, g.state_key(r.s));
            if (!fresh) {
                ++duplicate_boards;
                CHECK(it->second == g.state_key(r.s));
            }
            continue;
        }
        int n = g.move_count(r.s);
        for (int m = 0; m < n; ++m)
            stack.push_back({g.apply_move(r.s, m), r.d + 1});
    }
    // The walk must actually contain transposed pairs or the check is vacuous.
    CHECK(duplicate_boards >= 1);
}

TEST_CASE("othello coordinates round-trip") {
    for (int sq = 0; sq < Othello6::kSquares; ++sq)
        CHECK(Othello6::square_of(Othello6::coord_of(sq)) == sq);
    CHECK(Othello6::square_of("a1") == 0);
    CHECK(Othello6::square_of("f6") == 35);
    CHECK(Othello6::square_of("g1") == -1);
    CHECK(Othello6::square_of("a7") == -1);
    CHECK(Othello6::square_of("") == -1);
    CHECK(Othello6::square_of("11") == -1);
}

TEST_CASE("othello move features are destination squares") {
    Othello6 g;
    GameState s = g.root();
    for (int m = 0; m < g.move_count(s); ++m) {
        int sq = g.move_square(s, m);
        CHECK(sq >= 0);
        CHECK(g.move_feature(s, m) == sq);
        CHECK(g.describe_move(s, m) == Othello6::coord_of(sq));
    }
}

TEST_CASE("othello replay reports the offending line") {
    Othello6 g;
    auto message_of = [](auto&& fn) {
        try {
            fn();
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    std::string m1 = message_of([&] { g.replay_line("zz", 3); });
    CHECK(m1.find("line 3") != std::string::npos);
    CHECK(m1.find("bad coordinate") != std::string::npos);

    std::string m2 = message_of([&] { g.replay_line("a1", 7); });
    CHECK(m2.find("line 7") != std::string::npos);
    CHECK(m2.find("illegal move") != std::string::npos);

    std::string m3 = message_of([&] { g.replay_line("--", 2); });
    CHECK(m3.find("pass while moves are available") != std::string::npos);
}

TEST_CASE("othello position files load per line") {
    Othello6 g;
    const char* path = "/tmp/mts_test_positions.txt";
    {
        std::ofstream out(path);
        out << "# comment only\n\n";
        out << g.describe_move(g.root(), 0) << "\n";
    }
    std::vector<GameState> one = g.load_positions(path);
    REQUIRE(one.size() == 1);
    CHECK(one[0].ply == 1);

    {
        std::ofstream out(path);
        out << "# nothing\n";
    }
    CHECK(g.load_positions(path).empty());

    {
        std::ofstream out(path);
        out << "d9\n";
    }
    CHECK_THROWS_AS(g.load_positions(path), std::runtime_error);
    std::remove(path);
    CHECK_THROWS_AS(g.load_positions(path), std::runtime_error);

    // The checked-in suite: every line replays legally and positions differ.
    std::vector<GameState> suite = g.load_positions("data/othello_suite.txt");
    CHECK(suite.size() == 24);
    std::set<std::uint64_t> keys;
    for (const GameState& p : suite) {
        keys.insert(g.state_key(p));
        CHECK(!g.is_terminal(p));
    }
    CHECK(keys.size() == suite.size());
}

TEST_CASE("list tree and flip game support fixtures behave") {
    ListTree t("(3 (5 1) 2)");
    CHECK(t.height() == 2);
    CHECK(oracle_minimax(t, t.root(), 4) == 3);
    CHECK(t.move_count(t.root()) == 3);
    CHECK_THROWS_AS(ListTree("(1"), std::runtime_error);
    CHECK_THROWS_AS(ListTree("()"), std::runtime_error);
    CHECK_THROWS_AS(ListTree("1 2"), std::runtime_error);
    CHECK_THROWS_AS(ListTree("(x)"), std::runtime_error);

    PearlTree pearl;
    FlipGame dual(pearl);
    CHECK(dual.root().to_move == Side::Min);
    CHECK(oracle_minimax(dual, dual.root(), 4) == -35);
    CHECK(oracle_negamax(dual, dual.root(), 4) == 35);
    CHECK(dual.state_key(dual.root()) == pearl.state_key(pearl.root()));
}
