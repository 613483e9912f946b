#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mts/bench.hpp"

using namespace mts;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    return out;
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(split(line));
    return rows;
}

// Everything except the trailing wall-clock column.
std::string without_timing(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        out.append(line, 0, line.rfind(','));
        out.push_back('\n');
    }
    return out;
}

std::vector<SynthTreeConfig> small_configs() {
    std::vector<SynthTreeConfig> cfgs(3);
    for (int i = 0; i < 3; ++i) {
        cfgs[i].seed = 100 + static_cast<std::uint64_t>(i);
        cfgs[i].branch_min = cfgs[i].branch_max = 3;
        cfgs[i].depth = 4;
        cfgs[i].correlation = 0.3 * i;
    }
    return cfgs;
}

}  // namespace

TEST_CASE("all seven algorithms read 35 off the hand tree at every depth") {
    CompareParams p;
    p.depth = 4;
    std::ostringstream csv;
    REQUIRE(run_compare(pearl_suite(), p, csv));

    auto rows = rows_of(csv.str());
    REQUIRE(rows.size() == 1 + 7 * 4);  // header + algorithms x iterations
    CHECK(rows[0][0] == "position");
    std::set<std::string> algos;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        REQUIRE(r.size() == 11);
        CHECK(r[0] == "pearl");
        algos.insert(r[1]);
        CHECK(r[3] == "35");
        CHECK(std::stoull(r[8]) <= std::stoull(r[7]));  // distinct <= total
        if (r[1] == "ab" || r[1] == "asp-nega")
            CHECK(r[9] == "0");  // no null-window passes
        else
            CHECK(std::stoull(r[9]) >= 1);
    }
    CHECK(algos == std::set<std::string>{"ab", "asp-nega", "sss", "dual",
                                         "mtdf", "mtdbi", "mtdstep"});
}

TEST_CASE("comparison CSV is identical across runs once timing is stripped") {
    Suite suite = synth_suite(small_configs());
    CompareParams p;
    p.depth = 4;
    std::ostringstream a, b;
    REQUIRE(run_compare(suite, p, a));
    REQUIRE(run_compare(suite, p, b));
    CHECK(without_timing(a.str()) == without_timing(b.str()));
    CHECK(a.str().find("syn1") != std::string::npos);
    CHECK(a.str().find("syn3") != std::string::npos);

    // Counters only grow as the deepening proceeds.
    std::map<std::string, std::uint64_t> last_leafs;
    for (const auto& r : rows_of(a.str())) {
        if (r[0] == "position") continue;
        std::string key = r[0] + "/" + r[1];
        std::uint64_t leafs = std::stoull(r[4]);
        auto it = last_leafs.find(key);
        if (it != last_leafs.end()) CHECK(leafs >= it->second);
        last_leafs[key] = leafs;
    }
}

TEST_CASE("the board game rows agree across algorithms too") {
    Suite oth = othello_suite("data/othello_suite.txt");
    CompareParams p;
    p.depth = 3;
    std::ostringstream csv;
    CHECK(run_compare(oth, p, csv));
    CHECK(csv.str().find("oth1,") != std::string::npos);
    CHECK(csv.str().find("oth24,") != std::string::npos);
}

TEST_CASE("comparison rejects an empty request") {
    CompareParams none;
    none.algorithms.clear();
    std::ostringstream csv;
    CHECK_THROWS_AS(run_compare(pearl_suite(), none, csv), std::logic_error);
    Suite empty;
    CompareParams p;
    CHECK_THROWS_AS(run_compare(empty, p, csv), std::logic_error);
}

TEST_CASE("suite loaders") {
    Suite pearl = pearl_suite();
    REQUIRE(pearl.positions.size() == 1);
    CHECK(pearl.positions[0].id == "pearl");
    CHECK(pearl.positions[0].game->evaluate(pearl.positions[0].state) == 35);

    const char* path = "/tmp/mts_test_suite.txt";
    {
        std::ofstream out(path);
        out << "# two small trees\n";
        out << "seed=7 w=3 d=4\n";
        out << "\n";
        out << "seed=8 w=2..4 d=5 corr=0.5 order=0.9\n";
    }
    Suite loaded = synth_suite_from_file(path);
    REQUIRE(loaded.positions.size() == 2);
    CHECK(loaded.positions[0].id == "syn1");
    CHECK(loaded.positions[1].id == "syn2");

    {
        std::ofstream out(path);
        out << "seed=1 w=2 d=3\n\nwidth=oops\n";
    }
    try {
        synth_suite_from_file(path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::remove(path);
    CHECK_THROWS_AS(synth_suite_from_file(path), std::runtime_error);

    Suite oth = othello_suite("data/othello_suite.txt");
    CHECK(oth.positions.size() == 24);
    CHECK(oth.positions.front().id == "oth1");
}

TEST_CASE("a good first guess saves work over any wide start") {
    Suite oth = othello_suite("data/othello_suite.txt");
    GuessSweepParams p;
    p.depth = 4;
    p.deltas = {-50, 0, 50};
    GuessSweepSummary sum;
    std::ostringstream csv;
    REQUIRE(run_guess_sweep(oth, p, csv, &sum));
    CHECK(sum.values_agree);
    REQUIRE(sum.mean_leafs.size() == 3);
    CHECK(sum.baseline_mean_leafs > 0);
    CHECK(sum.mean_leafs[1] < sum.mean_leafs[0]);      // spot-on beats -50
    CHECK(sum.mean_leafs[1] < sum.mean_leafs[2]);      // and +50
    CHECK(sum.mean_leafs[1] <= 1.05 * sum.baseline_mean_leafs);
    CHECK(csv.str().rfind("delta,mean_leaf_evals,pct_of_baseline", 0) == 0);
    CHECK(csv.str().find("\nbaseline,") != std::string::npos);
}

TEST_CASE("stored moves cut early at every ply") {
    Suite oth = othello_suite("data/othello_suite.txt");
    OrderingParams p;
    p.depth = 6;
    OrderingSummary sum;
    std::ostringstream csv;
    REQUIRE(ordering_report(oth, p, csv, &sum));
    CHECK(csv.str().rfind("ply,cut_nodes,first_move_cut_rate,mean_moves_at_cut", 0) == 0);

    CHECK(sum.cut_nodes[0] == 0);  // the root sees the full window
    for (int ply = 1; ply < 6; ++ply) {
        CHECK(sum.cut_nodes[ply] > 0);
        CHECK(sum.first_move_cut_rate(ply) >= 0.6);
        CHECK(sum.first_move_cut_rate(ply) <= 1.0);
        CHECK(sum.mean_moves_at_cut(ply) >= 1.0);
        CHECK(sum.mean_moves_at_cut(ply) <= 2.0);
    }
    CHECK(sum.first_move_cut_rate(1) > sum.first_move_cut_rate(5));

    // Table move ordering alone carries the effect; history only reshuffles
    // the tail of the move list.
    OrderingParams bare = p;
    bare.opts.use_history = false;
    OrderingSummary sum2;
    std::ostringstream csv2;
    REQUIRE(ordering_report(oth, bare, csv2, &sum2));
    for (int ply = 1; ply < 6; ++ply)
        CHECK(sum2.first_move_cut_rate(ply) >= 0.6);
}

TEST_CASE("the deepening hunt lands on a reproducible counterexample") {
    HuntParams p;  // seed 1, widths 2..3, schedule 2 then 3, budget 1e5
    std::ostringstream log;
    HuntResult r = nondominance_hunt(p, log);
    REQUIRE(r.found);
    CHECK(r.trees_tried == 50);
    CHECK(r.sss_leafs == 32);
    CHECK(r.ab_leafs == 31);
    CHECK(r.sss_leafs > r.ab_leafs);
    CHECK(r.replayed);

    std::ostringstream log2;
    HuntResult again = nondominance_hunt(p, log2);
    CHECK(again.config.seed == r.config.seed);
    CHECK(again.sss_leafs == r.sss_leafs);
    CHECK(again.ab_leafs == r.ab_leafs);

    std::uint64_t sss = 0, ab = 0;
    hunt_measure(r.config, p.depth_from, p.depth_to, sss, ab, true);
    CHECK(sss == r.sss_leafs);
    CHECK(ab == r.ab_leafs);
}

TEST_CASE("with the static order the hunt comes up empty") {
    HuntParams p;
    p.budget = 300;
    p.dynamic_ordering = false;
    std::ostringstream log;
    HuntResult r = nondominance_hunt(p, log);
    CHECK(!r.found);
    CHECK(r.trees_tried == 300);
}

TEST_CASE("walkthrough trace and property wrappers hold") {
    std::ostringstream out;
    CHECK(trace_pearl(out));
    CHECK(!out.str().empty());

    std::ostringstream log;
    CHECK(oracle_equivalence(50, 5, log));
    std::ostringstream log2;
    CHECK(dominance_check(50, 5, log2));
}

TEST_CASE("memory sweep smoke run") {
    MemsweepParams p;
    SynthTreeConfig cfg;
    cfg.seed = 21;
    cfg.branch_min = cfg.branch_max = 3;
    cfg.depth = 4;
    p.configs = {cfg};
    p.depth = 4;
    p.bits_lo = 4;
    p.bits_hi = 6;
    p.id_step = 2;
    MemsweepSummary sum;
    std::ostringstream csv;
    REQUIRE(run_memsweep(p, csv, &sum));
    CHECK(csv.str().rfind("tt_bits,algorithm,leaf_evals,ratio_vs_ab", 0) == 0);
    CHECK(sum.values_agree);
    REQUIRE(sum.bits == std::vector<int>{4, 5, 6});
    REQUIRE(sum.ratio_sss.size() == 3);
    REQUIRE(sum.ratio_dual.size() == 3);
    for (double x : sum.ratio_sss) CHECK(x > 0);
    for (double x : sum.ratio_dual) CHECK(x > 0);
}
