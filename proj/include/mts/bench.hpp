#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mts/mtd.hpp"
#include "mts/othello.hpp"
#include "mts/search.hpp"
#include "mts/synth_tree.hpp"
#include "mts/tt.hpp"

namespace mts {

struct Position {
    const Game* game = nullptr;
    GameState state;
    std::string id;
};

// Positions plus the game objects backing them.
struct Suite {
    std::vector<std::unique_ptr<Game>> games;
    std::vector<Position> positions;
};

Suite pearl_suite(Value u_value = 0);
Suite synth_suite_from_file(const std::string& path);
Suite synth_suite(const std::vector<SynthTreeConfig>& configs);
Suite othello_suite(const std::string& path);

// The seven algorithms the comparison runs by default.
std::vector<Algorithm> default_compare_algorithms();

struct CompareParams {
    std::vector<Algorithm> algorithms = default_compare_algorithms();
    int depth = 4;
    TTConfig tt = TTConfig::bounded(16);
    SearchOptions opts;
    GuessPolicy guess;
};

// One CSV row per (position, algorithm, iteration depth), counters
// cumulative across iterations. Returns false if any two algorithms
// disagree on a value — that is a correctness bug, never a tolerance.
bool run_compare(const Suite& suite, const CompareParams& p, std::ostream& csv);

struct MemsweepParams {
    std::vector<SynthTreeConfig> configs;  // summed, typically a few seeds
    int depth = 8;
    int bits_lo = 4;
    int bits_hi = 14;
    int id_step = 2;
    SearchOptions opts;
};

struct MemsweepSummary {
    std::vector<int> bits;
    std::vector<double> ratio_sss;   // sum(leaf_evals) vs alpha-beta, same size
    std::vector<double> ratio_dual;
    int level_off_bits_sss = -1;     // first size after which changes stay < 2%
    int level_off_bits_dual = -1;
    bool values_agree = true;
};

bool run_memsweep(const MemsweepParams& p, std::ostream& csv,
                  MemsweepSummary* summary = nullptr);

struct GuessSweepParams {
    std::vector<Value> deltas = {-50, -25, -10, 0, 10, 25, 50};
    int depth = 6;
    TTConfig tt = TTConfig::bounded(18);
    SearchOptions opts;
};

struct GuessSweepSummary {
    std::vector<Value> deltas;
    std::vector<double> mean_leafs;  // mtd_f at f+delta, averaged over suite
    double baseline_mean_leafs = 0;  // one aspiration search centered on f
    bool values_agree = true;
};

bool run_guess_sweep(const Suite& suite, const GuessSweepParams& p,
                     std::ostream& csv, GuessSweepSummary* summary = nullptr);

struct OrderingParams {
    int depth = 6;
    TTConfig tt = TTConfig::bounded(16);
    SearchOptions opts;
};

struct OrderingSummary {
    // Indexed by ply; only plies < depth carry data. Taken from the last
    // ID iteration, summed over the suite.
    std::vector<std::uint64_t> cut_nodes;
    std::vector<std::uint64_t> first_move_cuts;
    std::vector<std::uint64_t> moves_at_cut;
    double first_move_cut_rate(int ply) const;
    double mean_moves_at_cut(int ply) const;
};

bool ordering_report(const Suite& suite, const OrderingParams& p,
                     std::ostream& csv, OrderingSummary* summary = nullptr);

struct HuntParams {
    std::uint64_t seed = 1;
    std::uint64_t budget = 100000;
    int width_lo = 2;
    int width_hi = 3;
    int depth_from = 2;  // iterative-deepening schedule: depth_from..depth_to
    int depth_to = 3;
    Value value_min = -12;
    Value value_max = 12;
    double correlation = 0.0;
    // Off = control run: with the static order both searches keep the
    // fixed-depth dominance, so the hunt must come up empty.
    bool dynamic_ordering = true;
};

struct HuntResult {
    bool found = false;
    std::uint64_t trees_tried = 0;
    SynthTreeConfig config;       // the counterexample generator config
    std::uint64_t sss_leafs = 0;  // cumulative over the ID schedule
    std::uint64_t ab_leafs = 0;
    bool replayed = false;  // second run reproduced identical counts
};

// Scans seeded trees for one where iteratively deepened descending-bound
// search evaluates strictly more leaves than iteratively deepened
// alpha-beta, both reordering on the stored best move (no history).
HuntResult nondominance_hunt(const HuntParams& p, std::ostream& log);

// Runs the two deepened searches on one config; exposed so a found
// counterexample can be replayed independently.
void hunt_measure(const SynthTreeConfig& cfg, int depth_from, int depth_to,
                  std::uint64_t& sss_leafs, std::uint64_t& ab_leafs,
                  bool dynamic_ordering = true);

// The hand example, checked against its hard-coded trace: bound sequence,
// leaf order, per-pass stored bounds, and the open-list snapshots of the
// reference search. Prints a report; returns false on the first mismatch.
bool trace_pearl(std::ostream& out);

// n seeded random trees (w 2..4, d 2..6, no aliases): open-list reference
// and table-driven search must visit identical leaves. False on mismatch.
bool oracle_equivalence(int trees, std::uint64_t seed, std::ostream& log);

// n seeded trees: reference leaf count <= storage-free full-window
// alpha-beta leaf count, per instance. False on any violation.
bool dominance_check(int trees, std::uint64_t seed, std::ostream& log);

}  // namespace mts
