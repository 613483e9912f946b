#pragma once

#include <cstddef>
#include <list>
#include <string>
#include <vector>

#include "mts/game.hpp"
#include "mts/stats.hpp"
#include "mts/tt.hpp"

namespace mts {

// Best-first state-space search over the tree unfolding of a game, kept as
// a merit-sorted OPEN list of (node, LIVE/SOLVED, merit) triples. Serves as
// the reference the table-driven searches are checked against, so it shares
// nothing with them but the Game interface.
struct SssItem {
    std::vector<int> path;          // move ordinals from the root
    std::vector<GameState> states;  // root..node along the path
    bool live = true;
    Value merit = kInf;

    const GameState& state() const { return states.back(); }
};

struct SssOpenView {
    std::string label;
    std::uint64_t key = 0;
    Value merit = 0;
    bool live = true;
};

class SssMachine {
  public:
    SssMachine(const Game& game, const GameState& root, int depth);

    // Applies one expansion step. Returns the case number 1..6 of the rule
    // applied, or 0 when the popped state was the solved root (done).
    int step();
    bool done() const { return done_; }
    Value value() const;

    const std::list<SssItem>& open() const { return open_; }
    const std::vector<LeafEvent>& leaf_trace() const { return leaf_trace_; }
    // Move-ordinal paths ("1.0.1") of the evaluated leaves, same order.
    const std::vector<std::string>& leaf_paths() const { return leaf_paths_; }
    const std::vector<std::vector<SssOpenView>>& snapshots() const {
        return snapshots_;
    }
    std::size_t max_open() const { return max_open_; }
    std::uint64_t expansions() const { return expansions_; }

  private:
    bool is_leaf(const SssItem& it) const;
    bool is_max(const SssItem& it) const;
    SssItem child_of(const SssItem& it, int move) const;
    void insert_by_merit(SssItem item);
    void push_front(SssItem item);
    void purge_descendants(const std::vector<int>& ancestor_path);
    void record_snapshot();
    void note_open_size();

    const Game& game_;
    int depth_;
    std::list<SssItem> open_;
    std::vector<LeafEvent> leaf_trace_;
    std::vector<std::string> leaf_paths_;
    std::vector<std::vector<SssOpenView>> snapshots_;
    std::size_t max_open_ = 0;
    std::uint64_t expansions_ = 0;
    Value last_pop_merit_ = kInf;
    Value value_ = 0;
    bool done_ = false;
};

struct SssResult {
    Value value = 0;
    std::vector<LeafEvent> leaf_trace;
    std::vector<std::string> leaf_paths;
    std::vector<std::vector<SssOpenView>> snapshots;
    std::size_t max_open = 0;
    std::uint64_t expansions = 0;
};

SssResult sss_star(const Game& game, const GameState& root, int depth);

// Runs the OPEN-list search and the table-driven descending-bound search
// side by side on the same position and compares the leaf visit sequences
// and final values. tt == nullptr uses a fresh lossless table (the setting
// where the two must agree move for move); a small bounded table may be
// passed to observe where eviction makes them part ways.
struct EquivalenceReport {
    bool equivalent = false;
    Value sss_value = 0;
    Value ab_value = 0;
    std::size_t first_divergence = 0;  // index into the leaf sequences
    std::string detail;
    std::vector<LeafEvent> sss_leaves;
    std::vector<LeafEvent> ab_leaves;
};

EquivalenceReport equivalence_check(const Game& game, const GameState& root,
                                    int depth,
                                    TranspositionTable* tt = nullptr);

}  // namespace mts
