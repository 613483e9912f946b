#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "mts/game.hpp"
#include "mts/stats.hpp"
#include "mts/tt.hpp"
#include "mts/value.hpp"

namespace mts {

// Move ordering: on = transposition-table move first, remainder by history
// score; off = the game's static order untouched (required by the oracle
// equivalence and dominance properties).
struct SearchOptions {
    bool dynamic_ordering = true;
    bool use_history = true;
    Value asp_width = 8;
    Value step_size = 10;    // mtd_step jump
    int id_step = 1;         // iterative deepening stride
    int id_start = 0;        // 0 = derived so the last iteration hits max_depth
    bool trace_leaves = false;
    bool trace_visits = false;
    bool track_distinct = true;
};

struct HistoryTable {
    static constexpr int kFeatures = 64;
    std::array<std::array<std::uint64_t, kFeatures>, 2> score{};

    void bump(Side side, int feature, int depth) {
        if (feature < 0 || feature >= kFeatures) feature = kFeatures - 1;
        int d = depth < 60 ? depth : 60;
        score[side == Side::Max ? 0 : 1][feature] += std::uint64_t(1) << d;
    }
    std::uint64_t get(Side side, int feature) const {
        if (feature < 0 || feature >= kFeatures) feature = kFeatures - 1;
        return score[side == Side::Max ? 0 : 1][feature];
    }
    void halve() {
        for (auto& row : score)
            for (auto& v : row) v >>= 1;
    }
    void clear() { score = {}; }
};

class SearchContext {
public:
    SearchContext(const Game& g, TranspositionTable* table,
                  SearchOptions options = {})
        : game(g), tt(table), opts(options) {}

    const Game& game;
    TranspositionTable* tt;  // null = storage-free search
    SearchOptions opts;
    SearchStats stats;
    HistoryTable history;
    std::unordered_set<std::uint64_t> seen;

    void reset_stats() {
        stats = SearchStats{};
        seen.clear();
    }
    void note_state(std::uint64_t key) {
        if (opts.track_distinct && seen.insert(key).second)
            ++stats.distinct_states;
    }
};

// --- core searches (public API is minimax: values are from Max's view) ---

// Fail-soft alpha-beta with storage. Postcondition on the return g:
//   alpha < g < beta  ->  g is the minimax value at this horizon
//   g <= alpha        ->  g is an upper bound on it
//   g >= beta         ->  g is a lower bound on it
Value alpha_beta(SearchContext& ctx, const GameState& s, int depth, Window w);

// Null-window memory test: equivalent to alpha_beta with (gamma-1, gamma),
// kept as an independent implementation so the pair can cross-check.
Value mt(SearchContext& ctx, const GameState& s, int depth, Value gamma);

Value negascout(SearchContext& ctx, const GameState& s, int depth, Window w);

// NegaScout around (center-width, center+width); re-searches with an open
// half-window on fail until the three-case postcondition certifies success.
Value aspiration_negascout(SearchContext& ctx, const GameState& s, int depth,
                           Value center, Value width);

// Ordinal permutation for a node under the context's ordering policy.
std::vector<int> order_moves(SearchContext& ctx, const GameState& s,
                             int move_count);

// --- iterative deepening ---

enum class Algorithm {
    AlphaBeta,
    NegaScout,
    AspNega,
    SSS,    // MTD(+inf)
    Dual,   // MTD(-inf)
    MtdF,
    MtdBi,
    MtdStep,
};

const char* algorithm_name(Algorithm a);
bool algorithm_from_name(const std::string& name, Algorithm& out);

struct GuessPolicy {
    enum Kind { Prev, Prev2, Fixed } kind = Prev;
    Value fixed = 0;
};

struct IterationRow {
    int depth = 0;
    Value value = 0;
    // cumulative counters after this iteration
    std::uint64_t leaf_evals = 0;
    std::uint64_t interior_visits = 0;
    std::uint64_t transposition_hits = 0;
    std::uint64_t total_nodes = 0;
    std::uint64_t distinct_states = 0;
    std::uint64_t mt_calls = 0;
    std::array<std::uint64_t, SearchStats::kMaxPly> cut_nodes{};
    std::array<std::uint64_t, SearchStats::kMaxPly> first_move_cuts{};
    std::array<std::uint64_t, SearchStats::kMaxPly> moves_at_cut{};
};

struct IdResult {
    std::vector<IterationRow> rows;
    Value value = 0;  // last iteration's value
};

// Runs depth id_start, id_start+id_step, ..., max_depth with a persistent
// table; history scores are halved between iterations. Counters accumulate.
IdResult iterative_deepen(SearchContext& ctx, const GameState& s, int max_depth,
                          Algorithm algo, GuessPolicy guess = {});

}  // namespace mts
