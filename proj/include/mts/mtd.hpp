#pragma once

#include <functional>
#include <vector>

#include "mts/search.hpp"

namespace mts {

// One run of the bound-driven loop: repeated null-window tests squeeze the
// interval [f-, f+] around the minimax value until the two bounds meet.
struct MtdResult {
    Value value = 0;
    int calls = 0;                   // number of mt() passes
    std::vector<Value> bounds;       // gamma used per pass
    std::vector<Value> returns;      // mt return per pass
    std::vector<Value> lower_hist;   // f- after each pass
    std::vector<Value> upper_hist;   // f+ after each pass
};

// next_bound(g, fail_high, f_minus, f_plus) -> gamma for the next pass.
// Every gamma must satisfy f_minus < gamma <= f_plus; mtd() throws
// std::logic_error otherwise instead of spinning forever.
using NextBound = std::function<Value(Value, bool, Value, Value)>;

MtdResult mtd(SearchContext& ctx, const GameState& s, int depth,
              Value first_bound, const NextBound& next_bound);

MtdResult mtd_plus_inf(SearchContext& ctx, const GameState& s, int depth);
MtdResult mtd_minus_inf(SearchContext& ctx, const GameState& s, int depth);
MtdResult mtd_f(SearchContext& ctx, const GameState& s, int depth,
                Value first_guess);
MtdResult mtd_bi(SearchContext& ctx, const GameState& s, int depth);
MtdResult mtd_step(SearchContext& ctx, const GameState& s, int depth,
                   Value step_size);

struct MtdBestResult {
    int move = -1;
    int calls = 0;
    Value proven_lower = -kInf;  // certified floor for the returned move
};

// Selects a root move whose proven lower bound is >= every sibling's proven
// upper bound, stopping as soon as that holds even if the exact root value
// is still unresolved. Requires a transposition table on the context.
MtdBestResult mtd_best(SearchContext& ctx, const GameState& s, int depth,
                       Value first_guess);

}  // namespace mts
