#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mts/value.hpp"

namespace mts {

struct LeafEvent {
    std::uint64_t key;
    Value value;  // raw static evaluation, Max's view
    bool operator==(const LeafEvent&) const = default;
};

// Node-accounting event stream for trace-equality tests.
struct VisitEvent {
    enum Kind : unsigned char { Interior, LeafEval, LeafFromTT, ChildSkip };
    std::uint64_t key;
    std::int16_t depth;
    Kind kind;
    bool operator==(const VisitEvent&) const = default;
};

// Every position the search touches is counted exactly once: leaf_evals
// (fresh evaluation), interior_visits (expanded node) or transposition_hits
// (answered from the table, either a stored leaf or a child skipped on its
// stored bound).
struct SearchStats {
    static constexpr int kMaxPly = 64;

    std::uint64_t leaf_evals = 0;
    std::uint64_t interior_visits = 0;
    std::uint64_t transposition_hits = 0;
    std::uint64_t mt_calls = 0;
    std::uint64_t asp_researches = 0;
    std::uint64_t distinct_states = 0;

    std::array<std::uint64_t, kMaxPly> cut_nodes{};
    std::array<std::uint64_t, kMaxPly> first_move_cuts{};
    std::array<std::uint64_t, kMaxPly> moves_at_cut{};

    std::vector<LeafEvent> leaf_trace;    // only when tracing is on
    std::vector<VisitEvent> visit_trace;  // only when tracing is on

    std::uint64_t total_nodes() const {
        return leaf_evals + interior_visits + transposition_hits;
    }
};

}  // namespace mts
