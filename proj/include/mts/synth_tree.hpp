#pragma once

#include <string>
#include <vector>

#include "mts/game.hpp"

namespace mts {

// One line of a synthetic suite file, e.g.
//   seed=7 w=3 d=6 corr=0.5 tp=0.1 order=0.9 vmin=-100 vmax=100
// w accepts either a single width or a range "2..4".
struct SynthTreeConfig {
    std::uint64_t seed = 1;
    int branch_min = 2;
    int branch_max = 2;
    int depth = 4;
    Value value_min = -100;
    Value value_max = 100;
    double correlation = 0.0;
    double transposition_density = 0.0;
    double ordering = 0.0;

    static SynthTreeConfig parse(const std::string& line);
    std::string to_string() const;
};

// A pre-built random game DAG of uniform depth. Every node carries a static
// value: the root draws uniformly from [vmin, vmax], a child interpolates
// between its parent's draw and a fresh draw with weight `corr` (corr=0 is
// i.i.d., corr=1 copies the parent). With tp > 0 a child slot may alias an
// already-built node of the same depth, sharing its key and subtree.
// `order` sets how strongly child slots are sorted best-first for the side
// to move (0 = construction order, 1 = perfectly informed), emulating the
// move-ordering quality of a real program.
class SyntheticTree final : public Game {
public:
    explicit SyntheticTree(const SynthTreeConfig& cfg);

    GameState root() const override;
    bool is_terminal(const GameState& s) const override;
    int move_count(const GameState& s) const override;
    GameState apply_move(const GameState& s, int move) const override;
    Value evaluate(const GameState& s) const override;
    std::uint64_t state_key(const GameState& s) const override;
    std::string describe(const GameState& s) const override;

    const SynthTreeConfig& config() const { return cfg_; }
    int node_count() const { return static_cast<int>(node_.size()); }
    GameState state_of(int id) const;
    // Fraction of child slots that aliased an existing node.
    double alias_fraction() const;

private:
    struct Node {
        Value value;
        std::uint64_t key;
        int first_edge;
        int nchild;
        signed char depth;
    };

    SynthTreeConfig cfg_;
    std::vector<Node> node_;
    std::vector<int> edge_;  // child node ids, nchild per node from first_edge
    long alias_slots_ = 0;
    long total_slots_ = 0;

    int build(int depth, Value parent_value, std::vector<std::vector<int>>& pool,
              class Rng& rng);
};

}  // namespace mts
