#pragma once

#include <array>

#include "mts/game.hpp"

namespace mts {

// The 21-node hand example tree (nodes a..u, uniform depth 4, variable
// width). Node u sits under r and is never reached by a correct search;
// its value is configurable so tests can prove it does not matter.
class PearlTree final : public Game {
public:
    static constexpr int kNodes = 21;

    explicit PearlTree(Value u_value = 0);

    GameState root() const override;
    bool is_terminal(const GameState& s) const override;
    int move_count(const GameState& s) const override;
    GameState apply_move(const GameState& s, int move) const override;
    Value evaluate(const GameState& s) const override;
    std::uint64_t state_key(const GameState& s) const override;
    std::string describe(const GameState& s) const override;
    std::string describe_move(const GameState& s, int move) const override;

    GameState state_of(int id) const;
    const char* node_name(int id) const;
    int id_of(const GameState& s) const { return static_cast<int>(s.a); }

private:
    struct Node {
        std::array<int, 2> child{{-1, -1}};
        int nchild = 0;
        signed char depth = 0;
    };
    std::array<Node, kNodes> node_{};
    std::array<Value, kNodes> value_{};  // leaves: given; interior: minimax

    Value minimax_of(int id) const;
};

}  // namespace mts
