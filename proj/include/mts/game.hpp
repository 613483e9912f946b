#pragma once

#include <cstdint>
#include <string>

#include "mts/value.hpp"

namespace mts {

// Side to move. Max owns the root convention: evaluate() always scores from
// Max's point of view, whoever is to move.
enum class Side : signed char { Max = 1, Min = -1 };

inline Side flip(Side s) { return s == Side::Max ? Side::Min : Side::Max; }

// One fixed-size value type for every game. a/b are game-defined payload
// (bitboards, node index, ...). ply counts moves from the game's own root,
// not from the search root.
struct GameState {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::int16_t ply = 0;
    Side to_move = Side::Max;
};

// Moves are dense ordinals 0..move_count-1 in the game's static order.
// Reordering is the search's business; the game's order never changes.
class Game {
public:
    virtual ~Game() = default;

    virtual GameState root() const = 0;
    virtual bool is_terminal(const GameState& s) const = 0;
    virtual int move_count(const GameState& s) const = 0;
    // Throws std::out_of_range on an illegal ordinal.
    virtual GameState apply_move(const GameState& s, int move) const = 0;
    // Static evaluation from Max's perspective. |value| < kInf.
    virtual Value evaluate(const GameState& s) const = 0;
    // Transposition key: equal for equal positions with equal side to move.
    virtual std::uint64_t state_key(const GameState& s) const = 0;

    // Feature used by the history heuristic (e.g. destination square).
    // Defaults to the move ordinal, clamped to the table width.
    virtual int move_feature(const GameState& s, int move) const;
    virtual std::string describe(const GameState& s) const;
    virtual std::string describe_move(const GameState& s, int move) const;
};

}  // namespace mts
