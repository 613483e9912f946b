#pragma once

#include <string>
#include <vector>

#include "mts/game.hpp"

namespace mts {

// 6x6 Othello. Squares are row-major a1..f6 (bit = row*6 + col), state.a is
// Black's bitboard, state.b White's. Black plays first and is Max. A side
// with no placement passes; two consecutive stuck sides end the game.
//
// evaluate() = 4 * disc difference + mobility difference, Black's view.
// At a terminal both mobilities are zero, so the score degenerates to the
// scaled final disc count, which is the exact game result.
class Othello6 final : public Game {
public:
    static constexpr int kSize = 6;
    static constexpr int kSquares = kSize * kSize;
    static constexpr int kPassFeature = kSquares;  // history slot for pass

    Othello6();

    GameState root() const override;
    bool is_terminal(const GameState& s) const override;
    int move_count(const GameState& s) const override;
    GameState apply_move(const GameState& s, int move) const override;
    Value evaluate(const GameState& s) const override;
    std::uint64_t state_key(const GameState& s) const override;
    int move_feature(const GameState& s, int move) const override;
    std::string describe(const GameState& s) const override;
    std::string describe_move(const GameState& s, int move) const override;

    // Destination square of a move ordinal, -1 for a pass.
    int move_square(const GameState& s, int move) const;
    // Replay a space-separated move line ("d3 c5 -- ...") from the start
    // position. line_no is only used for error messages.
    GameState replay_line(const std::string& line, int line_no = 0) const;
    // One position per non-empty, non-comment ('#') line.
    std::vector<GameState> load_positions(const std::string& path) const;

    static int square_of(const std::string& coord);  // -1 if malformed
    static std::string coord_of(int square);

private:
    std::uint64_t zobrist_[2][kSquares];
    std::uint64_t zobrist_side_;

    std::uint64_t legal_mask(std::uint64_t own, std::uint64_t opp) const;
    std::uint64_t flips_for(std::uint64_t own, std::uint64_t opp, int sq) const;
};

}  // namespace mts
