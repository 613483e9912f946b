#include "mts/game.hpp"

#include <cstdio>

namespace mts {

int Game::move_feature(const GameState&, int move) const {
    return move < 63 ? move : 63;
}

std::string Game::describe(const GameState& s) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(state_key(s)));
    return buf;
}

std::string Game::describe_move(const GameState&, int move) const {
    return std::to_string(move);
}

}  // namespace mts
