#include "mts/othello.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mts {

namespace {

constexpr int kDirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                             {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

int popcount(std::uint64_t x) { return std::popcount(x); }

}  // namespace

Othello6::Othello6() {
    // Fixed-seed splitmix64 so every process sees the same key stream.
    std::uint64_t s = 0x6f7468656c6c6f36ull;  // "othello6"
    auto next = [&s]() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    for (int c = 0; c < 2; ++c)
        for (int sq = 0; sq < kSquares; ++sq) zobrist_[c][sq] = next();
    zobrist_side_ = next();
}

GameState Othello6::root() const {
    GameState s;
    auto bit = [](int col, int row) { return 1ull << (row * kSize + col); };
    // centre pattern: c4/d3 black, c3/d4 white (cols c=2, d=3; rows 3/4)
    s.a = bit(2, 3) | bit(3, 2);
    s.b = bit(2, 2) | bit(3, 3);
    s.ply = 0;
    s.to_move = Side::Max;
    return s;
}

std::uint64_t Othello6::flips_for(std::uint64_t own, std::uint64_t opp,
                                  int sq) const {
    std::uint64_t taken = own | opp;
    if (taken & (1ull << sq)) return 0;
    int col = sq % kSize, row = sq / kSize;
    std::uint64_t flips = 0;
    for (auto& d : kDirs) {
        std::uint64_t line = 0;
        int c = col + d[0], r = row + d[1];
        while (c >= 0 && c < kSize && r >= 0 && r < kSize) {
            std::uint64_t b = 1ull << (r * kSize + c);
            if (opp & b) {
                line |= b;
            } else if (own & b) {
                flips |= line;
                break;
            } else {
                break;
            }
            c += d[0];
            r += d[1];
        }
    }
    return flips;
}

std::uint64_t Othello6::legal_mask(std::uint64_t own, std::uint64_t opp) const {
    std::uint64_t mask = 0;
    for (int sq = 0; sq < kSquares; ++sq)
        if (flips_for(own, opp, sq)) mask |= 1ull << sq;
    return mask;
}

bool Othello6::is_terminal(const GameState& s) const {
    std::uint64_t own = s.to_move == Side::Max ? s.a : s.b;
    std::uint64_t opp = s.to_move == Side::Max ? s.b : s.a;
    return legal_mask(own, opp) == 0 && legal_mask(opp, own) == 0;
}

int Othello6::move_count(const GameState& s) const {
    std::uint64_t own = s.to_move == Side::Max ? s.a : s.b;
    std::uint64_t opp = s.to_move == Side::Max ? s.b : s.a;
    std::uint64_t mask = legal_mask(own, opp);
    if (mask) return popcount(mask);
    return legal_mask(opp, own) ? 1 : 0;  // single pass move, or terminal
}

int Othello6::move_square(const GameState& s, int move) const {
    std::uint64_t own = s.to_move == Side::Max ? s.a : s.b;
    std::uint64_t opp = s.to_move == Side::Max ? s.b : s.a;
    std::uint64_t mask = legal_mask(own, opp);
    if (!mask) {
        if (move == 0 && legal_mask(opp, own)) return -1;  // pass
        throw std::out_of_range("Othello6: illegal move ordinal");
    }
    for (int sq = 0; sq < kSquares; ++sq) {
        if (mask & (1ull << sq)) {
            if (move == 0) return sq;
            --move;
        }
    }
    throw std::out_of_range("Othello6: illegal move ordinal");
}

GameState Othello6::apply_move(const GameState& s, int move) const {
    int sq = move_square(s, move);
    GameState t = s;
    t.ply = static_cast<std::int16_t>(s.ply + 1);
    t.to_move = flip(s.to_move);
    if (sq < 0) return t;  // pass
    std::uint64_t own = s.to_move == Side::Max ? s.a : s.b;
    std::uint64_t opp = s.to_move == Side::Max ? s.b : s.a;
    std::uint64_t fl = flips_for(own, opp, sq);
    own |= fl | (1ull << sq);
    opp &= ~fl;
    t.a = s.to_move == Side::Max ? own : opp;
    t.b = s.to_move == Side::Max ? opp : own;
    return t;
}

Value Othello6::evaluate(const GameState& s) const {
    int discs = popcount(s.a) - popcount(s.b);
    int mob = popcount(legal_mask(s.a, s.b)) - popcount(legal_mask(s.b, s.a));
    return 4 * discs + mob;
}

std::uint64_t Othello6::state_key(const GameState& s) const {
    std::uint64_t k = s.to_move == Side::Min ? zobrist_side_ : 0;
    for (std::uint64_t bb = s.a; bb;) {
        int sq = std::countr_zero(bb);
        bb &= bb - 1;
        k ^= zobrist_[0][sq];
    }
    for (std::uint64_t bb = s.b; bb;) {
        int sq = std::countr_zero(bb);
        bb &= bb - 1;
        k ^= zobrist_[1][sq];
    }
    return k;
}

int Othello6::move_feature(const GameState& s, int move) const {
    int sq = move_square(s, move);
    return sq < 0 ? kPassFeature : sq;
}

int Othello6::square_of(const std::string& coord) {
    if (coord.size() != 2) return -1;
    int col = coord[0] - 'a';
    int row = coord[1] - '1';
    if (col < 0 || col >= kSize || row < 0 || row >= kSize) return -1;
    return row * kSize + col;
}

std::string Othello6::coord_of(int square) {
    std::string out(2, '?');
    out[0] = static_cast<char>('a' + square % kSize);
    out[1] = static_cast<char>('1' + square / kSize);
    return out;
}

std::string Othello6::describe_move(const GameState& s, int move) const {
    int sq = move_square(s, move);
    return sq < 0 ? "--" : coord_of(sq);
}

std::string Othello6::describe(const GameState& s) const {
    std::string out;
    for (int row = kSize - 1; row >= 0; --row) {
        for (int col = 0; col < kSize; ++col) {
            std::uint64_t b = 1ull << (row * kSize + col);
            out += (s.a & b) ? 'X' : (s.b & b) ? 'O' : '.';
        }
        out += '\n';
    }
    out += s.to_move == Side::Max ? "X to move" : "O to move";
    return out;
}

GameState Othello6::replay_line(const std::string& line, int line_no) const {
    auto fail = [line_no](const std::string& msg) {
        std::ostringstream out;
        out << "positions file line " << line_no << ": " << msg;
        throw std::runtime_error(out.str());
    };
    GameState s = root();
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        int n = move_count(s);
        if (n == 0) fail("move '" + tok + "' after game end");
        if (tok == "--") {
            if (move_square(s, 0) != -1) fail("pass while moves are available");
            s = apply_move(s, 0);
            continue;
        }
        int sq = square_of(tok);
        if (sq < 0) fail("bad coordinate '" + tok + "'");
        int found = -1;
        for (int m = 0; m < n; ++m)
            if (move_square(s, m) == sq) {
                found = m;
                break;
            }
        if (found < 0) fail("illegal move '" + tok + "'");
        s = apply_move(s, found);
    }
    return s;
}

std::vector<GameState> Othello6::load_positions(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open positions file: " + path);
    std::vector<GameState> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        out.push_back(replay_line(line, line_no));
    }
    return out;
}

}  // namespace mts
