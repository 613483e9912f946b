#include "mts/pearl_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace mts {

namespace {

constexpr const char* kNames[PearlTree::kNodes] = {
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k",
    "l", "m", "n", "o", "p", "q", "r", "s", "t", "u"};

enum { A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U };

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

PearlTree::PearlTree(Value u_value) {
    auto link = [&](int p, std::initializer_list<int> kids) {
        int i = 0;
        for (int k : kids) node_[p].child[i++] = k;
        node_[p].nchild = i;
    };
    link(A, {B, H});
    link(B, {C});
    link(C, {D, F});
    link(D, {E, N});
    link(F, {G});
    link(H, {I, P});
    link(I, {J, L});
    link(J, {K});
    link(L, {M, O});
    link(P, {Q, R});
    link(Q, {S, T});
    link(R, {U});

    node_[A].depth = 0;
    node_[B].depth = node_[H].depth = 1;
    node_[C].depth = node_[I].depth = node_[P].depth = 2;
    for (int id : {D, F, J, L, Q, R}) node_[id].depth = 3;
    for (int id : {E, G, K, M, N, O, S, T, U}) node_[id].depth = 4;

    value_[E] = 41;
    value_[G] = 12;
    value_[K] = 34;
    value_[M] = 36;
    value_[N] = 5;
    value_[O] = 35;
    value_[S] = 50;
    value_[T] = 36;
    value_[U] = u_value;
    // Interior statics are the subtree minimax values; only exercised by
    // searches shallower than the full depth.
    for (int id = kNodes - 1; id >= 0; --id)
        if (node_[id].nchild > 0) value_[id] = minimax_of(id);
}

Value PearlTree::minimax_of(int id) const {
    const Node& n = node_[id];
    if (n.nchild == 0) return value_[id];
    bool maxing = n.depth % 2 == 0;
    Value best = maxing ? -kInf : kInf;
    for (int i = 0; i < n.nchild; ++i) {
        Value v = value_[n.child[i]];  // children already filled (reverse order)
        best = maxing ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

GameState PearlTree::root() const { return state_of(A); }

GameState PearlTree::state_of(int id) const {
    GameState s;
    s.a = static_cast<std::uint64_t>(id);
    s.ply = node_[id].depth;
    s.to_move = node_[id].depth % 2 == 0 ? Side::Max : Side::Min;
    return s;
}

bool PearlTree::is_terminal(const GameState& s) const {
    return node_[s.a].nchild == 0;
}

int PearlTree::move_count(const GameState& s) const { return node_[s.a].nchild; }

GameState PearlTree::apply_move(const GameState& s, int move) const {
    const Node& n = node_[s.a];
    if (move < 0 || move >= n.nchild)
        throw std::out_of_range("PearlTree: illegal move ordinal");
    return state_of(n.child[move]);
}

Value PearlTree::evaluate(const GameState& s) const { return value_[s.a]; }

std::uint64_t PearlTree::state_key(const GameState& s) const {
    return mix(s.a + 0x5157ull);
}

std::string PearlTree::describe(const GameState& s) const { return kNames[s.a]; }

const char* PearlTree::node_name(int id) const { return kNames[id]; }

std::string PearlTree::describe_move(const GameState& s, int move) const {
    return kNames[node_[s.a].child[move]];
}

}  // namespace mts
