#include "mts/synth_tree.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mts {

// Hand-rolled xoshiro-free generator: std::mt19937_64 bit stream with plain
// modulo draws, so a (seed, config) pair replays identically on any stdlib.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x106689d45497fdb5ull) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi] inclusive; modulo bias is irrelevant here
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double unit() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::uint64_t s_;
};

SynthTreeConfig SynthTreeConfig::parse(const std::string& line) {
    SynthTreeConfig cfg;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("synth config: expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "seed") {
                cfg.seed = std::stoull(val);
            } else if (key == "w") {
                auto dots = val.find("..");
                if (dots == std::string::npos) {
                    cfg.branch_min = cfg.branch_max = std::stoi(val);
                } else {
                    cfg.branch_min = std::stoi(val.substr(0, dots));
                    cfg.branch_max = std::stoi(val.substr(dots + 2));
                }
            } else if (key == "d") {
                cfg.depth = std::stoi(val);
            } else if (key == "corr") {
                cfg.correlation = std::stod(val);
            } else if (key == "tp") {
                cfg.transposition_density = std::stod(val);
            } else if (key == "order") {
                cfg.ordering = std::stod(val);
            } else if (key == "vmin") {
                cfg.value_min = std::stoi(val);
            } else if (key == "vmax") {
                cfg.value_max = std::stoi(val);
            } else {
                throw std::runtime_error("synth config: unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("synth config: bad value for '" + key + "'");
        }
    }
    if (cfg.branch_min < 1 || cfg.branch_max < cfg.branch_min)
        throw std::runtime_error("synth config: bad branching range");
    if (cfg.depth < 0) throw std::runtime_error("synth config: negative depth");
    if (cfg.value_min > cfg.value_max)
        throw std::runtime_error("synth config: empty value range");
    if (cfg.correlation < 0.0 || cfg.correlation > 1.0)
        throw std::runtime_error("synth config: corr outside [0,1]");
    if (cfg.transposition_density < 0.0 || cfg.transposition_density > 1.0)
        throw std::runtime_error("synth config: tp outside [0,1]");
    if (cfg.ordering < 0.0 || cfg.ordering > 1.0)
        throw std::runtime_error("synth config: order outside [0,1]");
    return cfg;
}

std::string SynthTreeConfig::to_string() const {
    std::ostringstream out;
    out << "seed=" << seed << " w=" << branch_min;
    if (branch_max != branch_min) out << ".." << branch_max;
    out << " d=" << depth << " corr=" << correlation
        << " tp=" << transposition_density;
    if (ordering != 0.0) out << " order=" << ordering;
    if (value_min != -100 || value_max != 100)
        out << " vmin=" << value_min << " vmax=" << value_max;
    return out.str();
}

SyntheticTree::SyntheticTree(const SynthTreeConfig& cfg) : cfg_(cfg) {
    Rng rng(cfg.seed);
    std::vector<std::vector<int>> pool(cfg.depth + 1);
    Value root_value =
        static_cast<Value>(rng.uniform(cfg.value_min, cfg.value_max));
    build(0, root_value, pool, rng);
}

// Depth-first construction; all randomness flows from one stream in a fixed
// order, so a config rebuilds bit-identically.
int SyntheticTree::build(int depth, Value value,
                         std::vector<std::vector<int>>& pool, Rng& rng) {
    int id = static_cast<int>(node_.size());
    Node n;
    n.value = value;
    n.depth = static_cast<signed char>(depth);
    n.key = rng.next() | 1;  // nonzero; collisions are ~2^-64, ignored
    n.first_edge = -1;
    n.nchild = 0;
    node_.push_back(n);
    pool[depth].push_back(id);

    if (depth == cfg_.depth) return id;

    int width = static_cast<int>(rng.uniform(cfg_.branch_min, cfg_.branch_max));
    // Draw every slot before recursing so the slots can be reordered; the
    // subtree streams then run in final slot order.
    struct Slot {
        int alias_id = -1;  // >= 0: points at an existing node
        Value value = 0;
    };
    std::vector<Slot> slots(width);
    for (int i = 0; i < width; ++i) {
        ++total_slots_;
        bool alias = cfg_.transposition_density > 0.0 &&
                     !pool[depth + 1].empty() &&
                     rng.unit() < cfg_.transposition_density;
        if (alias) {
            ++alias_slots_;
            slots[i].alias_id = pool[depth + 1][static_cast<std::size_t>(
                rng.uniform(0, static_cast<long>(pool[depth + 1].size()) - 1))];
            slots[i].value = node_[slots[i].alias_id].value;
        } else {
            Value fresh =
                static_cast<Value>(rng.uniform(cfg_.value_min, cfg_.value_max));
            double c = cfg_.correlation;
            slots[i].value = static_cast<Value>(
                std::llround(c * value + (1.0 - c) * fresh));
        }
    }

    if (cfg_.ordering > 0.0 && width > 1) {
        // Each pick takes the best remaining slot with probability `order`,
        // otherwise a uniform remaining one. Values are Max's view, so
        // "best" flips sign at odd depth.
        bool max_side = depth % 2 == 0;
        std::vector<Slot> rest(slots.begin(), slots.end());
        slots.clear();
        while (!rest.empty()) {
            std::size_t pick = 0;
            if (rest.size() > 1 && rng.unit() >= cfg_.ordering)
                pick = static_cast<std::size_t>(
                    rng.uniform(0, static_cast<long>(rest.size()) - 1));
            else
                for (std::size_t j = 1; j < rest.size(); ++j)
                    if (max_side ? rest[j].value > rest[pick].value
                                 : rest[j].value < rest[pick].value)
                        pick = j;
            slots.push_back(rest[pick]);
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    }

    std::vector<int> kids(width, -1);
    for (int i = 0; i < width; ++i)
        kids[i] = slots[i].alias_id >= 0
                      ? slots[i].alias_id
                      : build(depth + 1, slots[i].value, pool, rng);
    node_[id].first_edge = static_cast<int>(edge_.size());
    node_[id].nchild = width;
    edge_.insert(edge_.end(), kids.begin(), kids.end());
    return id;
}

GameState SyntheticTree::root() const { return state_of(0); }

GameState SyntheticTree::state_of(int id) const {
    GameState s;
    s.a = static_cast<std::uint64_t>(id);
    s.ply = node_[id].depth;
    s.to_move = node_[id].depth % 2 == 0 ? Side::Max : Side::Min;
    return s;
}

bool SyntheticTree::is_terminal(const GameState& s) const {
    return node_[s.a].nchild == 0;
}

int SyntheticTree::move_count(const GameState& s) const {
    return node_[s.a].nchild;
}

GameState SyntheticTree::apply_move(const GameState& s, int move) const {
    const Node& n = node_[s.a];
    if (move < 0 || move >= n.nchild)
        throw std::out_of_range("SyntheticTree: illegal move ordinal");
    return state_of(edge_[n.first_edge + move]);
}

Value SyntheticTree::evaluate(const GameState& s) const {
    return node_[s.a].value;
}

std::uint64_t SyntheticTree::state_key(const GameState& s) const {
    return node_[s.a].key;
}

std::string SyntheticTree::describe(const GameState& s) const {
    return "#" + std::to_string(s.a);
}

double SyntheticTree::alias_fraction() const {
    return total_slots_ ? static_cast<double>(alias_slots_) / total_slots_ : 0.0;
}

}  // namespace mts
