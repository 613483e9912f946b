#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mts/value.hpp"

namespace mts {

// One entry holds both bounds on the negamax value of a position, at the
// depth it was searched to. Missing bounds sit at the +-kInf sentinels.
struct BoundsEntry {
    std::uint64_t key = 0;
    Value lower = -kInf;  // f-: true value >= lower
    Value upper = kInf;   // f+: true value <= upper
    std::int16_t depth = 0;
    std::int16_t best_move = -1;
    std::uint8_t gen = 0;  // stamp of the search generation that last touched it

    bool exact() const { return lower == upper; }
    bool has_bound() const { return lower > -kInf || upper < kInf; }
};

enum class Replacement : unsigned char { DeepPreferred, AlwaysReplace };

struct TTConfig {
    int log2_entries = 16;  // >= 4
    bool lossless = false;  // unbounded map, nothing is ever evicted
    Replacement policy = Replacement::DeepPreferred;

    static TTConfig lossless_table() {
        TTConfig c;
        c.lossless = true;
        return c;
    }
    static TTConfig bounded(int bits, Replacement p = Replacement::DeepPreferred) {
        TTConfig c;
        c.log2_entries = bits;
        c.policy = p;
        return c;
    }
};

struct TTStats {
    std::uint64_t probes = 0;
    std::uint64_t hits = 0;
    std::uint64_t stores = 0;
    std::uint64_t evictions = 0;  // replaced a different key
    std::uint64_t rejected = 0;   // newcomer lost under deep-preferred
};

// 4-way set-associative (set = key mod (2^bits / 4)) with full-key
// verification, or a hash map in lossless mode. Same-key stores at the same
// depth merge into the entry: only the given bound moves, unless it
// contradicts the other bound, which then resets to its sentinel. A
// different depth replaces or is rejected per policy. When a set is full
// the weakest way by depth minus an age penalty is the victim, kept or
// evicted per policy; probes and stores re-stamp the entry's generation, so
// entries a deepening iteration no longer touches decay instead of squatting.
class TranspositionTable {
public:
    static constexpr int kWays = 4;

    explicit TranspositionTable(TTConfig cfg = {});

    // Null when absent (or key verification fails). The pointer is valid
    // until the next store/clear.
    const BoundsEntry* probe(std::uint64_t key);
    void store(std::uint64_t key, int depth, Bound kind, Value value,
               int best_move = -1);
    void clear();

    // Call once per deepening iteration; ages everything not re-touched.
    void new_generation() { gen_ = static_cast<std::uint8_t>(gen_ + 1); }
    int generation() const { return gen_; }

    const TTStats& stats() const { return stats_; }
    std::size_t occupancy() const { return occupancy_; }
    std::size_t capacity() const;
    const TTConfig& config() const { return cfg_; }

private:
    TTConfig cfg_;
    std::vector<BoundsEntry> slot_;
    std::vector<char> used_;
    std::unordered_map<std::uint64_t, BoundsEntry> map_;
    TTStats stats_;
    std::size_t occupancy_ = 0;
    std::uint8_t gen_ = 0;

    // Age costs two plies of depth: stale entries fade without making the
    // previous iteration's move-ordering seeds instant victims.
    static constexpr int kGenPenalty = 2;

    int weight(const BoundsEntry& e) const {
        return e.depth -
               kGenPenalty * static_cast<int>(
                                 static_cast<std::uint8_t>(gen_ - e.gen));
    }

    static void apply_bound(BoundsEntry& e, Bound kind, Value value, int best_move);
    static void reset_entry(BoundsEntry& e, std::uint64_t key, int depth,
                            Bound kind, Value value, int best_move);
};

}  // namespace mts
