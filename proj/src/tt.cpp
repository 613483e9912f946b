#include "mts/tt.hpp"

#include <stdexcept>

namespace mts {

TranspositionTable::TranspositionTable(TTConfig cfg) : cfg_(cfg) {
    if (!cfg_.lossless) {
        if (cfg_.log2_entries < 4 || cfg_.log2_entries > 30)
            throw std::invalid_argument("tt: log2_entries out of range");
        slot_.resize(std::size_t(1) << cfg_.log2_entries);
        used_.assign(slot_.size(), 0);
    }
}

std::size_t TranspositionTable::capacity() const {
    return cfg_.lossless ? static_cast<std::size_t>(-1) : slot_.size();
}

void TranspositionTable::clear() {
    if (cfg_.lossless) {
        map_.clear();
    } else {
        used_.assign(slot_.size(), 0);
    }
    occupancy_ = 0;
    stats_ = TTStats{};
    gen_ = 0;
}

const BoundsEntry* TranspositionTable::probe(std::uint64_t key) {
    ++stats_.probes;
    BoundsEntry* e = nullptr;
    if (cfg_.lossless) {
        auto it = map_.find(key);
        if (it != map_.end()) e = &it->second;
    } else {
        std::size_t base = (key & (slot_.size() / kWays - 1)) * kWays;
        for (std::size_t i = base; i < base + kWays; ++i)
            if (used_[i] && slot_[i].key == key) {
                e = &slot_[i];
                break;
            }
    }
    if (e) {
        ++stats_.hits;
        e->gen = gen_;  // still in use: protect from age-based eviction
    }
    return e;
}

void TranspositionTable::apply_bound(BoundsEntry& e, Bound kind, Value value,
                                     int best_move) {
    if (kind == Bound::Lower) {
        e.lower = value;
        if (e.upper < value) e.upper = kInf;  // contradicts: drop the other side
    } else {
        e.upper = value;
        if (e.lower > value) e.lower = -kInf;
    }
    if (best_move >= 0) e.best_move = static_cast<std::int16_t>(best_move);
}

void TranspositionTable::reset_entry(BoundsEntry& e, std::uint64_t key, int depth,
                                     Bound kind, Value value, int best_move) {
    std::int16_t keep_move = (e.key == key) ? e.best_move : std::int16_t(-1);
    e = BoundsEntry{};
    e.key = key;
    e.depth = static_cast<std::int16_t>(depth);
    e.best_move = keep_move;
    apply_bound(e, kind, value, best_move);
}

void TranspositionTable::store(std::uint64_t key, int depth, Bound kind,
                               Value value, int best_move) {
    if (value <= -kInf || value >= kInf)
        throw std::invalid_argument("tt: refusing to store a sentinel value");
    if (depth < 0) throw std::invalid_argument("tt: negative depth");
    ++stats_.stores;

    BoundsEntry* e;
    bool fresh = false;
    if (cfg_.lossless) {
        auto [it, inserted] = map_.try_emplace(key);
        e = &it->second;
        fresh = inserted;
        if (inserted) {
            e->key = key;
            e->depth = static_cast<std::int16_t>(depth);
            ++occupancy_;
        }
    } else {
        std::size_t base = (key & (slot_.size() / kWays - 1)) * kWays;
        std::size_t match = base + kWays, empty = match, weakest = match;
        for (std::size_t i = base; i < base + kWays; ++i) {
            if (!used_[i]) {
                if (empty == base + kWays) empty = i;
                continue;
            }
            if (slot_[i].key == key) {
                match = i;
                break;
            }
            if (weakest == base + kWays ||
                weight(slot_[i]) < weight(slot_[weakest]))
                weakest = i;
        }
        if (match < base + kWays) {
            e = &slot_[match];
        } else if (empty < base + kWays) {
            used_[empty] = 1;
            fresh = true;
            e = &slot_[empty];
            e->key = key;
            e->depth = static_cast<std::int16_t>(depth);
            e->lower = -kInf;
            e->upper = kInf;
            e->best_move = -1;
            ++occupancy_;
        } else {
            e = &slot_[weakest];  // set full: contest the weakest way
        }
    }

    if (fresh) {
        apply_bound(*e, kind, value, best_move);
        e->gen = gen_;
        return;
    }

    if (e->key == key) {
        if (e->depth == depth) {
            apply_bound(*e, kind, value, best_move);
            e->gen = gen_;
        } else if (depth > e->depth ||
                   cfg_.policy == Replacement::AlwaysReplace) {
            // deeper (or forced) rewrite: old bounds are for another horizon
            reset_entry(*e, key, depth, kind, value, best_move);
            e->gen = gen_;
        } else {
            ++stats_.rejected;  // shallower newcomer loses
        }
        return;
    }

    // key collision (bounded table only); the newcomer's weight is its depth
    bool replace =
        cfg_.policy == Replacement::AlwaysReplace || depth >= weight(*e);
    if (replace) {
        ++stats_.evictions;
        reset_entry(*e, key, depth, kind, value, best_move);
        e->gen = gen_;
    } else {
        ++stats_.rejected;
    }
}

}  // namespace mts
