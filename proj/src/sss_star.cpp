#include "mts/sss_star.hpp"

#include <algorithm>

#include "mts/mtd.hpp"
#include "mts/search.hpp"

namespace mts {

namespace {

// Lexicographic path order = left-to-right order in the tree unfolding.
bool tree_left_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool proper_descendant(const std::vector<int>& node,
                       const std::vector<int>& ancestor) {
    return node.size() > ancestor.size() &&
           std::equal(ancestor.begin(), ancestor.end(), node.begin());
}

}  // namespace

SssMachine::SssMachine(const Game& game, const GameState& root, int depth)
    : game_(game), depth_(depth) {
    require(depth >= 0, "sss: negative depth");
    SssItem start;
    start.states.push_back(root);
    start.live = true;
    start.merit = kInf;
    open_.push_back(std::move(start));
    note_open_size();
}

bool SssMachine::is_leaf(const SssItem& it) const {
    return static_cast<int>(it.path.size()) == depth_ ||
           game_.is_terminal(it.state());
}

bool SssMachine::is_max(const SssItem& it) const {
    return it.state().to_move == Side::Max;
}

SssItem SssMachine::child_of(const SssItem& it, int move) const {
    SssItem c;
    c.path = it.path;
    c.path.push_back(move);
    c.states = it.states;
    c.states.push_back(game_.apply_move(it.state(), move));
    c.live = true;
    c.merit = it.merit;
    return c;
}

void SssMachine::insert_by_merit(SssItem item) {
    auto it = open_.begin();
    // Stop at the first entry the newcomer outranks: lower merit, or equal
    // merit but further to the right in the tree.
    while (it != open_.end() &&
           !(it->merit < item.merit ||
             (it->merit == item.merit && tree_left_of(item.path, it->path))))
        ++it;
    open_.insert(it, std::move(item));
    note_open_size();
}

void SssMachine::push_front(SssItem item) {
    open_.push_front(std::move(item));
    note_open_size();
}

void SssMachine::purge_descendants(const std::vector<int>& ancestor_path) {
    open_.remove_if([&](const SssItem& it) {
        return proper_descendant(it.path, ancestor_path);
    });
}

void SssMachine::record_snapshot() {
    std::vector<SssOpenView> snap;
    snap.reserve(open_.size());
    for (const SssItem& it : open_)
        snap.push_back({game_.describe(it.state()), game_.state_key(it.state()),
                        it.merit, it.live});
    snapshots_.push_back(std::move(snap));
}

void SssMachine::note_open_size() {
    max_open_ = std::max(max_open_, open_.size());
}

Value SssMachine::value() const {
    require(done_, "sss: value read before the root was solved");
    return value_;
}

int SssMachine::step() {
    require(!done_, "sss: step past termination");
    require(!open_.empty(), "sss: OPEN ran dry");
    require(++expansions_ < 100'000'000ull, "sss: expansion budget exceeded");

    bool snapped = false;
    if (open_.front().merit < last_pop_merit_) {
        record_snapshot();  // a pass ended: the best available bound dropped
        snapped = true;
    }
    last_pop_merit_ = open_.front().merit;

    SssItem p = std::move(open_.front());
    open_.pop_front();

    if (!p.live && p.path.empty()) {  // solved root: h is the minimax value
        if (!snapped) {
            open_.push_front(p);
            record_snapshot();
            open_.pop_front();
        }
        value_ = p.merit;
        done_ = true;
        return 0;
    }

    if (!p.live) {
        if (!is_max(p)) {
            // Case 1: a solved Min node settles its Max parent; everything
            // else below that parent is moot.
            SssItem parent;
            parent.path.assign(p.path.begin(), p.path.end() - 1);
            parent.states.assign(p.states.begin(), p.states.end() - 1);
            parent.live = false;
            parent.merit = p.merit;
            purge_descendants(parent.path);
            push_front(std::move(parent));
            return 1;
        }
        const GameState& parent_state = p.states[p.states.size() - 2];
        int next = p.path.back() + 1;
        if (next < game_.move_count(parent_state)) {
            // Case 2: the Min parent tries its next child under the same cap.
            SssItem parent = p;
            parent.path.pop_back();
            parent.states.pop_back();
            push_front(child_of(parent, next));
            return 2;
        }
        // Case 3: no brothers left, the Min parent is solved at the cap.
        SssItem parent;
        parent.path.assign(p.path.begin(), p.path.end() - 1);
        parent.states.assign(p.states.begin(), p.states.end() - 1);
        parent.live = false;
        parent.merit = p.merit;
        push_front(std::move(parent));
        return 3;
    }

    if (is_leaf(p)) {
        // Case 4: evaluate; the leaf can only lower the bound it inherited.
        Value raw = game_.evaluate(p.state());
        leaf_trace_.push_back({game_.state_key(p.state()), raw});
        std::string path;
        for (std::size_t i = 0; i < p.path.size(); ++i) {
            if (i) path += '.';
            path += std::to_string(p.path[i]);
        }
        leaf_paths_.push_back(std::move(path));
        p.live = false;
        p.merit = std::min(p.merit, raw);
        insert_by_merit(std::move(p));
        return 4;
    }

    if (!is_max(p)) {
        // Case 5: a Min node needs only one child for an upper bound.
        push_front(child_of(p, 0));
        return 5;
    }

    // Case 6: a Max node needs all children; keep them in left-first order.
    int n = game_.move_count(p.state());
    for (int m = n - 1; m >= 0; --m) push_front(child_of(p, m));
    return 6;
}

SssResult sss_star(const Game& game, const GameState& root, int depth) {
    SssMachine machine(game, root, depth);
    while (!machine.done()) machine.step();
    SssResult r;
    r.value = machine.value();
    r.leaf_trace = machine.leaf_trace();
    r.leaf_paths = machine.leaf_paths();
    r.snapshots = machine.snapshots();
    r.max_open = machine.max_open();
    r.expansions = machine.expansions();
    return r;
}

EquivalenceReport equivalence_check(const Game& game, const GameState& root,
                                    int depth, TranspositionTable* tt) {
    EquivalenceReport rep;
    SssResult s = sss_star(game, root, depth);

    TranspositionTable fresh(TTConfig::lossless_table());
    SearchOptions opts;
    opts.dynamic_ordering = false;
    opts.use_history = false;
    opts.trace_leaves = true;
    SearchContext ctx(game, tt ? tt : &fresh, opts);
    MtdResult m = mtd_plus_inf(ctx, root, depth);

    rep.sss_value = s.value;
    rep.ab_value = m.value;
    rep.sss_leaves = std::move(s.leaf_trace);
    rep.ab_leaves = ctx.stats.leaf_trace;

    std::size_t n = std::min(rep.sss_leaves.size(), rep.ab_leaves.size());
    std::size_t i = 0;
    while (i < n && rep.sss_leaves[i] == rep.ab_leaves[i]) ++i;
    bool same_len = rep.sss_leaves.size() == rep.ab_leaves.size();
    rep.equivalent = same_len && i == n && rep.sss_value == rep.ab_value;
    rep.first_divergence = rep.equivalent ? rep.sss_leaves.size() : i;
    if (!rep.equivalent) {
        std::string why;
        if (i < n) {
            why = "leaf #" + std::to_string(i) + " differs";
        } else if (!same_len) {
            why = "leaf sequences are " + std::to_string(rep.sss_leaves.size()) +
                  " vs " + std::to_string(rep.ab_leaves.size()) + " long";
        } else {
            why = "values differ";
        }
        rep.detail = why + " (open-list " + std::to_string(rep.sss_value) +
                     ", table-driven " + std::to_string(rep.ab_value) + ")";
    }
    return rep;
}

}  // namespace mts
