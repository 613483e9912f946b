#include "mts/search.hpp"

#include <algorithm>
#include <numeric>

namespace mts {

namespace {

// Leaf handling shared by all searches, after the leaf branch of the
// memory-test procedure: a previously stored bound is returned without
// re-evaluation (preferring the upper bound when both exist), otherwise the
// position is evaluated once. Either way the outcome is stored back, one
// bound chosen by which side of the window g landed on; terminals store
// both bounds since their value is exact at any horizon.
Value leaf_value(SearchContext& ctx, const GameState& s, std::uint64_t key,
                 int depth, Value alpha, Value beta, bool terminal) {
    const BoundsEntry* e = ctx.tt ? ctx.tt->probe(key) : nullptr;
    // Trust a stored bound here only when it is evaluation-grade: depth-0
    // entries hold former static evals, exact entries are exact anywhere.
    bool usable = e && e->has_bound() && (e->depth == 0 || e->exact());
    Value g;
    if (usable) {
        g = e->upper >= kInf ? e->lower : e->upper;
        ++ctx.stats.transposition_hits;
        if (ctx.opts.trace_visits)
            ctx.stats.visit_trace.push_back(
                {key, static_cast<std::int16_t>(depth), VisitEvent::LeafFromTT});
    } else {
        Value raw = ctx.game.evaluate(s);
        g = s.to_move == Side::Max ? raw : -raw;
        ++ctx.stats.leaf_evals;
        if (ctx.opts.trace_leaves) ctx.stats.leaf_trace.push_back({key, raw});
        if (ctx.opts.trace_visits)
            ctx.stats.visit_trace.push_back(
                {key, static_cast<std::int16_t>(depth), VisitEvent::LeafEval});
    }
    if (ctx.tt) {
        if (terminal) {
            ctx.tt->store(key, depth, Bound::Lower, g);
            ctx.tt->store(key, depth, Bound::Upper, g);
        } else if (g >= beta) {
            ctx.tt->store(key, depth, Bound::Lower, g);
        } else if (g <= alpha) {
            ctx.tt->store(key, depth, Bound::Upper, g);
        } else {
            ctx.tt->store(key, depth, Bound::Lower, g);
            ctx.tt->store(key, depth, Bound::Upper, g);
        }
    }
    return g;
}

void note_cut(SearchContext& ctx, const GameState& s, int depth, int ply,
              int tried, int best) {
    if (ply < SearchStats::kMaxPly) {
        ++ctx.stats.cut_nodes[ply];
        ctx.stats.moves_at_cut[ply] += static_cast<std::uint64_t>(tried);
        if (tried == 1) ++ctx.stats.first_move_cuts[ply];
    }
    if (ctx.opts.dynamic_ordering && ctx.opts.use_history && best >= 0)
        ctx.history.bump(s.to_move, ctx.game.move_feature(s, best), depth);
}

void store_outcome(SearchContext& ctx, std::uint64_t key, int depth, Value g,
                   Value alpha, Value beta, int best) {
    if (!ctx.tt) return;
    if (g >= beta) {
        ctx.tt->store(key, depth, Bound::Lower, g, best);
    } else if (g <= alpha) {
        ctx.tt->store(key, depth, Bound::Upper, g, best);
    } else {
        ctx.tt->store(key, depth, Bound::Lower, g, best);
        ctx.tt->store(key, depth, Bound::Upper, g, best);
    }
}

// Probe a child before descending: its stored lower bound caps what it can
// contribute (-lower from the parent's view), so when that cap cannot beat
// the running alpha the child is answered from the table.
bool child_skip(SearchContext& ctx, std::uint64_t child_key, int child_depth,
                Value running_alpha, Value& out) {
    if (!ctx.tt) return false;
    const BoundsEntry* ce = ctx.tt->probe(child_key);
    if (!ce || ce->depth < child_depth || ce->lower <= -kInf) return false;
    Value cap = -ce->lower;
    if (cap > running_alpha) return false;
    out = cap;
    ++ctx.stats.transposition_hits;
    ctx.note_state(child_key);
    if (ctx.opts.trace_visits)
        ctx.stats.visit_trace.push_back({child_key,
                                         static_cast<std::int16_t>(child_depth),
                                         VisitEvent::ChildSkip});
    return true;
}

Value ab_rec(SearchContext& ctx, const GameState& s, int depth, Value alpha,
             Value beta, int ply) {
    std::uint64_t key = ctx.game.state_key(s);
    ctx.note_state(key);
    bool terminal = ctx.game.is_terminal(s);
    if (depth == 0 || terminal)
        return leaf_value(ctx, s, key, depth, alpha, beta, terminal);

    ++ctx.stats.interior_visits;
    if (ctx.opts.trace_visits)
        ctx.stats.visit_trace.push_back(
            {key, static_cast<std::int16_t>(depth), VisitEvent::Interior});

    int n = ctx.game.move_count(s);
    std::vector<int> order = order_moves(ctx, s, n);
    Value g = -kInf;
    int best = -1;
    int tried = 0;
    for (int i = 0; i < n && g < beta; ++i) {
        int m = order[i];
        ++tried;
        GameState child = ctx.game.apply_move(s, m);
        std::uint64_t ck = ctx.game.state_key(child);
        Value a = alpha > g ? alpha : g;
        Value gc;
        if (!child_skip(ctx, ck, depth - 1, a, gc))
            gc = -ab_rec(ctx, child, depth - 1, -beta, -a, ply + 1);
        if (gc > g) {
            g = gc;
            best = m;
        }
    }
    if (g >= beta) note_cut(ctx, s, depth, ply, tried, best);
    store_outcome(ctx, key, depth, g, alpha, beta, best);
    return g;
}

// Null-window memory test, written out on its own so alpha_beta(g-1, g) has
// an independently derived twin to be checked against.
Value mt_rec(SearchContext& ctx, const GameState& s, int depth, Value gamma,
             int ply) {
    std::uint64_t key = ctx.game.state_key(s);
    ctx.note_state(key);
    bool terminal = ctx.game.is_terminal(s);
    if (depth == 0 || terminal)
        return leaf_value(ctx, s, key, depth, gamma - 1, gamma, terminal);

    ++ctx.stats.interior_visits;
    if (ctx.opts.trace_visits)
        ctx.stats.visit_trace.push_back(
            {key, static_cast<std::int16_t>(depth), VisitEvent::Interior});

    int n = ctx.game.move_count(s);
    std::vector<int> order = order_moves(ctx, s, n);
    Value g = -kInf;
    int best = -1;
    int tried = 0;
    for (int i = 0; i < n && g < gamma; ++i) {
        int m = order[i];
        ++tried;
        GameState child = ctx.game.apply_move(s, m);
        std::uint64_t ck = ctx.game.state_key(child);
        Value gc;
        if (!child_skip(ctx, ck, depth - 1, gamma - 1, gc))
            gc = -mt_rec(ctx, child, depth - 1, 1 - gamma, ply + 1);
        if (gc > g) {
            g = gc;
            best = m;
        }
    }
    if (g >= gamma) note_cut(ctx, s, depth, ply, tried, best);
    store_outcome(ctx, key, depth, g, gamma - 1, gamma, best);
    return g;
}

Value ns_rec(SearchContext& ctx, const GameState& s, int depth, Value alpha,
             Value beta, int ply) {
    std::uint64_t key = ctx.game.state_key(s);
    ctx.note_state(key);
    bool terminal = ctx.game.is_terminal(s);
    if (depth == 0 || terminal)
        return leaf_value(ctx, s, key, depth, alpha, beta, terminal);

    ++ctx.stats.interior_visits;
    if (ctx.opts.trace_visits)
        ctx.stats.visit_trace.push_back(
            {key, static_cast<std::int16_t>(depth), VisitEvent::Interior});

    int n = ctx.game.move_count(s);
    std::vector<int> order = order_moves(ctx, s, n);
    Value g = -kInf;
    int best = -1;
    int tried = 0;
    bool searched_one = false;
    for (int i = 0; i < n && g < beta; ++i) {
        int m = order[i];
        ++tried;
        GameState child = ctx.game.apply_move(s, m);
        std::uint64_t ck = ctx.game.state_key(child);
        Value a = alpha > g ? alpha : g;
        Value gc;
        if (!child_skip(ctx, ck, depth - 1, a, gc)) {
            if (!searched_one) {
                gc = -ns_rec(ctx, child, depth - 1, -beta, -a, ply + 1);
            } else {
                gc = -ns_rec(ctx, child, depth - 1, -(a + 1), -a, ply + 1);
                if (gc > a && gc < beta)  // scout raised alpha: re-search wide
                    gc = -ns_rec(ctx, child, depth - 1, -beta, -(gc - 1), ply + 1);
            }
            searched_one = true;
        }
        if (gc > g) {
            g = gc;
            best = m;
        }
    }
    if (g >= beta) note_cut(ctx, s, depth, ply, tried, best);
    store_outcome(ctx, key, depth, g, alpha, beta, best);
    return g;
}

}  // namespace

std::vector<int> order_moves(SearchContext& ctx, const GameState& s,
                             int move_count) {
    std::vector<int> order(static_cast<std::size_t>(move_count));
    std::iota(order.begin(), order.end(), 0);
    if (!ctx.opts.dynamic_ordering || move_count <= 1) return order;

    if (ctx.opts.use_history) {
        std::vector<std::uint64_t> hist(order.size());
        for (int m = 0; m < move_count; ++m)
            hist[static_cast<std::size_t>(m)] =
                ctx.history.get(s.to_move, ctx.game.move_feature(s, m));
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return hist[static_cast<std::size_t>(x)] >
                   hist[static_cast<std::size_t>(y)];
        });
    }
    if (ctx.tt) {
        const BoundsEntry* e = ctx.tt->probe(ctx.game.state_key(s));
        // A stale ordinal from an evicted-and-recycled slot or an older
        // position is silently ignored; >= move_count can't be legal here.
        if (e && e->best_move >= 0 && e->best_move < move_count) {
            auto it = std::find(order.begin(), order.end(), e->best_move);
            if (it != order.end()) std::rotate(order.begin(), it, it + 1);
        }
    }
    return order;
}

Value alpha_beta(SearchContext& ctx, const GameState& s, int depth, Window w) {
    require(w.alpha < w.beta, "alpha_beta: window needs alpha < beta");
    require(depth >= 0, "alpha_beta: negative depth");
    if (s.to_move == Side::Max) return ab_rec(ctx, s, depth, w.alpha, w.beta, 0);
    return -ab_rec(ctx, s, depth, -w.beta, -w.alpha, 0);
}

Value mt(SearchContext& ctx, const GameState& s, int depth, Value gamma) {
    require(gamma > -kInf && gamma <= kInf, "mt: gamma outside (-inf, +inf]");
    require(depth >= 0, "mt: negative depth");
    ++ctx.stats.mt_calls;
    if (s.to_move == Side::Max) return mt_rec(ctx, s, depth, gamma, 0);
    return -mt_rec(ctx, s, depth, 1 - gamma, 0);
}

Value negascout(SearchContext& ctx, const GameState& s, int depth, Window w) {
    require(w.alpha < w.beta, "negascout: window needs alpha < beta");
    require(depth >= 0, "negascout: negative depth");
    if (s.to_move == Side::Max) return ns_rec(ctx, s, depth, w.alpha, w.beta, 0);
    return -ns_rec(ctx, s, depth, -w.beta, -w.alpha, 0);
}

Value aspiration_negascout(SearchContext& ctx, const GameState& s, int depth,
                           Value center, Value width) {
    require(width > 0, "aspiration: width must be positive");
    Value alpha = center - width;
    Value beta = center + width;
    if (alpha < -kInf) alpha = -kInf;
    if (beta > kInf) beta = kInf;
    if (alpha >= beta) {  // center pinned against a sentinel
        alpha = -kInf;
        beta = kInf;
    }
    Value g = negascout(ctx, s, depth, {alpha, beta});
    if (g >= beta && beta < kInf) {
        ++ctx.stats.asp_researches;
        g = negascout(ctx, s, depth, {g - 1, kInf});
    } else if (g <= alpha && alpha > -kInf) {
        ++ctx.stats.asp_researches;
        g = negascout(ctx, s, depth, {-kInf, g + 1});
    }
    return g;
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::AlphaBeta: return "ab";
        case Algorithm::NegaScout: return "nega";
        case Algorithm::AspNega: return "asp-nega";
        case Algorithm::SSS: return "sss";
        case Algorithm::Dual: return "dual";
        case Algorithm::MtdF: return "mtdf";
        case Algorithm::MtdBi: return "mtdbi";
        case Algorithm::MtdStep: return "mtdstep";
    }
    return "?";
}

bool algorithm_from_name(const std::string& name, Algorithm& out) {
    for (Algorithm a :
         {Algorithm::AlphaBeta, Algorithm::NegaScout, Algorithm::AspNega,
          Algorithm::SSS, Algorithm::Dual, Algorithm::MtdF, Algorithm::MtdBi,
          Algorithm::MtdStep}) {
        if (name == algorithm_name(a)) {
            out = a;
            return true;
        }
    }
    return false;
}

}  // namespace mts
