#include "mts/mtd.hpp"

#include <algorithm>

namespace mts {

MtdResult mtd(SearchContext& ctx, const GameState& s, int depth,
              Value first_bound, const NextBound& next_bound) {
    MtdResult r;
    Value f_minus = -kInf;
    Value f_plus = kInf;
    Value bound = first_bound;
    Value g = 0;
    for (;;) {
        require(f_minus < bound && bound <= f_plus,
                "mtd: next bound left (f-, f+], no progress possible");
        g = mt(ctx, s, depth, bound);
        ++r.calls;
        bool fail_high = g >= bound;
        if (fail_high)
            f_minus = g;
        else
            f_plus = g;
        r.bounds.push_back(bound);
        r.returns.push_back(g);
        r.lower_hist.push_back(f_minus);
        r.upper_hist.push_back(f_plus);
        if (f_minus >= f_plus) break;
        bound = next_bound(g, fail_high, f_minus, f_plus);
    }
    r.value = g;
    return r;
}

MtdResult mtd_plus_inf(SearchContext& ctx, const GameState& s, int depth) {
    return mtd(ctx, s, depth, kInf,
               [](Value g, bool, Value, Value) { return g; });
}

MtdResult mtd_minus_inf(SearchContext& ctx, const GameState& s, int depth) {
    return mtd(ctx, s, depth, -kInf + 1,
               [](Value g, bool, Value, Value) { return g + 1; });
}

MtdResult mtd_f(SearchContext& ctx, const GameState& s, int depth,
                Value first_guess) {
    Value first = std::clamp(first_guess, -kInf + 1, kInf);
    return mtd(ctx, s, depth, first, [](Value g, bool fail_high, Value, Value) {
        return fail_high ? g + 1 : g;
    });
}

MtdResult mtd_bi(SearchContext& ctx, const GameState& s, int depth) {
    return mtd(ctx, s, depth, 0, [](Value, bool, Value f_minus, Value f_plus) {
        // Floor midpoint (C++20 defines >> on negatives as floor div), then
        // pull up to f-+1 so the test always bisects inside (f-, f+].
        auto mid = static_cast<Value>(
            (static_cast<long long>(f_minus) + static_cast<long long>(f_plus)) >>
            1);
        return std::max(mid, static_cast<Value>(f_minus + 1));
    });
}

MtdResult mtd_step(SearchContext& ctx, const GameState& s, int depth,
                   Value step_size) {
    require(step_size >= 1, "mtd_step: step size must be >= 1");
    return mtd(ctx, s, depth, kInf,
               [step_size](Value g, bool, Value f_minus, Value) {
                   // Descend by step_size per pass, counting the unit the
                   // fail-low itself already shaved off; never drop below
                   // f-+1 or convergence could stall.
                   return std::max(static_cast<Value>(f_minus + 1),
                                   static_cast<Value>(g - (step_size - 1)));
               });
}

MtdBestResult mtd_best(SearchContext& ctx, const GameState& s, int depth,
                       Value first_guess) {
    require(ctx.tt != nullptr, "mtd_best: needs a transposition table");
    require(depth >= 1, "mtd_best: depth must be >= 1");
    int n = ctx.game.move_count(s);
    require(n >= 1, "mtd_best: no moves at root");

    MtdBestResult r;
    if (n == 1) {  // forced: no search needed at all
        r.move = 0;
        return r;
    }

    std::vector<std::uint64_t> child_key(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
        child_key[static_cast<std::size_t>(m)] =
            ctx.game.state_key(ctx.game.apply_move(s, m));

    // Per-move value intervals from the mover's view, tightened from the
    // table after every pass; child entries store the child's own bounds,
    // so the mover sees them negated and swapped.
    std::vector<Value> lo(static_cast<std::size_t>(n), -kInf);
    std::vector<Value> hi(static_cast<std::size_t>(n), kInf);
    auto refresh = [&] {
        for (int m = 0; m < n; ++m) {
            const BoundsEntry* e = ctx.tt->probe(child_key[static_cast<std::size_t>(m)]);
            if (!e || e->depth < depth - 1) continue;
            if (e->upper < kInf)
                lo[static_cast<std::size_t>(m)] =
                    std::max(lo[static_cast<std::size_t>(m)], -e->upper);
            if (e->lower > -kInf)
                hi[static_cast<std::size_t>(m)] =
                    std::min(hi[static_cast<std::size_t>(m)], -e->lower);
        }
    };
    auto winner = [&]() -> int {
        for (int m = 0; m < n; ++m) {
            if (lo[static_cast<std::size_t>(m)] <= -kInf) continue;
            Value best_other = -kInf;
            for (int j = 0; j < n; ++j)
                if (j != m)
                    best_other =
                        std::max(best_other, hi[static_cast<std::size_t>(j)]);
            if (lo[static_cast<std::size_t>(m)] >= best_other) return m;
        }
        return -1;
    };

    Value f_minus = -kInf;
    Value f_plus = kInf;
    Value bound = std::clamp(first_guess, -kInf + 1, kInf);
    for (;;) {
        refresh();
        if (int w = winner(); w >= 0) {
            r.move = w;
            r.proven_lower = lo[static_cast<std::size_t>(w)];
            return r;
        }
        require(f_minus < bound && bound <= f_plus,
                "mtd_best: bound left (f-, f+], no progress possible");
        Value g = mt(ctx, s, depth, bound);
        ++r.calls;
        if (g >= bound)
            f_minus = g;
        else
            f_plus = g;
        if (f_minus >= f_plus) break;
        bound = g >= bound ? g + 1 : g;
    }

    // Value converged before the move separated; the last fail-high pass
    // left the proving move on the root entry.
    refresh();
    if (int w = winner(); w >= 0) {
        r.move = w;
        r.proven_lower = lo[static_cast<std::size_t>(w)];
        return r;
    }
    const BoundsEntry* root = ctx.tt->probe(ctx.game.state_key(s));
    if (root && root->best_move >= 0 && root->best_move < n) {
        r.move = root->best_move;
    } else {
        r.move = static_cast<int>(
            std::max_element(lo.begin(), lo.end()) - lo.begin());
    }
    r.proven_lower = lo[static_cast<std::size_t>(r.move)];
    return r;
}

namespace {

IterationRow snapshot_row(const SearchContext& ctx, int depth, Value v) {
    IterationRow row;
    row.depth = depth;
    row.value = v;
    row.leaf_evals = ctx.stats.leaf_evals;
    row.interior_visits = ctx.stats.interior_visits;
    row.transposition_hits = ctx.stats.transposition_hits;
    row.total_nodes = ctx.stats.total_nodes();
    row.distinct_states = ctx.stats.distinct_states;
    row.mt_calls = ctx.stats.mt_calls;
    row.cut_nodes = ctx.stats.cut_nodes;
    row.first_move_cuts = ctx.stats.first_move_cuts;
    row.moves_at_cut = ctx.stats.moves_at_cut;
    return row;
}

}  // namespace

IdResult iterative_deepen(SearchContext& ctx, const GameState& s, int max_depth,
                          Algorithm algo, GuessPolicy guess) {
    require(max_depth >= 1, "iterative_deepen: max_depth must be >= 1");
    int step = ctx.opts.id_step >= 1 ? ctx.opts.id_step : 1;
    int start = ctx.opts.id_start >= 1 ? ctx.opts.id_start
                                       : ((max_depth - 1) % step) + 1;
    require(start <= max_depth, "iterative_deepen: start depth beyond max");

    IdResult out;
    std::vector<Value> values;
    auto guess_for = [&](int iteration) -> Value {
        if (guess.kind == GuessPolicy::Fixed) return guess.fixed;
        if (values.empty()) return 0;
        if (guess.kind == GuessPolicy::Prev2 && iteration >= 2)
            return values[values.size() - 2];
        return values.back();
    };

    int iteration = 0;
    for (int d = start; d <= max_depth; d += step, ++iteration) {
        ctx.tt->new_generation();
        Value v = 0;
        switch (algo) {
            case Algorithm::AlphaBeta:
                v = alpha_beta(ctx, s, d, {-kInf, kInf});
                break;
            case Algorithm::NegaScout:
                v = negascout(ctx, s, d, {-kInf, kInf});
                break;
            case Algorithm::AspNega:
                if (values.empty() && guess.kind != GuessPolicy::Fixed)
                    v = negascout(ctx, s, d, {-kInf, kInf});
                else
                    v = aspiration_negascout(ctx, s, d, guess_for(iteration),
                                             ctx.opts.asp_width);
                break;
            case Algorithm::SSS:
                v = mtd_plus_inf(ctx, s, d).value;
                break;
            case Algorithm::Dual:
                v = mtd_minus_inf(ctx, s, d).value;
                break;
            case Algorithm::MtdF:
                v = mtd_f(ctx, s, d, guess_for(iteration)).value;
                break;
            case Algorithm::MtdBi:
                v = mtd_bi(ctx, s, d).value;
                break;
            case Algorithm::MtdStep:
                v = mtd_step(ctx, s, d, ctx.opts.step_size).value;
                break;
        }
        values.push_back(v);
        out.rows.push_back(snapshot_row(ctx, d, v));
        if (d + step <= max_depth) ctx.history.halve();
    }
    out.value = values.back();
    return out;
}

}  // namespace mts
