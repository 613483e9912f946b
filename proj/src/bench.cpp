#include "mts/bench.hpp"

#include <array>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "mts/pearl_tree.hpp"
#include "mts/sss_star.hpp"

namespace mts {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic config stream for the property checks: width 2..4,
// depth 2..6, mixed correlation, no aliasing.
SynthTreeConfig property_config(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t r = mix64(seed * 0x100000001b3ull + index);
    SynthTreeConfig cfg;
    cfg.seed = mix64(r);
    cfg.branch_min = cfg.branch_max = 2 + static_cast<int>(r % 3);
    cfg.depth = 2 + static_cast<int>((r >> 8) % 5);
    cfg.correlation = 0.25 * static_cast<double>((r >> 16) % 4);
    cfg.transposition_density = 0.0;
    return cfg;
}

}  // namespace

Suite pearl_suite(Value u_value) {
    Suite s;
    s.games.push_back(std::make_unique<PearlTree>(u_value));
    s.positions.push_back({s.games.back().get(), s.games.back()->root(), "pearl"});
    return s;
}

Suite synth_suite(const std::vector<SynthTreeConfig>& configs) {
    Suite s;
    int i = 0;
    for (const SynthTreeConfig& cfg : configs) {
        s.games.push_back(std::make_unique<SyntheticTree>(cfg));
        s.positions.push_back({s.games.back().get(), s.games.back()->root(),
                               "syn" + std::to_string(++i)});
    }
    return s;
}

Suite synth_suite_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open suite file: " + path);
    std::vector<SynthTreeConfig> configs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = line.substr(0, line.find('#'));
        if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            configs.push_back(SynthTreeConfig::parse(body));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return synth_suite(configs);
}

Suite othello_suite(const std::string& path) {
    Suite s;
    auto game = std::make_unique<Othello6>();
    std::vector<GameState> positions = game->load_positions(path);
    s.games.push_back(std::move(game));
    int i = 0;
    for (const GameState& st : positions)
        s.positions.push_back({s.games.back().get(), st,
                               "oth" + std::to_string(++i)});
    return s;
}

std::vector<Algorithm> default_compare_algorithms() {
    return {Algorithm::AlphaBeta, Algorithm::AspNega, Algorithm::SSS,
            Algorithm::Dual,      Algorithm::MtdF,    Algorithm::MtdBi,
            Algorithm::MtdStep};
}

bool run_compare(const Suite& suite, const CompareParams& p, std::ostream& csv) {
    require(!p.algorithms.empty(), "compare: no algorithms given");
    require(!suite.positions.empty(), "compare: no positions given");
    csv << "position,algorithm,depth,value,leaf_evals,interior_visits,"
           "transposition_hits,total_nodes,distinct_states,mt_calls,wall_ms\n";
    bool agree = true;
    std::map<std::pair<std::string, int>, Value> seen_value;
    for (const Position& pos : suite.positions) {
        for (Algorithm algo : p.algorithms) {
            TranspositionTable tt(p.tt);
            SearchContext ctx(*pos.game, &tt, p.opts);
            auto t0 = std::chrono::steady_clock::now();
            IdResult res =
                iterative_deepen(ctx, pos.state, p.depth, algo, p.guess);
            double wall = ms_since(t0);
            for (const IterationRow& row : res.rows) {
                csv << pos.id << ',' << algorithm_name(algo) << ',' << row.depth
                    << ',' << row.value << ',' << row.leaf_evals << ','
                    << row.interior_visits << ',' << row.transposition_hits
                    << ',' << row.total_nodes << ',' << row.distinct_states
                    << ',' << row.mt_calls << ',' << std::fixed
                    << std::setprecision(3) << wall << '\n';
                auto key = std::make_pair(pos.id, row.depth);
                auto it = seen_value.find(key);
                if (it == seen_value.end())
                    seen_value.emplace(key, row.value);
                else if (it->second != row.value)
                    agree = false;
            }
        }
    }
    return agree;
}

bool run_memsweep(const MemsweepParams& p, std::ostream& csv,
                  MemsweepSummary* summary) {
    require(!p.configs.empty(), "memsweep: no tree configs");
    require(p.bits_lo >= 4 && p.bits_lo <= p.bits_hi, "memsweep: bad bit range");

    std::vector<std::unique_ptr<SyntheticTree>> trees;
    for (const SynthTreeConfig& cfg : p.configs)
        trees.push_back(std::make_unique<SyntheticTree>(cfg));

    const Algorithm algos[] = {Algorithm::AlphaBeta, Algorithm::SSS,
                               Algorithm::Dual};
    csv << "tt_bits,algorithm,leaf_evals,ratio_vs_ab,wall_ms\n";

    MemsweepSummary local;
    MemsweepSummary& sum = summary ? *summary : local;
    sum = MemsweepSummary{};
    bool agree = true;

    for (int bits = p.bits_lo; bits <= p.bits_hi; ++bits) {
        std::uint64_t leafs[3] = {0, 0, 0};
        double wall[3] = {0, 0, 0};
        std::vector<std::array<std::uint64_t, 3>> per_tree(trees.size());
        std::vector<Value> first_values(trees.size(), 0);
        for (int a = 0; a < 3; ++a) {
            for (std::size_t t = 0; t < trees.size(); ++t) {
                TranspositionTable tt(
                    TTConfig::bounded(bits));
                SearchOptions opts = p.opts;
                opts.id_step = p.id_step;
                SearchContext ctx(*trees[t], &tt, opts);
                auto t0 = std::chrono::steady_clock::now();
                IdResult res = iterative_deepen(ctx, trees[t]->root(), p.depth,
                                                algos[a], GuessPolicy{});
                wall[a] += ms_since(t0);
                leafs[a] += res.rows.back().leaf_evals;
                per_tree[t][a] = res.rows.back().leaf_evals;
                if (a == 0)
                    first_values[t] = res.value;
                else if (res.value != first_values[t])
                    agree = false;
            }
        }
        sum.bits.push_back(bits);
        // Mean of per-tree ratios: pairing on the same tree cancels the
        // tree-difficulty noise that a ratio of sums would keep.
        double rs = 0, rd = 0;
        for (const auto& row : per_tree) {
            rs += static_cast<double>(row[1]) / static_cast<double>(row[0]);
            rd += static_cast<double>(row[2]) / static_cast<double>(row[0]);
        }
        rs /= static_cast<double>(per_tree.size());
        rd /= static_cast<double>(per_tree.size());
        sum.ratio_sss.push_back(rs);
        sum.ratio_dual.push_back(rd);
        for (int a = 0; a < 3; ++a) {
            double ratio = a == 0 ? 1.0 : (a == 1 ? rs : rd);
            csv << bits << ',' << algorithm_name(algos[a]) << ',' << leafs[a]
                << ',' << std::fixed << std::setprecision(4) << ratio << ','
                << std::setprecision(3) << wall[a] << '\n';
        }
    }
    sum.values_agree = agree;

    auto level_off = [](const std::vector<double>& r) {
        int n = static_cast<int>(r.size());
        for (int i = 0; i < n; ++i) {
            bool flat = true;
            for (int j = i; j + 1 < n; ++j)
                if (std::fabs(r[j + 1] - r[j]) / r[j] >= 0.02) flat = false;
            if (flat) return i;
        }
        return n - 1;
    };
    sum.level_off_bits_sss = sum.bits[level_off(sum.ratio_sss)];
    sum.level_off_bits_dual = sum.bits[level_off(sum.ratio_dual)];
    return agree;
}

bool run_guess_sweep(const Suite& suite, const GuessSweepParams& p,
                     std::ostream& csv, GuessSweepSummary* summary) {
    require(!suite.positions.empty(), "guess-sweep: no positions");
    require(!p.deltas.empty(), "guess-sweep: no deltas");

    GuessSweepSummary local;
    GuessSweepSummary& sum = summary ? *summary : local;
    sum = GuessSweepSummary{};
    sum.deltas = p.deltas;
    sum.mean_leafs.assign(p.deltas.size(), 0.0);

    bool agree = true;
    double baseline_total = 0;
    std::vector<double> delta_total(p.deltas.size(), 0.0);

    for (const Position& pos : suite.positions) {
        // Exact value first: everything else in the sweep is relative to f.
        Value f;
        {
            TranspositionTable tt(p.tt);
            SearchContext ctx(*pos.game, &tt, p.opts);
            f = alpha_beta(ctx, pos.state, p.depth, {-kInf, kInf});
        }
        {
            TranspositionTable tt(p.tt);
            SearchContext ctx(*pos.game, &tt, p.opts);
            Value v = aspiration_negascout(ctx, pos.state, p.depth, f,
                                           ctx.opts.asp_width);
            if (v != f) agree = false;
            baseline_total += static_cast<double>(ctx.stats.leaf_evals);
        }
        for (std::size_t i = 0; i < p.deltas.size(); ++i) {
            TranspositionTable tt(p.tt);
            SearchContext ctx(*pos.game, &tt, p.opts);
            MtdResult r = mtd_f(ctx, pos.state, p.depth, f + p.deltas[i]);
            if (r.value != f) agree = false;
            delta_total[i] += static_cast<double>(ctx.stats.leaf_evals);
        }
    }

    double n = static_cast<double>(suite.positions.size());
    sum.baseline_mean_leafs = baseline_total / n;
    csv << "delta,mean_leaf_evals,pct_of_baseline\n";
    csv << "baseline," << std::fixed << std::setprecision(2)
        << sum.baseline_mean_leafs << ",100.00\n";
    for (std::size_t i = 0; i < p.deltas.size(); ++i) {
        sum.mean_leafs[i] = delta_total[i] / n;
        csv << p.deltas[i] << ',' << std::fixed << std::setprecision(2)
            << sum.mean_leafs[i] << ','
            << 100.0 * sum.mean_leafs[i] / sum.baseline_mean_leafs << '\n';
    }
    sum.values_agree = agree;
    return agree;
}

double OrderingSummary::first_move_cut_rate(int ply) const {
    if (ply < 0 || ply >= static_cast<int>(cut_nodes.size()) || !cut_nodes[ply])
        return 0.0;
    return static_cast<double>(first_move_cuts[ply]) /
           static_cast<double>(cut_nodes[ply]);
}

double OrderingSummary::mean_moves_at_cut(int ply) const {
    if (ply < 0 || ply >= static_cast<int>(cut_nodes.size()) || !cut_nodes[ply])
        return 0.0;
    return static_cast<double>(moves_at_cut[ply]) /
           static_cast<double>(cut_nodes[ply]);
}

bool ordering_report(const Suite& suite, const OrderingParams& p,
                     std::ostream& csv, OrderingSummary* summary) {
    require(!suite.positions.empty(), "ordering: no positions");
    OrderingSummary local;
    OrderingSummary& sum = summary ? *summary : local;
    sum = OrderingSummary{};
    sum.cut_nodes.assign(static_cast<std::size_t>(p.depth), 0);
    sum.first_move_cuts.assign(static_cast<std::size_t>(p.depth), 0);
    sum.moves_at_cut.assign(static_cast<std::size_t>(p.depth), 0);

    for (const Position& pos : suite.positions) {
        TranspositionTable tt(p.tt);
        SearchContext ctx(*pos.game, &tt, p.opts);
        IdResult res = iterative_deepen(ctx, pos.state, p.depth,
                                        Algorithm::AspNega, GuessPolicy{});
        const IterationRow& last = res.rows.back();
        const IterationRow* prev =
            res.rows.size() >= 2 ? &res.rows[res.rows.size() - 2] : nullptr;
        for (int ply = 0; ply < p.depth && ply < SearchStats::kMaxPly; ++ply) {
            sum.cut_nodes[ply] +=
                last.cut_nodes[ply] - (prev ? prev->cut_nodes[ply] : 0);
            sum.first_move_cuts[ply] +=
                last.first_move_cuts[ply] - (prev ? prev->first_move_cuts[ply] : 0);
            sum.moves_at_cut[ply] +=
                last.moves_at_cut[ply] - (prev ? prev->moves_at_cut[ply] : 0);
        }
    }

    csv << "ply,cut_nodes,first_move_cut_rate,mean_moves_at_cut\n";
    for (int ply = 0; ply < p.depth; ++ply)
        csv << ply << ',' << sum.cut_nodes[ply] << ',' << std::fixed
            << std::setprecision(4) << sum.first_move_cut_rate(ply) << ','
            << sum.mean_moves_at_cut(ply) << '\n';
    return true;
}

void hunt_measure(const SynthTreeConfig& cfg, int depth_from, int depth_to,
                  std::uint64_t& sss_leafs, std::uint64_t& ab_leafs,
                  bool dynamic_ordering) {
    SyntheticTree tree(cfg);
    SearchOptions opts;
    // Stored best moves steering later passes are the whole mechanism;
    // history stays off to keep it isolated.
    opts.dynamic_ordering = dynamic_ordering;
    opts.use_history = false;
    opts.id_start = depth_from;
    opts.id_step = 1;
    auto run = [&](Algorithm algo) {
        TranspositionTable tt(TTConfig::lossless_table());
        SearchContext ctx(tree, &tt, opts);
        IdResult res =
            iterative_deepen(ctx, tree.root(), depth_to, algo, GuessPolicy{});
        return res.rows.back().leaf_evals;
    };
    sss_leafs = run(Algorithm::SSS);
    ab_leafs = run(Algorithm::AlphaBeta);
}

HuntResult nondominance_hunt(const HuntParams& p, std::ostream& log) {
    require(p.budget >= 1, "hunt: budget must be >= 1");
    require(p.width_lo >= 2 && p.width_lo <= p.width_hi, "hunt: bad widths");
    require(p.depth_from >= 1 && p.depth_from <= p.depth_to, "hunt: bad depths");
    HuntResult r;
    int widths = p.width_hi - p.width_lo + 1;
    for (std::uint64_t i = 0; i < p.budget; ++i) {
        SynthTreeConfig cfg;
        cfg.seed = mix64(p.seed + i);
        cfg.branch_min = cfg.branch_max =
            p.width_lo + static_cast<int>(i % static_cast<std::uint64_t>(widths));
        cfg.depth = p.depth_to;
        cfg.value_min = p.value_min;
        cfg.value_max = p.value_max;
        cfg.correlation = p.correlation;
        ++r.trees_tried;
        std::uint64_t sss = 0, ab = 0;
        hunt_measure(cfg, p.depth_from, p.depth_to, sss, ab,
                     p.dynamic_ordering);
        if (sss > ab) {
            r.found = true;
            r.config = cfg;
            r.sss_leafs = sss;
            r.ab_leafs = ab;
            std::uint64_t sss2 = 0, ab2 = 0;
            hunt_measure(cfg, p.depth_from, p.depth_to, sss2, ab2,
                         p.dynamic_ordering);
            r.replayed = sss2 == sss && ab2 == ab;
            log << "counterexample after " << r.trees_tried
                << " trees: " << cfg.to_string() << "\n"
                << "  deepened descending-bound leaf evals: " << sss
                << ", deepened alpha-beta leaf evals: " << ab << "\n"
                << "  replay " << (r.replayed ? "reproduced" : "DIVERGED")
                << "\n";
            return r;
        }
    }
    log << "no counterexample in " << r.trees_tried << " trees\n";
    return r;
}

bool oracle_equivalence(int trees, std::uint64_t seed, std::ostream& log) {
    bool ok = true;
    for (int i = 0; i < trees; ++i) {
        SynthTreeConfig cfg = property_config(seed, static_cast<std::uint64_t>(i));
        SyntheticTree tree(cfg);
        EquivalenceReport rep = equivalence_check(tree, tree.root(), cfg.depth);
        if (!rep.equivalent) {
            ok = false;
            log << "mismatch on " << cfg.to_string() << ": " << rep.detail
                << " at index " << rep.first_divergence << "\n";
        }
    }
    if (ok) log << trees << " trees equivalent\n";
    return ok;
}

bool dominance_check(int trees, std::uint64_t seed, std::ostream& log) {
    bool ok = true;
    for (int i = 0; i < trees; ++i) {
        SynthTreeConfig cfg = property_config(seed ^ 0xd0a11ull,
                                              static_cast<std::uint64_t>(i));
        SyntheticTree tree(cfg);
        SssResult ref = sss_star(tree, tree.root(), cfg.depth);

        SearchOptions opts;
        opts.dynamic_ordering = false;
        opts.use_history = false;
        SearchContext ctx(tree, nullptr, opts);  // storage-free alpha-beta
        alpha_beta(ctx, tree.root(), cfg.depth, {-kInf, kInf});

        if (ref.leaf_trace.size() > ctx.stats.leaf_evals) {
            ok = false;
            log << "dominance violated on " << cfg.to_string() << ": "
                << ref.leaf_trace.size() << " vs " << ctx.stats.leaf_evals
                << "\n";
        }
    }
    if (ok) log << trees << " trees dominated\n";
    return ok;
}

bool trace_pearl(std::ostream& out) {
    PearlTree tree(0);
    auto key_of = [&](int id) { return tree.state_key(tree.state_of(id)); };
    auto name_of_key = [&](std::uint64_t key) -> std::string {
        for (int id = 0; id < PearlTree::kNodes; ++id)
            if (key_of(id) == key) return tree.node_name(id);
        return "?";
    };
    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        out << (cond ? "   ok: " : " FAIL: ") << what << "\n";
        if (!cond) ok = false;
    };

    // --- table-driven descending-bound search, static order, keep all ---
    TranspositionTable tt(TTConfig::lossless_table());
    SearchOptions opts;
    opts.dynamic_ordering = false;
    opts.use_history = false;
    opts.trace_leaves = true;
    SearchContext ctx(tree, &tt, opts);

    // l's stored bounds per pass: the tail of the example's narrative.
    // Entries hold the side-to-move's view; l is a Min node, so its
    // bounds negate and swap on the way back to the Max view.
    int l_id = 11;  // node l
    std::vector<std::pair<Value, Value>> l_bounds;
    std::vector<Value> returns;
    Value bound = kInf;
    for (;;) {
        Value g = mt(ctx, tree.root(), 4, bound);
        returns.push_back(g);
        const BoundsEntry* e = tt.probe(key_of(l_id));
        Value lo = e && e->upper < kInf ? -e->upper : -kInf;
        Value hi = e && e->lower > -kInf ? -e->lower : kInf;
        l_bounds.emplace_back(lo, hi);
        if (g >= bound) break;
        bound = g;
    }

    out << "descending-bound passes:";
    for (std::size_t i = 0; i < returns.size(); ++i) out << ' ' << returns[i];
    out << "\n";
    check(returns == std::vector<Value>({41, 36, 35, 35}),
          "bound sequence is 41 36 35 35");
    check(returns.size() == 4 && ctx.stats.mt_calls == 4, "exactly four passes");

    std::string leaf_names;
    for (const LeafEvent& ev : ctx.stats.leaf_trace) {
        if (!leaf_names.empty()) leaf_names += ',';
        leaf_names += name_of_key(ev.key);
    }
    out << "leaf evaluations: " << leaf_names << "\n";
    check(leaf_names == "e,g,k,m,n,o,s,t", "leaf order e,g,k,m,n,o,s,t");

    out << "stored bounds for l per pass:";
    for (auto [lo, hi] : l_bounds) {
        out << " [";
        if (lo > -kInf) out << lo; else out << "-inf";
        out << ",";
        if (hi < kInf) out << hi; else out << "+inf";
        out << "]";
    }
    out << "\n";
    check(l_bounds.size() == 4 && l_bounds[2] == std::make_pair(-kInf, 35),
          "pass 3 leaves l with only an upper bound of 35");
    check(l_bounds.size() == 4 && l_bounds[3].first == 35,
          "pass 4 adds the lower bound 35 to l");
    check(!ctx.seen.count(key_of(17)) && !ctx.seen.count(key_of(20)),
          "r and u are never touched");

    // --- a fresh search guessing the exact value needs only two passes ---
    {
        TranspositionTable tt2(TTConfig::lossless_table());
        SearchContext ctx2(tree, &tt2, opts);
        MtdResult r = mtd_f(ctx2, tree.root(), 4, 35);
        out << "guess-35 run: value " << r.value << " in " << r.calls
            << " passes\n";
        check(r.value == 35 && r.calls == 2, "guess 35 converges in two passes");
    }

    // --- open-list reference search, side by side ---
    SssResult ref = sss_star(tree, tree.root(), 4);
    out << "open-list value: " << ref.value << "\n";
    check(ref.value == 35, "open-list value 35");
    std::string ref_names;
    for (const LeafEvent& ev : ref.leaf_trace) {
        if (!ref_names.empty()) ref_names += ',';
        ref_names += name_of_key(ev.key);
    }
    check(ref_names == leaf_names, "both searches evaluate the same leaves");

    auto fmt_snapshot = [&](const std::vector<SssOpenView>& snap) {
        std::ostringstream os;
        for (std::size_t i = 0; i < snap.size(); ++i) {
            if (i) os << ' ';
            os << '<' << snap[i].label << ',' << (snap[i].live ? 'L' : 'S')
               << ',' << snap[i].merit << '>';
        }
        return os.str();
    };
    for (std::size_t i = 0; i < ref.snapshots.size(); ++i)
        out << "open list at pass end " << i + 1 << ": "
            << fmt_snapshot(ref.snapshots[i]) << "\n";
    check(ref.snapshots.size() == 4, "four pass snapshots");
    const char* expected_snaps[4] = {
        "<e,S,41> <m,S,36> <k,S,34> <g,S,12>",
        "<m,S,36> <k,S,34> <g,S,12> <n,S,5>",
        "<o,S,35> <k,S,34> <g,S,12> <n,S,5>",
        "<a,S,35>",
    };
    for (std::size_t i = 0; i < ref.snapshots.size() && i < 4; ++i)
        check(fmt_snapshot(ref.snapshots[i]) == expected_snaps[i],
              std::string("snapshot ") + std::to_string(i + 1) + " matches");

    // --- the unreached subtree cannot matter ---
    for (Value u : {-100, 0, 77}) {
        PearlTree t2(u);
        TranspositionTable tt2(TTConfig::lossless_table());
        SearchContext ctx2(t2, &tt2, opts);
        MtdResult r = mtd_plus_inf(ctx2, t2.root(), 4);
        check(r.value == 35, "value 35 with u = " + std::to_string(u));
    }

    out << (ok ? "pearl trace: all checks passed\n"
               : "pearl trace: MISMATCH\n");
    return ok;
}

}  // namespace mts
