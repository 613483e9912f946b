#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mts/bench.hpp"
#include "mts/pearl_tree.hpp"
#include "mts/sss_star.hpp"

namespace {

using namespace mts;

struct SuiteOpts {
    std::string game = "pearl";
    std::string positions;
    std::string config;
    int u_value = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--game", game, "pearl, synth or othello")
            ->check(CLI::IsMember({"pearl", "synth", "othello"}));
        cmd->add_option("--positions", positions, "suite file (synth/othello)");
        cmd->add_option("--config", config,
                        "inline synthetic config, e.g. \"seed=7 w=3 d=6\"");
        cmd->add_option("--u", u_value, "value of the untouched leaf (pearl)");
    }

    Suite build() const {
        if (game == "pearl") return pearl_suite(u_value);
        if (game == "synth") {
            if (!config.empty())
                return synth_suite({SynthTreeConfig::parse(config)});
            if (positions.empty())
                throw CLI::ValidationError(
                    "synth needs --positions or --config");
            return synth_suite_from_file(positions);
        }
        if (positions.empty())
            throw CLI::ValidationError("othello needs --positions");
        return othello_suite(positions);
    }
};

struct TableOpts {
    int bits = 16;
    std::string mode;  // "lossless" or empty
    std::string policy = "deep";

    void attach(CLI::App* cmd) {
        cmd->add_option("--tt-bits", bits, "log2 of table entries")
            ->check(CLI::Range(4, 28));
        cmd->add_option("--tt", mode, "'lossless' for an unbounded table")
            ->check(CLI::IsMember({"lossless"}));
        cmd->add_option("--policy", policy, "collision policy")
            ->check(CLI::IsMember({"deep", "always"}));
    }

    TTConfig build() const {
        if (mode == "lossless") return TTConfig::lossless_table();
        return TTConfig::bounded(bits, policy == "always"
                                           ? Replacement::AlwaysReplace
                                           : Replacement::DeepPreferred);
    }
};

struct SearchOpts {
    bool static_order = false;
    bool no_history = false;
    bool trace_leaves = false;
    int asp_width = 8;
    int step = 10;
    int id_step = 1;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--static-order", static_order,
                      "keep the game's static move order");
        cmd->add_flag("--no-history", no_history, "disable history scores");
        cmd->add_flag("--trace-leaves", trace_leaves, "record leaf events");
        cmd->add_option("--asp-width", asp_width, "aspiration half-window");
        cmd->add_option("--step", step, "jump size of the stepping driver");
        cmd->add_option("--id-step", id_step, "deepening stride");
    }

    SearchOptions build() const {
        SearchOptions o;
        o.dynamic_ordering = !static_order;
        o.use_history = !no_history;
        o.trace_leaves = trace_leaves;
        o.asp_width = asp_width;
        o.step_size = step;
        o.id_step = id_step;
        return o;
    }
};

GuessPolicy parse_guess(const std::string& s) {
    GuessPolicy g;
    if (s == "prev") {
        g.kind = GuessPolicy::Prev;
    } else if (s == "prev2") {
        g.kind = GuessPolicy::Prev2;
    } else {
        g.kind = GuessPolicy::Fixed;
        g.fixed = std::stoi(s);
    }
    return g;
}

std::vector<Algorithm> parse_algos(const std::string& csv) {
    std::vector<Algorithm> out;
    std::stringstream ss(csv);
    std::string tag;
    while (std::getline(ss, tag, ',')) {
        Algorithm a;
        if (!algorithm_from_name(tag, a))
            throw CLI::ValidationError("unknown algorithm tag: " + tag);
        out.push_back(a);
    }
    return out;
}

// Output sink: --out file or stdout.
struct Sink {
    std::ofstream file;
    std::ostream& open(const std::string& path) {
        if (path.empty()) return std::cout;
        file.open(path);
        if (!file) throw CLI::ValidationError("cannot write " + path);
        return file;
    }
};

int cmd_run(const SuiteOpts& sopt, const TableOpts& topt, const SearchOpts& xopt,
            const std::string& algo, int depth, Value gamma,
            const std::string& guess, const std::string& out_path) {
    Suite suite = sopt.build();
    Sink sink;
    std::ostream& out = sink.open(out_path);

    if (algo == "mt") {
        out << "position,gamma,g,leaf_evals,interior_visits,transposition_hits,"
               "total_nodes\n";
        for (const Position& pos : suite.positions) {
            TranspositionTable tt(topt.build());
            SearchContext ctx(*pos.game, &tt, xopt.build());
            Value g = mt(ctx, pos.state, depth, gamma);
            out << pos.id << ',' << gamma << ',' << g << ','
                << ctx.stats.leaf_evals << ',' << ctx.stats.interior_visits
                << ',' << ctx.stats.transposition_hits << ','
                << ctx.stats.total_nodes() << '\n';
        }
        return 0;
    }
    if (algo == "mtdbest") {
        out << "position,move,calls,proven_lower\n";
        GuessPolicy g = parse_guess(guess);
        for (const Position& pos : suite.positions) {
            TranspositionTable tt(topt.build());
            SearchContext ctx(*pos.game, &tt, xopt.build());
            MtdBestResult r = mtd_best(ctx, pos.state, depth,
                                       g.kind == GuessPolicy::Fixed ? g.fixed : 0);
            out << pos.id << ','
                << pos.game->describe_move(pos.state, r.move) << ',' << r.calls
                << ',' << r.proven_lower << '\n';
        }
        return 0;
    }

    Algorithm a;
    if (!algorithm_from_name(algo, a))
        throw CLI::ValidationError("unknown algorithm tag: " + algo);
    out << "position,algorithm,depth,value,leaf_evals,interior_visits,"
           "transposition_hits,total_nodes,distinct_states,mt_calls,"
           "tt_probes,tt_hits,tt_evictions,tt_occupancy\n";
    for (const Position& pos : suite.positions) {
        TranspositionTable tt(topt.build());
        SearchContext ctx(*pos.game, &tt, xopt.build());
        IdResult res =
            iterative_deepen(ctx, pos.state, depth, a, parse_guess(guess));
        for (const IterationRow& row : res.rows)
            out << pos.id << ',' << algorithm_name(a) << ',' << row.depth << ','
                << row.value << ',' << row.leaf_evals << ','
                << row.interior_visits << ',' << row.transposition_hits << ','
                << row.total_nodes << ',' << row.distinct_states << ','
                << row.mt_calls << ',' << tt.stats().probes << ','
                << tt.stats().hits << ',' << tt.stats().evictions << ','
                << tt.occupancy() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"null-window game-tree search workbench"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "one algorithm over a suite");
    SuiteOpts run_suite;
    TableOpts run_table;
    SearchOpts run_search;
    std::string run_algo = "ab", run_guess = "prev", run_out;
    int run_depth = 4;
    Value run_gamma = mts::kInf;
    run_suite.attach(run);
    run_table.attach(run);
    run_search.attach(run);
    run->add_option("--algo", run_algo,
                    "ab|nega|asp-nega|sss|dual|mtdf|mtdbi|mtdstep|mt|mtdbest");
    run->add_option("--depth", run_depth, "search horizon");
    run->add_option("--gamma", run_gamma, "test bound (algo mt)");
    run->add_option("--first-guess", run_guess, "v|prev|prev2");
    run->add_option("--out", run_out, "CSV path (default stdout)");

    // compare
    auto* cmp = app.add_subcommand("compare", "algorithms side by side");
    SuiteOpts cmp_suite;
    TableOpts cmp_table;
    SearchOpts cmp_search;
    std::string cmp_algos, cmp_guess = "prev", cmp_out;
    int cmp_depth = 4;
    cmp_suite.attach(cmp);
    cmp_table.attach(cmp);
    cmp_search.attach(cmp);
    cmp->add_option("--algos", cmp_algos, "comma list (default: the seven)");
    cmp->add_option("--depth", cmp_depth, "search horizon");
    cmp->add_option("--first-guess", cmp_guess, "v|prev|prev2");
    cmp->add_option("--out", cmp_out, "CSV path");

    // memsweep
    auto* mem = app.add_subcommand("memsweep", "leaf counts across table sizes");
    int mem_w = 4, mem_d = 8, mem_seeds = 40, mem_lo = 4, mem_hi = 14,
        mem_step = 2;
    double mem_corr = 0.7, mem_order = 0.9;
    std::uint64_t mem_seed = 11;
    std::string mem_out;
    mem->add_option("--w", mem_w, "branching factor");
    mem->add_option("--d", mem_d, "tree depth");
    mem->add_option("--corr", mem_corr, "value correlation");
    mem->add_option("--order", mem_order, "move-ordering strength");
    mem->add_option("--seeds", mem_seeds, "trees to aggregate");
    mem->add_option("--seed", mem_seed, "base seed");
    mem->add_option("--bits-lo", mem_lo, "smallest table, log2");
    mem->add_option("--bits-hi", mem_hi, "largest table, log2");
    mem->add_option("--id-step", mem_step, "deepening stride");
    mem->add_option("--out", mem_out, "CSV path");

    // guess-sweep
    auto* gs = app.add_subcommand("guess-sweep", "first-guess sensitivity");
    SuiteOpts gs_suite;
    TableOpts gs_table;
    SearchOpts gs_search;
    std::vector<Value> gs_deltas = {-50, -25, -10, 0, 10, 25, 50};
    int gs_depth = 6;
    std::string gs_out;
    gs_suite.attach(gs);
    gs_table.attach(gs);
    gs_search.attach(gs);
    gs->add_option("--deltas", gs_deltas, "guess offsets")->delimiter(',');
    gs->add_option("--depth", gs_depth, "search horizon");
    gs->add_option("--out", gs_out, "CSV path");

    // ordering
    auto* ord = app.add_subcommand("ordering", "per-ply cutoff quality");
    SuiteOpts ord_suite;
    TableOpts ord_table;
    SearchOpts ord_search;
    int ord_depth = 6;
    std::string ord_out;
    ord_suite.attach(ord);
    ord_table.attach(ord);
    ord_search.attach(ord);
    ord->add_option("--depth", ord_depth, "search horizon");
    ord->add_option("--out", ord_out, "CSV path");

    // hunt
    auto* hunt = app.add_subcommand("hunt", "deepened non-dominance search");
    mts::HuntParams hp;
    std::string hunt_out;
    hunt->add_option("--seed", hp.seed, "base seed");
    hunt->add_option("--budget", hp.budget, "max trees");
    hunt->add_option("--w-lo", hp.width_lo, "smallest branching");
    hunt->add_option("--w-hi", hp.width_hi, "largest branching");
    hunt->add_option("--d-from", hp.depth_from, "first deepening horizon");
    hunt->add_option("--d-to", hp.depth_to, "last deepening horizon");
    hunt->add_option("--vmin", hp.value_min, "smallest leaf value");
    hunt->add_option("--vmax", hp.value_max, "largest leaf value");
    hunt->add_option("--corr", hp.correlation, "value correlation");
    hunt->add_flag("--static-order",
                   [&hp](std::int64_t) { hp.dynamic_ordering = false; },
                   "control run: fixed move order, expect no find");
    hunt->add_option("--out", hunt_out, "log path");

    // pearl
    auto* pearl = app.add_subcommand("pearl", "hand-example golden trace");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "open-list reference search");
    oracle->require_subcommand(1);
    auto* oracle_run = oracle->add_subcommand("run", "dump one search");
    SuiteOpts orun_suite;
    int orun_depth = 4;
    std::string orun_out;
    orun_suite.attach(oracle_run);
    oracle_run->add_option("--depth", orun_depth, "search horizon");
    oracle_run->add_option("--out", orun_out, "dump path");
    auto* oracle_eq = oracle->add_subcommand("equiv", "batch equivalence");
    int oeq_trees = 1000;
    std::uint64_t oeq_seed = 1;
    oracle_eq->add_option("--trees", oeq_trees, "tree count");
    oracle_eq->add_option("--seed", oeq_seed, "base seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(run_suite, run_table, run_search, run_algo, run_depth,
                           run_gamma, run_guess, run_out);
        if (*cmp) {
            Suite suite = cmp_suite.build();
            mts::CompareParams p;
            if (!cmp_algos.empty()) p.algorithms = parse_algos(cmp_algos);
            p.depth = cmp_depth;
            p.tt = cmp_table.build();
            p.opts = cmp_search.build();
            p.guess = parse_guess(cmp_guess);
            Sink sink;
            bool ok = mts::run_compare(suite, p, sink.open(cmp_out));
            if (!ok) std::cerr << "value disagreement between algorithms\n";
            return ok ? 0 : 1;
        }
        if (*mem) {
            mts::MemsweepParams p;
            for (int i = 0; i < mem_seeds; ++i) {
                mts::SynthTreeConfig cfg;
                cfg.seed = mem_seed + static_cast<std::uint64_t>(i);
                cfg.branch_min = cfg.branch_max = mem_w;
                cfg.depth = mem_d;
                cfg.correlation = mem_corr;
                cfg.ordering = mem_order;
                p.configs.push_back(cfg);
            }
            p.depth = mem_d;
            p.bits_lo = mem_lo;
            p.bits_hi = mem_hi;
            p.id_step = mem_step;
            mts::MemsweepSummary sum;
            Sink sink;
            bool ok = mts::run_memsweep(p, sink.open(mem_out), &sum);
            std::cerr << "level-off: descending-bound 2^"
                      << sum.level_off_bits_sss << ", ascending-bound 2^"
                      << sum.level_off_bits_dual << "\n";
            return ok ? 0 : 1;
        }
        if (*gs) {
            Suite suite = gs_suite.build();
            mts::GuessSweepParams p;
            p.deltas = gs_deltas;
            p.depth = gs_depth;
            p.tt = gs_table.build();
            p.opts = gs_search.build();
            Sink sink;
            return mts::run_guess_sweep(suite, p, sink.open(gs_out)) ? 0 : 1;
        }
        if (*ord) {
            Suite suite = ord_suite.build();
            mts::OrderingParams p;
            p.depth = ord_depth;
            p.tt = ord_table.build();
            p.opts = ord_search.build();
            Sink sink;
            return mts::ordering_report(suite, p, sink.open(ord_out)) ? 0 : 1;
        }
        if (*hunt) {
            Sink sink;
            mts::HuntResult r = mts::nondominance_hunt(hp, sink.open(hunt_out));
            return (r.found && !r.replayed) ? 1 : 0;
        }
        if (*pearl) return mts::trace_pearl(std::cout) ? 0 : 1;
        if (*oracle) {
            if (*oracle_run) {
                Suite suite = orun_suite.build();
                Sink sink;
                std::ostream& out = sink.open(orun_out);
                for (const Position& pos : suite.positions) {
                    mts::SssResult r =
                        mts::sss_star(*pos.game, pos.state, orun_depth);
                    for (std::size_t i = 0; i < r.leaf_trace.size(); ++i)
                        out << "EVAL " << r.leaf_paths[i] << ' '
                            << r.leaf_trace[i].value << '\n';
                    for (const auto& snap : r.snapshots) {
                        out << "OPEN [";
                        for (std::size_t i = 0; i < snap.size(); ++i) {
                            if (i) out << ' ';
                            out << '<' << snap[i].label << ','
                                << (snap[i].live ? 'L' : 'S') << ','
                                << snap[i].merit << '>';
                        }
                        out << "]\n";
                    }
                    out << "VALUE " << pos.id << ' ' << r.value << '\n';
                }
                return 0;
            }
            return mts::oracle_equivalence(oeq_trees, oeq_seed, std::cerr) ? 0
                                                                           : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
