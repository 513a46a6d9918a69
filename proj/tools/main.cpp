#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "cold/chordal.hpp"
#include "cold/consistency.hpp"
#include "cold/design.hpp"
#include "cold/dp_table.hpp"
#include "cold/errors.hpp"
#include "cold/essential.hpp"
#include "cold/graph_ops.hpp"
#include "cold/io.hpp"
#include "cold/mec_size.hpp"
#include "cold/meek.hpp"
#include "fixture_suite.hpp"

namespace {

using namespace cold;

ForbiddenEdges parse_forbidden(const MixedGraph& g, const std::string& text) {
    ForbiddenEdges out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t dash = item.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 == item.size()) {
            throw InputError("forbidden edge '" + item + "' must look like '2-3'");
        }
        VertexId a = resolve_vertex_name(g, item.substr(0, dash));
        VertexId b = resolve_vertex_name(g, item.substr(dash + 1));
        out.add(a, b);
    }
    return out;
}

std::vector<VertexId> parse_vertex_list(const MixedGraph& g, const std::string& text) {
    std::vector<VertexId> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(resolve_vertex_name(g, item));
    }
    return out;
}

void require_uccg_input(const MixedGraph& g, const std::string& path) {
    if (classify(g) != GraphClass::Uccg) {
        throw InputError(path + ": expected an undirected connected chordal graph");
    }
}

void print_graph_or_write(const MixedGraph& g, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << format_edge_lines(g);
    } else {
        write_graph_file(g, out_path);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Random acyclic collider-free orientation of an undirected connected
// chordal graph, for simulated ground truths.
MixedGraph random_truth(const MixedGraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t n = g.vertex_count();
    std::vector<std::uint64_t> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    shuffle_vec(priority, rng);
    VertexId start = static_cast<VertexId>(bounded_rand(rng, n));
    return orient_by_ordering(g, lexbfs_order_with_priority(g, start, priority));
}

int cmd_check(const std::string& path) {
    MixedGraph g = read_graph_file(path);
    DpTable table(g);
    ConsistencyVerdict verdict = check_consistency(g, table);
    if (verdict.consistent) {
        std::cout << "consistent\nwitness:\n" << format_edge_lines(*verdict.witness);
        return 0;
    }
    if (const auto* cyc = std::get_if<CycleWitness>(&*verdict.violation)) {
        std::cout << "inconsistent: directed cycle ";
        for (VertexId v : cyc->cycle) std::cout << g.vname(v) << " -> ";
        std::cout << g.vname(cyc->cycle.front()) << "\n";
    } else {
        const auto& pair = std::get<EdgePairWitness>(*verdict.violation);
        auto arrow = [&](const Edge& e) {
            return g.vname(e.tail) + "->" + g.vname(e.head);
        };
        std::cout << "inconsistent: edges " << arrow(pair.e1) << " and " << arrow(pair.e2)
                  << " force " << g.vname(pair.clashing.lo()) << " -- "
                  << g.vname(pair.clashing.hi()) << " in both directions\n";
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fast causal orientation learning over chordal graphs"};
    app.require_subcommand(1);
    int rc = 0;

    // gen
    std::size_t gen_n = 10, gen_m = 15;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a random connected chordal graph");
    gen->add_option("-n,--vertices", gen_n, "vertex count")->required();
    gen->add_option("-m,--edges", gen_m, "edge count")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");
    gen->callback([&] { print_graph_or_write(random_chordal(gen_n, gen_m, gen_seed), gen_out); });

    // close
    std::string close_rules = "1234", close_forbidden, close_file;
    bool close_naive = false;
    std::optional<std::uint64_t> close_shuffle;
    auto* close = app.add_subcommand("close", "close a graph under the orientation rules");
    close->add_option("--rules", close_rules, "rule subset, e.g. 1 or 124");
    close->add_flag("--naive", close_naive, "global rescan engine instead of the worklist");
    close->add_option("--shuffle-seed", close_shuffle,
                      "randomize rule application order (implies --naive)");
    close->add_option("--forbidden", close_forbidden,
                      "edges rule 1 must not orient, e.g. 2-3,4-5");
    close->add_option("file", close_file, "edge list file")->required();
    close->callback([&] {
        MixedGraph g = read_graph_file(close_file);
        ForbiddenEdges forbidden;
        ClosureOptions opts;
        opts.rules = RuleSet::parse(close_rules);
        opts.naive = close_naive;
        opts.shuffle_seed = close_shuffle;
        if (!close_forbidden.empty()) {
            forbidden = parse_forbidden(g, close_forbidden);
            opts.forbidden = &forbidden;
        }
        std::cout << format_edge_lines(meek_closure(g, opts));
    });

    // essential
    std::string ess_file;
    bool ess_conventional = false;
    auto* ess = app.add_subcommand("essential",
                                   "essential graph of a partially directed input");
    ess->add_flag("--conventional", ess_conventional,
                  "full rule closure instead of cached table unions");
    ess->add_option("file", ess_file, "edge list file")->required();
    ess->callback([&] {
        MixedGraph g = read_graph_file(ess_file);
        MixedGraph out = ess_conventional ? essential_conventional(g) : essential_from_mpdag(g);
        std::cout << format_edge_lines(out);
    });

    // intervene
    std::string int_node, int_ingoing, int_file;
    auto* itv = app.add_subcommand("intervene",
                                   "edges oriented by one intervention on a chordal graph");
    itv->add_option("--node", int_node, "intervened vertex, e.g. v3")->required();
    itv->add_option("--ingoing", int_ingoing, "comma list of parents among its neighbors");
    itv->add_option("file", int_file, "edge list file")->required();
    itv->callback([&] {
        MixedGraph g = read_graph_file(int_file);
        require_uccg_input(g, int_file);
        DpTable table(g);
        VertexId v = resolve_vertex_name(g, int_node);
        std::vector<VertexId> ingoing = parse_vertex_list(g, int_ingoing);
        std::cout << fixtures::render_intervention(
            g, i_essential_after_intervention(g, v, ingoing, table));
    });

    // mecsize
    std::string mec_file;
    bool mec_no_closed = false, mec_conv_root = false, mec_brute = false;
    auto* mec = app.add_subcommand("mecsize",
                                   "number of acyclic collider-free orientations");
    mec->add_flag("--no-closed-forms", mec_no_closed, "skip the closed-form shortcuts");
    mec->add_flag("--conventional-root", mec_conv_root,
                  "root each vertex with a full rule closure instead of table unions");
    mec->add_flag("--brute-force", mec_brute, "enumerate orientations directly (small graphs)");
    mec->add_option("file", mec_file, "edge list file")->required();
    mec->callback([&] {
        MixedGraph g = read_graph_file(mec_file);
        auto t0 = std::chrono::steady_clock::now();
        if (mec_brute) {
            BigInt size = brute_force_mec_size(g);
            std::cout << "size: " << size << "\nmethod: brute-force\ntime_s: " << seconds_since(t0)
                      << "\n";
            return;
        }
        SizeMemo memo;
        MecCountOptions opts;
        opts.closed_forms = !mec_no_closed;
        opts.conventional_root = mec_conv_root;
        BigInt size = count_mec(g, memo, opts);
        std::cout << "size: " << size << "\nmethod: "
                  << (mec_conv_root ? "conventional-root" : "cold")
                  << "\ntime_s: " << seconds_since(t0) << "\nmemo: " << memo.hits << " hits, "
                  << memo.misses << " misses\n";
    });

    // design
    std::string des_objective = "minmax", des_file;
    auto* des = app.add_subcommand("design", "pick the most informative intervention vertex");
    des->add_option("--objective", des_objective, "minmax, minmaxpt, or lb")
        ->check(CLI::IsMember({"minmax", "minmaxpt", "lb"}));
    des->add_option("file", des_file, "edge list file")->required();
    des->callback([&] {
        MixedGraph g = read_graph_file(des_file);
        require_uccg_input(g, des_file);
        DpTable table(g);
        Selection sel;
        if (des_objective == "lb") {
            sel = select_lb_node(g, table);
        } else {
            sel = select_minmax_node(g, table, des_objective == "minmaxpt");
        }
        std::cout << "objective: " << des_objective << "\nselected: " << g.vname(sel.v)
                  << "\nscore: " << sel.score << "\n";
    });

    // active-sim
    std::string act_policy = "minmax", act_file;
    std::size_t act_runs = 1;
    std::uint64_t act_seed = 1;
    auto* act = app.add_subcommand("active-sim",
                                   "simulate intervening until the graph is fully oriented");
    act->add_option("--policy", act_policy,
                    "minmax, minmaxpt, lb, random-naive, or random-chordal");
    act->add_option("--runs", act_runs, "number of simulated runs");
    act->add_option("--seed", act_seed, "base seed; run k uses seed+k");
    act->add_option("file", act_file, "edge list file (undirected, or a full orientation)")
        ->required();
    act->callback([&] {
        MixedGraph g = read_graph_file(act_file);
        Policy policy = parse_policy(act_policy);
        std::cout << "seed,policy,steps,trace\n";
        for (std::size_t r = 0; r < act_runs; ++r) {
            std::uint64_t seed = act_seed + r;
            MixedGraph truth = g.fully_undirected() ? random_truth(g, seed) : g;
            ActiveLearningResult res = active_learning_run(truth, policy, seed);
            std::cout << seed << "," << policy_name(policy) << "," << res.steps << ",";
            for (std::size_t i = 0; i < res.oriented_per_step.size(); ++i) {
                if (i) std::cout << ";";
                std::cout << res.oriented_per_step[i];
            }
            std::cout << "\n";
        }
    });

    // check
    std::string check_file;
    auto* chk = app.add_subcommand("check",
                                   "decide whether the directed edges fit one acyclic "
                                   "collider-free orientation");
    chk->add_option("file", check_file, "edge list file")->required();
    chk->callback([&] { rc = cmd_check(check_file); });

    // bench
    std::string bench_config, bench_out;
    bool bench_stable = false;
    auto* ben = app.add_subcommand("bench", "timing sweeps over generated instances");
    ben->add_flag("--check-stability", bench_stable,
                  "run the sweep twice and compare everything but the times");
    ben->add_option("-o,--output", bench_out, "CSV output file (default stdout)");
    ben->add_option("config", bench_config, "key=value sweep configuration file")->required();
    ben->callback([&] {
        bench::BenchConfig cfg = bench::read_config_file(bench_config);
        if (bench_stable) {
            rc = bench::check_stability(cfg, std::cerr);
        } else if (bench_out.empty()) {
            rc = bench::run(cfg, std::cout, std::cerr);
        } else {
            std::ofstream out(bench_out);
            if (!out) throw InputError("cannot write CSV file: " + bench_out);
            rc = bench::run(cfg, out, std::cerr);
        }
    });

    // fixtures
    auto* fix = app.add_subcommand("fixtures", "run the frozen byte-exact output checks");
    fix->callback([&] { rc = fixtures::report(std::cout) == 0 ? 0 : 1; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConflictError& e) {
        std::cerr << "conflict: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return rc;
}
