#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "cold/chordal.hpp"
#include "cold/design.hpp"
#include "cold/errors.hpp"
#include "cold/essential.hpp"
#include "cold/graph_ops.hpp"
#include "cold/mec_size.hpp"
#include "cold/meek.hpp"

namespace cold::bench {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& where) {
    std::vector<std::size_t> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw InputError(where + ": cannot parse size '" + item + "'");
        }
    }
    if (out.empty()) throw InputError(where + ": sizes list is empty");
    return out;
}

}  // namespace

BenchConfig parse_config(std::istream& in, const std::string& origin) {
    BenchConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    bool have_sizes = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = origin + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw InputError(where + ": expected 'key = value'");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        try {
            if (key == "experiment") {
                cfg.experiment = value;
            } else if (key == "sizes") {
                cfg.sizes = parse_size_list(value, where);
                have_sizes = true;
            } else if (key == "avg_degree") {
                cfg.avg_degree = std::stod(value);
            } else if (key == "instances") {
                cfg.instances = std::stoull(value);
            } else if (key == "repetitions") {
                cfg.repetitions = std::stoull(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else {
                throw InputError(where + ": unknown key '" + key + "'");
            }
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            throw InputError(where + ": cannot parse value '" + value + "' for key '" + key +
                             "'");
        }
    }
    if (!have_sizes) throw InputError(origin + ": config must list sizes");
    if (cfg.experiment != "essential" && cfg.experiment != "mecsize" &&
        cfg.experiment != "design" && cfg.experiment != "all") {
        throw InputError(origin + ": unknown experiment '" + cfg.experiment + "'");
    }
    if (cfg.instances == 0 || cfg.repetitions == 0) {
        throw InputError(origin + ": instances and repetitions must be positive");
    }
    return cfg;
}

BenchConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    return parse_config(in, path);
}

double median_seconds(std::size_t reps, const std::function<void()>& fn) {
    std::vector<double> times;
    times.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

MixedGraph random_mpdag_instance(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2) throw InputError("random_mpdag_instance requires at least two vertices");
    std::size_t full = n * (n - 1) / 2;
    if (m + 1 < n || m > full) {
        throw InputError("random_mpdag_instance requires n-1 <= m <= n(n-1)/2");
    }
    std::mt19937_64 rng(seed);
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_vec(order, rng);
    MixedGraph g(n);
    for (std::size_t i = 1; i < n; ++i) {
        g.add_edge(Edge::undirected(order[i], order[bounded_rand(rng, i)]));
    }
    std::size_t added = n - 1;
    while (added < m) {
        VertexId u = static_cast<VertexId>(bounded_rand(rng, n));
        VertexId v = static_cast<VertexId>(bounded_rand(rng, n));
        if (u == v || g.adjacent(u, v)) continue;
        g.add_edge(Edge::undirected(u, v));
        ++added;
    }
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_vec(perm, rng);
    MixedGraph dag = orient_by_ordering(g, perm);
    EdgeSet edges = g.edges();
    for (const VStructure& vs : v_structures(dag)) {
        edges.insert(Edge::directed(vs.i, vs.k));
        edges.insert(Edge::directed(vs.j, vs.k));
    }
    return MixedGraph(n, edges);
}

namespace {

struct Cell {
    std::string experiment;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

struct CellOutcome {
    std::vector<std::string> rows;
    std::string note;      // skipped-cell diagnostic, empty when the cell ran
    std::string mismatch;  // pairing failure description, aborts the sweep
};

std::string format_time(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", seconds);
    return buf;
}

std::string csv_row(const Cell& cell, const std::string& method, double seconds,
                    std::size_t output_size) {
    return cell.experiment + "," + std::to_string(cell.n) + "," + std::to_string(cell.m) + "," +
           std::to_string(cell.seed) + "," + method + "," + format_time(seconds) + "," +
           std::to_string(output_size) + "\n";
}

// Runs one method family on one instance: `outputs` are compared for
// equality across methods before any timing is recorded.
template <typename Output, typename MethodFn>
bool run_methods(const Cell& cell, std::size_t reps,
                 const std::vector<std::pair<std::string, MethodFn>>& methods,
                 const std::function<std::size_t(const Output&)>& size_of, CellOutcome& out) {
    std::vector<Output> outputs;
    outputs.reserve(methods.size());
    for (const auto& [name, fn] : methods) {
        outputs.push_back(fn());
    }
    for (std::size_t i = 1; i < outputs.size(); ++i) {
        if (!(outputs[i] == outputs[0])) {
            out.mismatch = "methods '" + methods[0].first + "' and '" + methods[i].first +
                           "' disagree on " + cell.experiment + " n=" + std::to_string(cell.n) +
                           " seed=" + std::to_string(cell.seed);
            return false;
        }
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
        const auto& [name, fn] = methods[i];
        double t = median_seconds(reps, [&] { (void)fn(); });
        out.rows.push_back(csv_row(cell, name, t, size_of(outputs[i])));
    }
    return true;
}

CellOutcome run_cell(const Cell& cell, std::size_t reps) {
    CellOutcome out;
    if (cell.experiment == "essential") {
        MixedGraph g = random_mpdag_instance(cell.n, cell.m, cell.seed);
        using Fn = std::function<MixedGraph()>;
        std::vector<std::pair<std::string, Fn>> methods{
            {"cold", [&] { return essential_from_mpdag(g); }},
            {"conventional",
             [&] {
                 ClosureOptions opts;
                 opts.rules = RuleSet{Rule::R1, Rule::R2, Rule::R3};
                 opts.naive = true;
                 return meek_closure(g, opts);
             }},
        };
        run_methods<MixedGraph, Fn>(
            cell, reps, methods,
            [](const MixedGraph& r) { return r.directed_count(); }, out);
    } else if (cell.experiment == "mecsize") {
        MixedGraph g = random_chordal(cell.n, cell.m, cell.seed);
        using Fn = std::function<BigInt()>;
        std::vector<std::pair<std::string, Fn>> methods{
            {"cold",
             [&] {
                 SizeMemo memo;
                 return count_mec(g, memo);
             }},
            {"conventional-root",
             [&] {
                 SizeMemo memo;
                 MecCountOptions opts;
                 opts.closed_forms = false;
                 opts.conventional_root = true;
                 return count_mec(g, memo, opts);
             }},
        };
        // The count itself may not fit a machine word; its printed width
        // stands in as the output size.
        run_methods<BigInt, Fn>(
            cell, reps, methods,
            [](const BigInt& c) { return c.str().size(); }, out);
    } else if (cell.experiment == "design") {
        MixedGraph g = random_chordal(cell.n, cell.m, cell.seed);
        using Fn = std::function<Selection()>;
        std::vector<std::pair<std::string, Fn>> methods{
            {"minmax",
             [&] {
                 DpTable table(g);
                 return select_minmax_node(g, table, false);
             }},
            {"minmaxpt",
             [&] {
                 DpTable table(g);
                 return select_minmax_node(g, table, true);
             }},
            {"conventional",
             [&] {
                 DpTable table(g);
                 return select_minmax_node(g, table, false, true);
             }},
        };
        run_methods<Selection, Fn>(
            cell, reps, methods,
            [](const Selection& s) { return s.score; }, out);
    } else {
        out.note = "unknown experiment '" + cell.experiment + "'";
    }
    return out;
}

std::size_t worker_count(std::size_t cells) {
    std::size_t want = 1;
    if (const char* env = std::getenv("COLD_THREADS")) {
        try {
            want = std::stoull(env);
        } catch (const std::exception&) {
            want = 1;
        }
        if (want == 0) want = 1;
    }
    return std::min(want, std::max<std::size_t>(cells, 1));
}

}  // namespace

int run(const BenchConfig& cfg, std::ostream& csv, std::ostream& log) {
    std::vector<std::string> experiments;
    if (cfg.experiment == "all") {
        experiments = {"essential", "mecsize", "design"};
    } else {
        experiments = {cfg.experiment};
    }

    std::vector<Cell> cells;
    std::vector<std::string> skipped;
    for (const std::string& exp : experiments) {
        for (std::size_t n : cfg.sizes) {
            std::size_t m = static_cast<std::size_t>(std::llround(cfg.avg_degree * n));
            std::size_t full = n >= 2 ? n * (n - 1) / 2 : 0;
            if (n < 2 || m + 1 < n || m > full) {
                skipped.push_back("skipped " + exp + " n=" + std::to_string(n) + " m=" +
                                  std::to_string(m) + ": no connected graph has that size");
                continue;
            }
            for (std::size_t k = 0; k < cfg.instances; ++k) {
                cells.push_back(Cell{exp, n, m, cfg.seed + 1000 * n + k});
            }
        }
    }
    for (const std::string& s : skipped) log << s << "\n";

    std::vector<CellOutcome> outcomes(cells.size());
    std::size_t workers = worker_count(cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            outcomes[i] = run_cell(cells[i], cfg.repetitions);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) return;
                    outcomes[i] = run_cell(cells[i], cfg.repetitions);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    csv << "experiment,n,m,seed,method,wall_time_s,output_size\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!outcomes[i].mismatch.empty()) {
            log << "pairing failure: " << outcomes[i].mismatch << "; sweep aborted\n";
            return 1;
        }
        if (!outcomes[i].note.empty()) {
            log << outcomes[i].note << "\n";
            continue;
        }
        for (const std::string& row : outcomes[i].rows) csv << row;
    }
    return 0;
}

namespace {

// Drops the wall_time_s column, the only one that may differ run to run.
std::string strip_times(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, ',')) cols.push_back(col);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i == 5) continue;
            if (!out.empty() && out.back() != '\n') out += ',';
            out += cols[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace

int check_stability(const BenchConfig& cfg, std::ostream& log) {
    std::ostringstream first, second, sink;
    if (run(cfg, first, sink) != 0 || run(cfg, second, sink) != 0) {
        log << "stability check: sweep failed\n" << sink.str();
        return 1;
    }
    if (strip_times(first.str()) != strip_times(second.str())) {
        log << "stability check: runs differ outside the wall_time_s column\n";
        return 1;
    }
    log << "stability check: " << cfg.sizes.size() << " sizes stable\n";
    return 0;
}

}  // namespace cold::bench
