#include <random>
#include <sstream>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph.hpp"
#include "cold/graph_ops.hpp"
#include "cold/io.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace cold;

namespace {

MixedGraph path_graph(std::size_t n) {
    MixedGraph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        g.add_edge(Edge::undirected(static_cast<VertexId>(i), static_cast<VertexId>(i + 1)));
    }
    return g;
}

MixedGraph complete_graph(std::size_t n) {
    MixedGraph g(n);
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) g.add_edge(Edge::undirected(a, b));
    }
    return g;
}

MixedGraph cycle_graph(std::size_t n) {
    MixedGraph g = path_graph(n);
    g.add_edge(Edge::undirected(0, static_cast<VertexId>(n - 1)));
    return g;
}

}  // namespace

TEST_CASE("edge normalization and ranks") {
    Edge u = Edge::undirected(5, 2);
    CHECK(u.tail == 2);
    CHECK(u.head == 5);
    CHECK(u.pair_rank() == 0);

    Edge fwd = Edge::directed(2, 5);
    Edge rev = Edge::directed(5, 2);
    CHECK(fwd.pair_rank() == 1);
    CHECK(rev.pair_rank() == 2);
    CHECK(fwd.lo() == 2);
    CHECK(rev.lo() == 2);

    CHECK_THROWS_AS(Edge::undirected(3, 3), InputError);
    CHECK_THROWS_AS(Edge::directed(3, 3), InputError);
}

TEST_CASE("edge set absorption and conflicts") {
    EdgeSet s;
    s.insert(Edge::undirected(0, 1));
    CHECK(s.contains_pair(1, 0));
    CHECK(s.size() == 1);

    // A directed mark absorbs the undirected edge on the same pair.
    s.insert(Edge::directed(1, 0));
    CHECK(s.size() == 1);
    CHECK(s.contains_arc(1, 0));
    CHECK(!s.contains(Edge::undirected(0, 1)));

    // An undirected insert onto a directed pair is a no-op.
    s.insert(Edge::undirected(0, 1));
    CHECK(s.size() == 1);
    CHECK(s.contains_arc(1, 0));

    CHECK(!s.has_conflict());
    s.insert(Edge::directed(0, 1));
    CHECK(s.size() == 2);
    CHECK(s.has_conflict());
    auto [a, b] = s.first_conflict();
    CHECK(a.lo() == 0);
    CHECK(b.lo() == 0);
    CHECK(a != b);
}

TEST_CASE("edge set ordering, difference and union") {
    EdgeSet s{Edge::undirected(2, 3), Edge::directed(1, 0), Edge::undirected(0, 2)};
    CHECK(s[0] == Edge::directed(1, 0));
    CHECK(s[1] == Edge::undirected(0, 2));
    CHECK(s[2] == Edge::undirected(2, 3));

    EdgeSet t{Edge::directed(1, 0), Edge::undirected(2, 3)};
    EdgeSet d = s.minus(t);
    CHECK(d.size() == 1);
    CHECK(d.contains(Edge::undirected(0, 2)));
    // Difference is by exact mark: a directed member is not removed by
    // the undirected edge on the same pair.
    EdgeSet t2{Edge::undirected(0, 1)};
    CHECK(s.minus(t2).size() == 3);

    EdgeSet left{Edge::directed(0, 1), Edge::undirected(1, 2)};
    EdgeSet right{Edge::undirected(0, 1), Edge::directed(2, 1)};
    EdgeSet u = mixed_union(left, right);
    CHECK(u.contains_arc(0, 1));
    CHECK(u.contains_arc(2, 1));
    CHECK(!u.has_conflict());

    EdgeSet clash = mixed_union(EdgeSet{Edge::directed(0, 1)}, EdgeSet{Edge::directed(1, 0)});
    CHECK(clash.has_conflict());
}

TEST_CASE("mixed graph adjacency and orientation") {
    MixedGraph g(4);
    g.add_edge(Edge::undirected(0, 1));
    g.add_edge(Edge::directed(1, 2));
    g.add_edge(Edge::undirected(2, 3));
    CHECK(g.audit());

    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(2, 1));
    CHECK(!g.adjacent(0, 2));
    CHECK(g.has_arc(1, 2));
    CHECK(!g.has_arc(2, 1));
    CHECK(g.has_undirected(3, 2));
    CHECK(g.neighbors(2) == std::vector<VertexId>{1, 3});
    CHECK(g.undirected_neighbors(2) == std::vector<VertexId>{3});
    CHECK(g.parents(2) == std::vector<VertexId>{1});
    CHECK(g.children(1) == std::vector<VertexId>{2});

    CHECK(g.orient(2, 3) == OrientResult::New);
    CHECK(g.orient(2, 3) == OrientResult::Already);
    CHECK(g.orient(3, 2) == OrientResult::Conflict);
    CHECK(g.has_arc(2, 3));
    CHECK(g.audit());

    CHECK_THROWS_AS(g.orient(0, 3), InputError);
    CHECK_THROWS_AS(g.add_edge(Edge::directed(2, 1)), ConflictError);
    CHECK_THROWS_AS(g.add_edge(Edge::undirected(0, 9)), InputError);
}

TEST_CASE("labels and induced subgraphs compose") {
    MixedGraph g(4, EdgeSet{Edge::undirected(0, 1), Edge::undirected(1, 2), Edge::directed(2, 3)},
                 {10, 20, 30, 40});
    CHECK(g.label(2) == 30);
    CHECK(g.vname(2) == "v30");

    MixedGraph sub = induced_subgraph(g, {1, 2, 3});
    CHECK(sub.vertex_count() == 3);
    CHECK(sub.label(0) == 20);
    CHECK(sub.has_undirected(0, 1));
    CHECK(sub.has_arc(1, 2));
    CHECK(!sub.adjacent(0, 2));

    MixedGraph subsub = induced_subgraph(sub, {1, 2});
    CHECK(subsub.label(0) == 30);
    CHECK(subsub.label(1) == 40);
    CHECK(subsub.has_arc(0, 1));

    MixedGraph unlabeled(3);
    CHECK(unlabeled.label(1) == 1);
    CHECK(unlabeled.vname(1) == "v1");

    CHECK_THROWS_AS(induced_subgraph(g, {2, 1}), InputError);
    CHECK_THROWS_AS(induced_subgraph(g, {1, 1}), InputError);
}

TEST_CASE("skeleton, directed part and v-structures") {
    MixedGraph g(4);
    g.add_edge(Edge::directed(0, 2));
    g.add_edge(Edge::directed(1, 2));
    g.add_edge(Edge::undirected(2, 3));
    CHECK(skeleton(g).fully_undirected());
    CHECK(directed_part(g).size() == 2);

    auto vs = v_structures(g);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == VStructure{0, 2, 1});
    CHECK(arc_in_v_structure(g, 0, 2));
    CHECK(arc_in_v_structure(g, 1, 2));
    CHECK(!arc_in_v_structure(g, 2, 3));

    // Shielding the collider pair removes the v-structure.
    g.add_edge(Edge::undirected(0, 1));
    CHECK(v_structures(g).empty());
    CHECK(!arc_in_v_structure(g, 0, 2));
}

TEST_CASE("chain components are the undirected pieces") {
    MixedGraph g(7, EdgeSet{Edge::undirected(0, 1), Edge::undirected(1, 2), Edge::directed(2, 3),
                            Edge::undirected(4, 5), Edge::directed(5, 6)},
                 {1, 2, 3, 4, 5, 6, 7});
    auto comps = chain_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertex_count() == 3);
    CHECK(comps[0].label(0) == 1);
    CHECK(comps[0].label(2) == 3);
    CHECK(comps[1].vertex_count() == 2);
    CHECK(comps[1].label(0) == 5);
    CHECK(comps[1].label(1) == 6);

    // Vertex 3 and 6 only touch directed edges, so they are in no
    // component; a fully directed graph has none at all.
    MixedGraph dag(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2)});
    CHECK(chain_components(dag).empty());

    CHECK(vertices_with_undirected_edge(g) == std::vector<VertexId>{0, 1, 2, 4, 5});
}

TEST_CASE("connectivity and directed cycles") {
    MixedGraph g(4);
    g.add_edge(Edge::undirected(0, 1));
    g.add_edge(Edge::undirected(2, 3));
    CHECK(!skeleton_connected(g));
    g.add_edge(Edge::directed(1, 2));
    CHECK(skeleton_connected(g));

    CHECK(!find_directed_cycle(g).has_value());
    MixedGraph c(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2), Edge::directed(2, 0)});
    auto cyc = find_directed_cycle(c);
    REQUIRE(cyc.has_value());
    CHECK(cyc->size() == 3);

    // Undirected edges never participate.
    MixedGraph h(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2), Edge::undirected(0, 2)});
    CHECK(!find_directed_cycle(h).has_value());
}

TEST_CASE("structural hamming distance counts pair differences") {
    MixedGraph a(3, EdgeSet{Edge::undirected(0, 1), Edge::directed(1, 2)});
    CHECK(shd(a, a) == 0);

    MixedGraph b(3, EdgeSet{Edge::undirected(0, 1), Edge::directed(2, 1)});
    CHECK(shd(a, b) == 1);  // direction flip

    MixedGraph c(3, EdgeSet{Edge::undirected(0, 1), Edge::undirected(1, 2)});
    CHECK(shd(a, c) == 1);  // mark change

    MixedGraph d(3, EdgeSet{Edge::undirected(0, 1)});
    CHECK(shd(a, d) == 1);  // presence change

    MixedGraph e(4);
    CHECK_THROWS_AS(shd(a, e), InputError);
}

TEST_CASE("classification and star structure") {
    CHECK(classify(path_graph(3)) == GraphClass::Uccg);
    CHECK(classify(cycle_graph(4)) == GraphClass::Other);  // not chordal

    MixedGraph dag(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2)});
    CHECK(classify(dag) == GraphClass::Dag);

    MixedGraph cyc(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2), Edge::directed(2, 0)});
    CHECK(classify(cyc) == GraphClass::Other);

    MixedGraph star(4, EdgeSet{Edge::directed(0, 1), Edge::directed(2, 1), Edge::directed(1, 3),
                               Edge::undirected(0, 2)});
    // Every edge at vertex 1 is directed and nothing else is.
    auto shape = star_structure(star);
    REQUIRE(shape.has_value());
    CHECK(shape->center == 1);
    CHECK(shape->ingoing == std::vector<VertexId>{0, 2});
    CHECK(shape->outgoing == std::vector<VertexId>{3});
    CHECK(classify(star) == GraphClass::Iccg);

    MixedGraph chainstar(3, EdgeSet{Edge::directed(0, 1), Edge::directed(1, 2)});
    auto mid = star_structure(chainstar);
    REQUIRE(mid.has_value());
    CHECK(mid->center == 1);
    CHECK(mid->ingoing == std::vector<VertexId>{0});
    CHECK(mid->outgoing == std::vector<VertexId>{2});

    MixedGraph two(4, EdgeSet{Edge::directed(0, 1), Edge::directed(2, 3)});
    CHECK(!star_structure(two).has_value());

    // An arc whose endpoints both still touch undirected edges is no star.
    MixedGraph mixed(4, EdgeSet{Edge::directed(0, 1), Edge::undirected(0, 2),
                                Edge::undirected(1, 2), Edge::undirected(1, 3),
                                Edge::undirected(2, 3)});
    CHECK(!star_structure(mixed).has_value());
    CHECK(classify(mixed) == GraphClass::PartiallyDirected);
}

TEST_CASE("chordality check and elimination orders") {
    CHECK(is_chordal(path_graph(5)).chordal);
    CHECK(is_chordal(complete_graph(5)).chordal);
    CHECK(!is_chordal(cycle_graph(4)).chordal);
    CHECK(!is_chordal(cycle_graph(5)).chordal);

    MixedGraph squared = cycle_graph(4);
    squared.add_edge(Edge::undirected(0, 2));
    CHECK(is_chordal(squared).chordal);

    // The elimination order is a real perfect elimination ordering: the
    // later neighbors of each vertex form a clique.
    auto check_peo = [](const MixedGraph& g, const std::vector<VertexId>& order) {
        std::vector<std::size_t> pos(g.vertex_count());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::vector<VertexId> later;
            for (VertexId w : g.neighbors(order[i])) {
                if (pos[w] > i) later.push_back(w);
            }
            for (std::size_t a = 0; a < later.size(); ++a) {
                for (std::size_t b = a + 1; b < later.size(); ++b) {
                    if (!g.adjacent(later[a], later[b])) return false;
                }
            }
        }
        return true;
    };

    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        MixedGraph g = cold::testing::random_uccg(rng, 2, 12);
        auto res = is_chordal(g);
        REQUIRE(res.chordal);
        CHECK(res.elimination_order.size() == g.vertex_count());
        CHECK(check_peo(g, res.elimination_order));

        // Reversed LexBFS order is a perfect elimination ordering too.
        auto order = lexbfs_order(g);
        std::vector<VertexId> rev(order.rbegin(), order.rend());
        CHECK(check_peo(g, rev));
    }

    CHECK_THROWS_AS(is_chordal(MixedGraph(2, EdgeSet{Edge::directed(0, 1)})), InputError);
}

TEST_CASE("lexbfs restarts and priorities stay deterministic") {
    MixedGraph g = path_graph(4);
    auto a = lexbfs_order(g, 0);
    CHECK(a == std::vector<VertexId>{0, 1, 2, 3});
    auto b = lexbfs_order(g, 2);
    CHECK(b.front() == 2);
    CHECK(b.size() == 4);

    std::vector<std::uint64_t> priority{0, 1, 2, 9};
    auto c = lexbfs_order_with_priority(g, 2, priority);
    CHECK(c.front() == 2);
    // Both neighbors of 2 tie on label sets; the higher priority wins.
    CHECK(c[1] == 3);

    MixedGraph disconnected(3, EdgeSet{Edge::undirected(0, 1)});
    CHECK_THROWS_AS(lexbfs_order(disconnected), InputError);
}

TEST_CASE("orienting along a search order yields collider-free DAGs") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 40; ++t) {
        MixedGraph g = cold::testing::random_uccg(rng, 2, 12);
        MixedGraph d = cold::testing::random_collider_free_dag(g, rng);
        CHECK(d.fully_directed());
        CHECK(skeleton(d).edges() == g.edges());
        CHECK(!find_directed_cycle(d).has_value());
        CHECK(v_structures(d).empty());
    }

    MixedGraph g = path_graph(3);
    CHECK_THROWS_AS(orient_by_ordering(g, std::vector<VertexId>{0, 0, 1}), InputError);
    CHECK_THROWS_AS(orient_by_ordering(g, std::vector<VertexId>{0, 1}), InputError);
}

TEST_CASE("maximal cliques") {
    auto cliques = maximal_cliques(path_graph(4));
    REQUIRE(cliques.size() == 3);
    CHECK(cliques[0] == std::vector<VertexId>{0, 1});

    CHECK(maximal_cliques(complete_graph(4)) ==
          std::vector<std::vector<VertexId>>{{0, 1, 2, 3}});

    // Non-chordal graphs take the generic path.
    CHECK(maximal_cliques(cycle_graph(4)) ==
          std::vector<std::vector<VertexId>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

    MixedGraph fig(5, EdgeSet{Edge::undirected(0, 1), Edge::undirected(0, 3),
                              Edge::undirected(0, 4), Edge::undirected(1, 2),
                              Edge::undirected(1, 3), Edge::undirected(2, 3)});
    CHECK(maximal_cliques(fig) ==
          std::vector<std::vector<VertexId>>{{0, 1, 3}, {0, 4}, {1, 2, 3}});
    CHECK(neighborhood_cliques(fig, 2) == std::vector<std::vector<VertexId>>{{1, 3}});
    CHECK(neighborhood_cliques(fig, 4) == std::vector<std::vector<VertexId>>{{0}});
}

TEST_CASE("random chordal graphs meet their contract") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        std::mt19937_64 rng(seed);
        std::size_t n = 2 + bounded_rand(rng, 14);
        std::size_t full = n * (n - 1) / 2;
        std::size_t m = (n - 1) + bounded_rand(rng, full - n + 2);
        MixedGraph g = random_chordal(n, m, seed);
        CHECK(g.vertex_count() == n);
        CHECK(g.edge_count() == m);
        CHECK(g.fully_undirected());
        CHECK(skeleton_connected(g));
        CHECK(is_chordal(g).chordal);
    }

    // Same seed, same graph.
    CHECK(random_chordal(9, 14, 5).edges() == random_chordal(9, 14, 5).edges());

    CHECK_THROWS_AS(random_chordal(4, 2, 1), InputError);
    CHECK_THROWS_AS(random_chordal(4, 7, 1), InputError);
    CHECK_THROWS_AS(random_chordal(0, 0, 1), InputError);
}

TEST_CASE("bounded draws and shuffles are deterministic") {
    std::mt19937_64 a(123), b(123);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t bound = 1 + i % 17;
        std::uint64_t x = bounded_rand(a, bound);
        CHECK(x < bound);
        CHECK(x == bounded_rand(b, bound));
    }

    std::vector<int> v{1, 2, 3, 4, 5, 6, 7};
    std::vector<int> w = v;
    std::mt19937_64 c(9), d(9);
    shuffle_vec(v, c);
    shuffle_vec(w, d);
    CHECK(v == w);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("edge list files round-trip") {
    std::istringstream in(
        "# comment line\n"
        "\n"
        "10 -- 20\n"
        "20 -> 30\n"
        "40 <- 30\n");
    MixedGraph g = parse_edge_list(in, "mem");
    CHECK(g.vertex_count() == 4);
    CHECK(g.label(0) == 10);
    CHECK(g.label(3) == 40);
    CHECK(g.has_undirected(0, 1));
    CHECK(g.has_arc(1, 2));
    CHECK(g.has_arc(2, 3));  // "40 <- 30" means 30 -> 40

    std::string body = format_edge_lines(g);
    CHECK(body == "10 -- 20\n20 -> 30\n30 -> 40\n");

    std::istringstream again(body);
    MixedGraph h = parse_edge_list(again, "mem");
    CHECK(h == g);
}

TEST_CASE("edge list parse errors carry the line") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_edge_list(in, "mem");
            FAIL_CHECK("expected InputError for: " << text);
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("1 -- 2\n2 => 3\n", "mem:2");
    expect_error("1 -- 1\n", "mem:1");
    expect_error("1 --\n", "mem:1");
    expect_error("a -- b\n", "mem:1");
    expect_error("1 -- 2 extra\n", "mem:1");
    expect_error("1 -- 2\n1 -- 2\n", "mem:2");
    expect_error("1 -- 2\n2 -> 1\n", "mem:2");
    expect_error("", "no edges");
}

TEST_CASE("rendering helpers use labels") {
    MixedGraph g(3, EdgeSet{Edge::directed(0, 1), Edge::undirected(1, 2)}, {7, 8, 9});
    CHECK(format_edge_set(g, g.edges()) == "{v7->v8, v8--v9}");
    CHECK(format_edge_set(g, EdgeSet{}) == "{}");
    CHECK(format_vertex_set(g, {2, 0}) == "{v7, v9}");

    CHECK(resolve_vertex_name(g, "8") == 1);
    CHECK(resolve_vertex_name(g, "v9") == 2);
    CHECK_THROWS_AS(resolve_vertex_name(g, "11"), InputError);
    CHECK_THROWS_AS(resolve_vertex_name(g, "x"), InputError);
}
