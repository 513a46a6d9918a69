#include "cold/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cold/errors.hpp"

namespace cold {

namespace {

struct RawEdge {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    bool directed = false;
    std::size_t lineno = 0;
};

bool parse_label(const std::string& tok, std::uint64_t& out) {
    if (tok.empty()) return false;
    out = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return true;
}

}  // namespace

MixedGraph parse_edge_list(std::istream& in, const std::string& origin) {
    std::vector<RawEdge> raw;
    std::map<std::uint64_t, VertexId> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = origin + ":" + std::to_string(lineno);
        std::istringstream ls(line);
        std::string a, op, b, extra;
        if (!(ls >> a)) continue;
        if (a[0] == '#') continue;
        if (!(ls >> op >> b) || (ls >> extra)) {
            throw InputError(where + ": expected '<label> -- <label>' or '<label> -> <label>'");
        }
        RawEdge e;
        if (op == "--") {
            e.directed = false;
        } else if (op == "->") {
            e.directed = true;
        } else if (op == "<-") {
            e.directed = true;
            std::swap(a, b);
        } else {
            throw InputError(where + ": unknown edge mark '" + op + "'");
        }
        if (!parse_label(a, e.a) || !parse_label(b, e.b)) {
            throw InputError(where + ": labels must be non-negative integers");
        }
        if (e.a == e.b) throw InputError(where + ": self loop not allowed");
        e.lineno = lineno;
        raw.push_back(e);
        ids.emplace(e.a, 0);
        ids.emplace(e.b, 0);
    }
    if (raw.empty()) throw InputError(origin + ": no edges found");
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> seen;
    for (const RawEdge& e : raw) {
        auto key = std::minmax(e.a, e.b);
        auto [it, fresh] = seen.emplace(key, e.lineno);
        if (!fresh) {
            throw InputError(origin + ":" + std::to_string(e.lineno) + ": pair " +
                             std::to_string(key.first) + "," + std::to_string(key.second) +
                             " already has an edge at line " + std::to_string(it->second));
        }
    }
    VertexId next = 0;
    std::vector<std::uint64_t> labels;
    labels.reserve(ids.size());
    for (auto& [label, id] : ids) {
        id = next++;
        labels.push_back(label);
    }
    MixedGraph g(ids.size(), EdgeSet{}, std::move(labels));
    for (const RawEdge& e : raw) {
        VertexId a = ids[e.a];
        VertexId b = ids[e.b];
        g.add_edge(e.directed ? Edge::directed(a, b) : Edge::undirected(a, b));
    }
    return g;
}

MixedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return parse_edge_list(in, path);
}

void write_graph_file(const MixedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write graph file: " + path);
    out << format_edge_lines(g);
    if (!out) throw InputError("short write to graph file: " + path);
}

std::string format_edge_lines(const MixedGraph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        if (e.is_directed()) {
            out += std::to_string(g.label(e.tail)) + " -> " + std::to_string(g.label(e.head));
        } else {
            out += std::to_string(g.label(e.tail)) + " -- " + std::to_string(g.label(e.head));
        }
        out += '\n';
    }
    return out;
}

std::string format_edge_set(const MixedGraph& context, const EdgeSet& edges) {
    std::vector<Edge> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end(), [&](const Edge& x, const Edge& y) {
        auto key = [&](const Edge& e) {
            return std::make_pair(context.label(e.tail), context.label(e.head));
        };
        return key(x) < key(y);
    });
    std::string out = "{";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Edge& e = sorted[i];
        if (i) out += ", ";
        out += context.vname(e.tail);
        out += e.is_directed() ? "->" : "--";
        out += context.vname(e.head);
    }
    out += "}";
    return out;
}

std::string format_vertex_set(const MixedGraph& context, std::vector<VertexId> verts) {
    std::sort(verts.begin(), verts.end(),
              [&](VertexId a, VertexId b) { return context.label(a) < context.label(b); });
    std::string out = "{";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) out += ", ";
        out += context.vname(verts[i]);
    }
    out += "}";
    return out;
}

VertexId resolve_vertex_name(const MixedGraph& g, const std::string& name) {
    std::string digits = name;
    if (!digits.empty() && (digits[0] == 'v' || digits[0] == 'V')) digits.erase(0, 1);
    std::uint64_t label = 0;
    if (!parse_label(digits, label)) {
        throw InputError("cannot parse vertex name '" + name + "'");
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.label(v) == label) return v;
    }
    throw InputError("vertex '" + name + "' is not in the graph");
}

}  // namespace cold
