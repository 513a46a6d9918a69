#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cold/essential.hpp"
#include "cold/graph.hpp"

namespace cold::fixtures {

// One frozen byte-exact check: a rendered output pinned at authoring time
// next to what the library produces now.
struct Fixture {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass() const { return expected == actual; }
};

// The two reference graphs the fixtures run on. Labels are 1-based so the
// rendered names match the data files in data/.
MixedGraph chain_graph();
MixedGraph two_triangle_graph();

// Rendering of an intervention outcome, shared with the CLI so the bytes
// compared here are the bytes users see.
std::string render_intervention(const MixedGraph& g, const InterventionOutcome& out);

// Computes every fixture.
std::vector<Fixture> run_all();

// One line per fixture plus a diff for each failure; returns the failure
// count.
int report(std::ostream& out);

}  // namespace cold::fixtures
