#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcis/errors.hpp"

namespace mcis {

struct Edge {
    int i = 0, j = 0;
    double w = 0.0;
};

/// A weighted graph with weights normalized to sum 1 on load. Duplicate edge
/// lines merge by summing. An optional "# planted: i1 i2 ..." comment line
/// declares a planted independent set (used to seed the SDP warm start and
/// the pipeline's exit criterion).
struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;
    double scale = 1.0;        // raw weight total before normalization
    std::vector<int> planted;  // empty when none declared

    double total_weight() const;
};

/// Parses the text format: line 1 "n m", then m lines "i j w" (0-based,
/// nonnegative weights); '#' begins a comment. Throws ParseError (with line
/// number), NegativeWeight, or SelfLoop.
WeightedGraph load_graph(std::istream& in);
WeightedGraph load_graph_file(const std::string& path);

void save_graph(const WeightedGraph& g, std::ostream& out);

}  // namespace mcis
