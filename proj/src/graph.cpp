#include "mcis/graph.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace mcis {

double WeightedGraph::total_weight() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.w;
    return s;
}

WeightedGraph load_graph(std::istream& in) {
    WeightedGraph g;
    std::string line;
    int line_no = 0;
    long m = -1, seen = 0;
    std::map<std::pair<int, int>, double> acc;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            line = line.substr(0, hash);
            std::istringstream cs(comment);
            std::string tag;
            if (cs >> tag && tag == "planted:") {
                int v;
                while (cs >> v) g.planted.push_back(v);
            }
        }
        std::istringstream ls(line);
        if (m < 0) {
            if (!(ls >> g.n >> m)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    m = -1;  // blank or comment-only line before the header
                    continue;
                }
                throw ParseError("expected header 'n m'", line_no);
            }
            if (g.n <= 0 || m < 0) throw ParseError("bad header values", line_no);
            continue;
        }
        int i, j;
        double w;
        if (!(ls >> i)) continue;  // blank line
        if (!(ls >> j >> w)) throw ParseError("expected edge 'i j w'", line_no);
        if (i < 0 || i >= g.n || j < 0 || j >= g.n)
            throw ParseError("vertex index out of range", line_no);
        if (i == j) throw SelfLoop("self-loop at vertex " + std::to_string(i));
        if (w < 0.0) throw NegativeWeight("negative weight on edge " +
                                          std::to_string(i) + "-" + std::to_string(j));
        if (j < i) std::swap(i, j);
        acc[{i, j}] += w;
        if (++seen > m) throw ParseError("more edge lines than declared", line_no);
    }
    if (m < 0) throw ParseError("missing header", line_no);
    if (seen < m) throw ParseError("fewer edge lines than declared", line_no);
    if (acc.empty()) throw ParseError("graph has no edges", line_no);
    double total = 0.0;
    for (const auto& [e, w] : acc) total += w;
    if (total <= 0.0) throw ParseError("total edge weight is zero", line_no);
    g.scale = total;
    for (const auto& [e, w] : acc) g.edges.push_back({e.first, e.second, w / total});
    for (int v : g.planted)
        if (v < 0 || v >= g.n) throw ParseError("planted vertex out of range", line_no);
    return g;
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return load_graph(in);
}

void save_graph(const WeightedGraph& g, std::ostream& out) {
    out.precision(17);
    out << g.n << ' ' << g.edges.size() << '\n';
    if (!g.planted.empty()) {
        out << "# planted:";
        for (int v : g.planted) out << ' ' << v;
        out << '\n';
    }
    for (const auto& e : g.edges) out << e.i << ' ' << e.j << ' ' << e.w << '\n';
}

}  // namespace mcis
