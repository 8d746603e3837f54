#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rauzy/oracle.hpp"

namespace rauzy {

// Path in a Rauzy graph: a start vertex and a chain of edge ids. An empty
// edge list is the zero-length path anchored at start_vertex.
struct GraphPath {
    int start_vertex = -1;
    std::vector<int> edges;
};

struct RauzyGraphReport {
    std::vector<int> in_special;   // vertices with in-degree > 1 (left-special)
    std::vector<int> out_special;  // vertices with out-degree > 1 (right-special)
    bool strongly_connected = false;
    bool is_cycle = false;
};

// Order-k Rauzy graph: vertices are the length-k factors, edges the
// length-(k+1) factors. Immutable after construction.
class RauzyGraph {
public:
    struct Edge {
        Word word;
        int tail = -1;
        int head = -1;
    };

    RauzyGraph(std::int64_t k, std::vector<Word> vertex_words, std::vector<Word> edge_words);

    std::int64_t order() const { return k_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Word& vertex_word(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<int>& out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& in_edges(int v) const { return in_.at(static_cast<std::size_t>(v)); }
    int vertex_id(std::string_view w) const;   // -1 when absent
    int edge_id(std::string_view w) const;     // -1 when absent

    const RauzyGraphReport& report() const { return report_; }

    GraphPath path_of_word(std::string_view w) const; // throws NotAFactorPath
    Word word_of_path(const GraphPath& p) const;      // exact inverse

    // Natural extensions inside the graph; require strongly connected non-cycle.
    GraphPath right_extension(GraphPath p) const;
    GraphPath left_extension(GraphPath p) const;

    // Front/back words of a path whose endpoints are special vertices: the
    // front word drops the first k letters iff the path starts at an
    // out-special (distributing) vertex; the back word drops the last k
    // letters iff the path ends at an in-special (collecting) vertex.
    Word front_word(const GraphPath& p) const;
    Word back_word(const GraphPath& p) const;

    std::string to_dot() const;

private:
    void check_path(const GraphPath& p) const;

    std::int64_t k_;
    std::vector<Word> vertices_; // sorted
    std::vector<Edge> edges_;    // sorted by word
    std::vector<std::vector<int>> out_, in_;
    RauzyGraphReport report_;
};

RauzyGraph build_rauzy_graph(FactorOracle& oracle, std::int64_t k);

} // namespace rauzy
