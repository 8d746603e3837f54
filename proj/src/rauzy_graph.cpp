#include "rauzy/rauzy_graph.hpp"

#include <algorithm>
#include <sstream>

namespace rauzy {

namespace {

int lookup(const std::vector<Word>& sorted, std::string_view w) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), w,
                               [](const Word& a, std::string_view b) { return a < b; });
    if (it == sorted.end() || std::string_view(*it) != w) return -1;
    return static_cast<int>(it - sorted.begin());
}

} // namespace

RauzyGraph::RauzyGraph(std::int64_t k, std::vector<Word> vertex_words,
                       std::vector<Word> edge_words)
    : k_(k), vertices_(std::move(vertex_words)) {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(edge_words.begin(), edge_words.end());
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    edges_.reserve(edge_words.size());
    for (auto& w : edge_words) {
        Edge e;
        e.tail = lookup(vertices_, std::string_view(w).substr(0, static_cast<std::size_t>(k_)));
        e.head = lookup(vertices_, std::string_view(w).substr(1));
        if (e.tail < 0 || e.head < 0)
            throw Error("edge word endpoints missing from vertex set: " + w);
        e.word = std::move(w);
        const int id = static_cast<int>(edges_.size());
        out_[static_cast<std::size_t>(e.tail)].push_back(id);
        in_[static_cast<std::size_t>(e.head)].push_back(id);
        edges_.push_back(std::move(e));
    }

    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (in_[v].size() > 1) report_.in_special.push_back(static_cast<int>(v));
        if (out_[v].size() > 1) report_.out_special.push_back(static_cast<int>(v));
    }

    // Strong connectivity by forward/backward reachability from vertex 0.
    const std::size_t n = vertices_.size();
    auto reach = [&](bool forward) {
        std::vector<bool> seen(n, false);
        if (n == 0) return seen;
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            const auto& es = forward ? out_[static_cast<std::size_t>(v)]
                                     : in_[static_cast<std::size_t>(v)];
            for (int e : es) {
                const int u = forward ? edges_[static_cast<std::size_t>(e)].head
                                      : edges_[static_cast<std::size_t>(e)].tail;
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    stack.push_back(u);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(true), bwd = reach(false);
    report_.strongly_connected =
        n > 0 && std::find(fwd.begin(), fwd.end(), false) == fwd.end() &&
        std::find(bwd.begin(), bwd.end(), false) == bwd.end();
    report_.is_cycle = report_.strongly_connected && edges_.size() == vertices_.size();
}

int RauzyGraph::vertex_id(std::string_view w) const { return lookup(vertices_, w); }

int RauzyGraph::edge_id(std::string_view w) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), w,
                               [](const Edge& a, std::string_view b) { return a.word < b; });
    if (it == edges_.end() || std::string_view(it->word) != w) return -1;
    return static_cast<int>(it - edges_.begin());
}

void RauzyGraph::check_path(const GraphPath& p) const {
    if (p.start_vertex < 0 || p.start_vertex >= static_cast<int>(vertices_.size()))
        throw InvalidPathError("path start vertex out of range");
    int at = p.start_vertex;
    for (int e : p.edges) {
        if (e < 0 || e >= static_cast<int>(edges_.size()))
            throw InvalidPathError("path edge out of range");
        if (edges_[static_cast<std::size_t>(e)].tail != at)
            throw InvalidPathError("path edges do not chain");
        at = edges_[static_cast<std::size_t>(e)].head;
    }
}

GraphPath RauzyGraph::path_of_word(std::string_view w) const {
    if (static_cast<std::int64_t>(w.size()) < k_)
        throw NotAFactorPathError("word shorter than the graph order");
    GraphPath p;
    p.start_vertex = vertex_id(w.substr(0, static_cast<std::size_t>(k_)));
    if (p.start_vertex < 0) throw NotAFactorPathError("start window is not a vertex");
    for (std::size_t i = 0; i + static_cast<std::size_t>(k_) + 1 <= w.size(); ++i) {
        const int e = edge_id(w.substr(i, static_cast<std::size_t>(k_) + 1));
        if (e < 0) throw NotAFactorPathError("window is not an edge: " +
                                             Word(w.substr(i, static_cast<std::size_t>(k_) + 1)));
        p.edges.push_back(e);
    }
    return p;
}

Word RauzyGraph::word_of_path(const GraphPath& p) const {
    check_path(p);
    Word w = vertices_[static_cast<std::size_t>(p.start_vertex)];
    for (int e : p.edges) w.push_back(edges_[static_cast<std::size_t>(e)].word.back());
    return w;
}

GraphPath RauzyGraph::right_extension(GraphPath p) const {
    check_path(p);
    if (!report_.strongly_connected || report_.is_cycle)
        throw GraphIsCycleError("natural extension needs a strongly connected non-cycle graph");
    int at = p.edges.empty() ? p.start_vertex
                             : edges_[static_cast<std::size_t>(p.edges.back())].head;
    while (out_[static_cast<std::size_t>(at)].size() == 1) {
        const int e = out_[static_cast<std::size_t>(at)].front();
        p.edges.push_back(e);
        at = edges_[static_cast<std::size_t>(e)].head;
    }
    return p;
}

GraphPath RauzyGraph::left_extension(GraphPath p) const {
    check_path(p);
    if (!report_.strongly_connected || report_.is_cycle)
        throw GraphIsCycleError("natural extension needs a strongly connected non-cycle graph");
    while (in_[static_cast<std::size_t>(p.start_vertex)].size() == 1) {
        const int e = in_[static_cast<std::size_t>(p.start_vertex)].front();
        p.edges.insert(p.edges.begin(), e);
        p.start_vertex = edges_[static_cast<std::size_t>(e)].tail;
    }
    return p;
}

Word RauzyGraph::front_word(const GraphPath& p) const {
    Word w = word_of_path(p);
    if (out_[static_cast<std::size_t>(p.start_vertex)].size() > 1)
        return w.substr(static_cast<std::size_t>(k_));
    return w;
}

Word RauzyGraph::back_word(const GraphPath& p) const {
    Word w = word_of_path(p);
    const int end = p.edges.empty() ? p.start_vertex
                                    : edges_[static_cast<std::size_t>(p.edges.back())].head;
    if (in_[static_cast<std::size_t>(end)].size() > 1)
        return w.substr(0, w.size() - static_cast<std::size_t>(k_));
    return w;
}

std::string RauzyGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph rauzy_k" << k_ << " {\n";
    os << "  rankdir=LR;\n";
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const bool lsp = in_[v].size() > 1, rsp = out_[v].size() > 1;
        os << "  v" << v << " [label=\"" << vertices_[v] << "\""
           << (lsp && rsp ? ", shape=doubleoctagon"
                          : lsp ? ", shape=box" : rsp ? ", shape=diamond" : "")
           << "];\n";
    }
    for (const auto& e : edges_)
        os << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.word.back()
           << "\"];\n";
    os << "}\n";
    return os.str();
}

RauzyGraph build_rauzy_graph(FactorOracle& oracle, std::int64_t k) {
    if (k < 1) throw Error("graph order must be positive");
    std::vector<Word> vs = oracle.factors(k);
    std::vector<Word> es = oracle.factors(k + 1);
    return RauzyGraph(k, std::move(vs), std::move(es));
}

} // namespace rauzy
