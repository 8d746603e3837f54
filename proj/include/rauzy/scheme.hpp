#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rauzy/oracle.hpp"
#include "rauzy/rauzy_graph.hpp"

namespace rauzy {

enum class VertexRole { Collecting, Distributing };

// Provenance of an edge of an evolved scheme, used for canonical renumbering:
// either an edge of the previous scheme (by number) or a composite created
// from the in-edge/out-edge pair (e, f) around the evolved support edge.
struct Constituent {
    enum class Kind { Old, Composite } kind = Kind::Old;
    int old_number = 0;
    int comp_e = 0, comp_f = 0;

    static Constituent old_edge(int n) { return {Kind::Old, n, 0, 0}; }
    static Constituent composite(int e, int f) { return {Kind::Composite, 0, e, f}; }
    bool operator==(const Constituent&) const = default;
};

// Graph-with-words. Each vertex is collecting (in > 1, out = 1) or
// distributing (in = 1, out > 1) and carries an overlap length: consecutive
// edge words along any walk overlap by exactly that many letters, so every
// vertex has a well-defined window word (common suffix of its in-words and
// prefix of its out-words). Front and back words are derived from the spelled
// words via natural extensions. Edges are numbered 1..E.
class Scheme {
public:
    struct Vertex {
        VertexRole role = VertexRole::Collecting;
        std::int64_t overlap = 0;
    };
    struct Edge {
        int number = 0;
        int tail = -1;
        int head = -1;
        Word word;
        std::vector<Constituent> origin; // provenance within the previous scheme
    };

    using Path = std::vector<int>; // edge numbers, chained head-to-tail

    Scheme(std::vector<Vertex> vertices, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Vertex& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    const Edge& edge(int number) const; // 1-based
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& in_edges(int v) const { return in_.at(static_cast<std::size_t>(v)); }
    Word window(int v) const;
    bool strongly_connected() const { return strongly_connected_; }

    const Word& front_word(int number) const;
    const Word& back_word(int number) const;
    std::int64_t front_word_length(int number) const;
    std::int64_t back_word_length(int number) const;

    bool chains(const Path& p) const;
    bool is_symmetric(const Path& p) const;
    Word glued_word(const Path& p) const;       // spelled word of the walk
    std::int64_t glued_length(const Path& p) const;
    std::pair<Word, Word> path_words(const Path& p) const; // (F, B)

    Path right_extension(Path p) const; // minimal super-path ending at a distributing vertex
    Path left_extension(Path p) const;  // minimal super-path starting at a collecting vertex

    std::vector<int> support_edges() const; // collecting -> distributing, ascending numbers
    std::int64_t scale() const;             // min front-word length over support edges

    // Symmetric paths with at most max_edges edges, lexicographic by number sequence.
    std::vector<Path> symmetric_paths(int max_edges) const;

    bool admissible(const Path& symmetric_path, FactorOracle& oracle) const;

    std::string to_dot() const;

    // Test hook: overrides the derived front/back word of an edge so the
    // validator can be exercised against corrupted presentations.
    void debug_override_front_word(int number, Word w) const;
    void debug_override_back_word(int number, Word w) const;

private:
    friend class SchemeMutator;
    void build_adjacency();
    void check_structure() const;
    int path_end_vertex(const Path& p) const;

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_; // edges_[i].number == i+1
    std::vector<std::vector<int>> out_, in_;
    bool strongly_connected_ = false;
    mutable std::vector<std::optional<Word>> fw_cache_, bw_cache_;
};

// Validation of the seven scheme properties. Properties 3, 4 are checked over all symmetric
// paths with at most path_bound edges; properties 6, 7 over factors up to
// factor_bound letters. char_budget caps the total character work of the
// expensive comparisons; exhausted work is reported as Unverified, never Pass.
struct PropertyResult {
    enum class Status { Pass, Fail, Unverified } status = Status::Pass;
    std::string detail;
    std::int64_t checked = 0;
};

struct ValidationReport {
    std::int64_t path_bound = 0;
    std::int64_t factor_bound = 0;
    PropertyResult wellformed; // graph-with-words discipline + window coherence
    std::vector<PropertyResult> properties; // indices 0..6 = scheme properties 1..7
    bool ok() const;
    std::string summary() const;
};

ValidationReport validate_scheme(const Scheme& s, FactorOracle& oracle,
                                 std::int64_t path_bound = 6, std::int64_t factor_bound = 20,
                                 std::int64_t char_budget = (1LL << 31));

// Smallest k >= k_min with no bispecial factor of length exactly k and a
// non-cycle G_k. search_cap bounds the scan.
std::int64_t find_clean_order(FactorOracle& oracle, std::int64_t k_min,
                              std::int64_t search_cap = 512);

// Scheme of G_k: vertices are the special vertices of G_k, edges its simple
// chains; words come from the natural extensions in G_k. Edge numbering is
// canonical: sorted by (tail window, head window, spelled word).
Scheme build_scheme_from_rauzy(FactorOracle& oracle, std::int64_t k);

} // namespace rauzy
