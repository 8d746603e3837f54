#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rauzy/scheme.hpp"

namespace rauzy {

// Scheme stripped of words: numbered edges with endpoints, vertices labeled
// canonically by first appearance in edge-number order. Roles are derivable
// from degrees. Value type with structural equality.
struct LightScheme {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // (tail, head), index = number-1

    bool operator==(const LightScheme&) const = default;
    bool operator<(const LightScheme& o) const {
        return std::tie(vertex_count, edges) < std::tie(o.vertex_count, o.edges);
    }

    std::vector<int> support_edges() const; // collecting -> distributing numbers
    std::string to_string() const;
};

LightScheme light_of(const Scheme& s);

// The deterministic evolution method: lowest-numbered support edge. Works on
// the lightened scheme only, never on words.
int choose_support(const LightScheme& light);

// Words-free image of an elementary evolution: given the admissibility
// verdicts, the evolved structure and its renumbering are functions of the
// lightened scheme alone. evolve() must agree with this on every step.
struct LightEvolution {
    int support = 0;
    LightScheme result;
    std::map<int, int> surviving;                 // old number -> new number
    std::map<std::pair<int, int>, int> created;   // first composite (e,f) -> new number
};

LightEvolution evolve_light(const LightScheme& light,
                            const std::vector<std::pair<int, int>>& admitted);

struct EvolveOutcome {
    Scheme scheme;
    std::vector<std::pair<int, int>> rejected; // (in-edge, out-edge) numbers, sorted
    int composites_admitted = 0;
};

// Elementary evolution at a support edge: the edge is destroyed and replaced
// by the admissible one-edge-back/one-edge-forward composites around it;
// (1,1) vertices are smoothed away and vertex windows slide to the true
// branch points. Renumbering: surviving edges first in old relative order,
// then new edges by the (e, f) key of their first composite constituent.
EvolveOutcome evolve(const Scheme& s, int support_number, FactorOracle& oracle);

struct ProtocolEntry {
    LightScheme light;
    int support = 0;
    std::vector<std::pair<int, int>> rejected;

    bool operator==(const ProtocolEntry&) const = default;
    bool operator<(const ProtocolEntry& o) const {
        return std::tie(light, support, rejected) < std::tie(o.light, o.support, o.rejected);
    }
};

struct PeriodDetection {
    std::int64_t preperiod = 0;
    std::int64_t period = 0;
    std::int64_t repetitions = 0; // full periods observed after the preperiod
};

struct Protocol {
    std::string source;
    std::int64_t k0 = 0;
    std::int64_t clean_order = 0;
    std::int64_t steps_requested = 0;
    std::vector<ProtocolEntry> entries;
    std::vector<std::int64_t> scales; // scale of the scheme each entry describes
    std::optional<std::string> abort_reason;
    std::optional<PeriodDetection> detection;
};

// Smallest period p, then smallest preperiod q, with entries[i] == entries[i+p]
// for all q <= i <= T-1-p and at least min_repetitions * p entries after q.
std::optional<PeriodDetection> detect_period(const std::vector<ProtocolEntry>& entries,
                                             std::int64_t min_repetitions = 3);

// Builds the initial scheme at the clean order >= k0 and iterates the
// deterministic evolution. Horizon or degeneracy aborts record a reason and
// return the partial protocol.
Protocol run_protocol(FactorOracle& oracle, std::int64_t k0, std::int64_t steps,
                      std::int64_t min_repetitions = 3);

// Test words of order k: psi(phi^k(a)) for every letter a and psi(phi^k(ab))
// for every adjacent pair ab of the base word phi^inf(seed). The oracle must
// range over the base purely-morphic word.
std::vector<Word> test_words(const Morphism& phi, const Morphism* coding, std::int64_t k,
                             FactorOracle& base_oracle);

struct RiggingPath {
    std::vector<int> edges;
    bool maximal = false;

    bool operator==(const RiggingPath&) const = default;
};

struct Rigging {
    std::int64_t order = 0;
    std::vector<Word> words;                  // test words, sorted
    std::vector<std::vector<RiggingPath>> sets; // S(q_i) per test word
    std::int64_t size = 0;                    // max path length in edges

    bool operator==(const Rigging&) const = default;
};

// S(q) for each test word q: all symmetric paths whose front words are
// factors of q, as edge-number tuples with subpath-maximal elements marked.
Rigging rigging(const Scheme& s, const std::vector<Word>& words, std::int64_t path_cap = 64);

} // namespace rauzy
