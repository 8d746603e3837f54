#include "rauzy/scheme.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rauzy/analysis.hpp"

namespace rauzy {

Scheme::Scheme(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.number < b.number; });
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].number != static_cast<int>(i) + 1)
            throw Error("edge numbers must be a bijection onto 1..E");
    build_adjacency();
    check_structure();
    fw_cache_.assign(edges_.size(), std::nullopt);
    bw_cache_.assign(edges_.size(), std::nullopt);
}

void Scheme::build_adjacency() {
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (const auto& e : edges_) {
        out_.at(static_cast<std::size_t>(e.tail)).push_back(e.number);
        in_.at(static_cast<std::size_t>(e.head)).push_back(e.number);
    }
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());

    const std::size_t n = vertices_.size();
    auto reach = [&](bool forward) {
        std::vector<bool> seen(n, false);
        if (n == 0) return seen;
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int num : (forward ? out_ : in_)[static_cast<std::size_t>(v)]) {
                const Edge& e = edge(num);
                const int u = forward ? e.head : e.tail;
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    stack.push_back(u);
                }
            }
        }
        return seen;
    };
    const auto f = reach(true), b = reach(false);
    strongly_connected_ = n > 0 &&
        std::find(f.begin(), f.end(), false) == f.end() &&
        std::find(b.begin(), b.end(), false) == b.end();
}

void Scheme::check_structure() const {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const std::size_t din = in_[v].size(), dout = out_[v].size();
        const bool col = din > 1 && dout == 1;
        const bool dis = din == 1 && dout > 1;
        if (!col && !dis)
            throw Error("vertex " + std::to_string(v) + " has degrees (" +
                        std::to_string(din) + "," + std::to_string(dout) +
                        "): not a graph-with-words vertex");
        if ((vertices_[v].role == VertexRole::Collecting) != col)
            throw Error("vertex role inconsistent with degrees");
        if (vertices_[v].overlap < 1) throw Error("vertex overlap must be >= 1");
    }
    for (const auto& e : edges_) {
        if (static_cast<std::int64_t>(e.word.size()) <
            vertices_[static_cast<std::size_t>(e.tail)].overlap)
            throw Error("edge word shorter than tail window");
        if (static_cast<std::int64_t>(e.word.size()) <
            vertices_[static_cast<std::size_t>(e.head)].overlap)
            throw Error("edge word shorter than head window");
    }
}

const Scheme::Edge& Scheme::edge(int number) const {
    if (number < 1 || number > static_cast<int>(edges_.size()))
        throw Error("edge number out of range: " + std::to_string(number));
    return edges_[static_cast<std::size_t>(number - 1)];
}

Word Scheme::window(int v) const {
    const auto& outs = out_.at(static_cast<std::size_t>(v));
    const auto o = static_cast<std::size_t>(vertices_[static_cast<std::size_t>(v)].overlap);
    if (!outs.empty()) return edge(outs.front()).word.substr(0, o);
    const auto& ins = in_.at(static_cast<std::size_t>(v));
    const Word& w = edge(ins.front()).word;
    return w.substr(w.size() - o);
}

int Scheme::path_end_vertex(const Path& p) const {
    if (p.empty()) throw InvalidPathError("empty path");
    int at = edge(p.front()).tail;
    for (int num : p) {
        const Edge& e = edge(num);
        if (e.tail != at) throw InvalidPathError("path edges do not chain");
        at = e.head;
    }
    return at;
}

bool Scheme::chains(const Path& p) const {
    try {
        path_end_vertex(p);
        return true;
    } catch (const InvalidPathError&) {
        return false;
    }
}

bool Scheme::is_symmetric(const Path& p) const {
    const int end = path_end_vertex(p);
    const int start = edge(p.front()).tail;
    return vertices_[static_cast<std::size_t>(start)].role == VertexRole::Collecting &&
           vertices_[static_cast<std::size_t>(end)].role == VertexRole::Distributing;
}

Word Scheme::glued_word(const Path& p) const {
    path_end_vertex(p);
    Word w = edge(p.front()).word;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Edge& e = edge(p[i]);
        const auto o = static_cast<std::size_t>(
            vertices_[static_cast<std::size_t>(e.tail)].overlap);
        w.append(e.word, o, Word::npos);
    }
    return w;
}

std::int64_t Scheme::glued_length(const Path& p) const {
    path_end_vertex(p);
    std::int64_t len = static_cast<std::int64_t>(edge(p.front()).word.size());
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Edge& e = edge(p[i]);
        len += static_cast<std::int64_t>(e.word.size()) -
               vertices_[static_cast<std::size_t>(e.tail)].overlap;
    }
    return len;
}

Scheme::Path Scheme::right_extension(Path p) const {
    int at = path_end_vertex(p);
    std::size_t guard = 0;
    while (vertices_[static_cast<std::size_t>(at)].role != VertexRole::Distributing) {
        const auto& outs = out_[static_cast<std::size_t>(at)];
        if (outs.size() != 1) throw Error("collecting vertex without unique out-edge");
        p.push_back(outs.front());
        at = edge(outs.front()).head;
        if (++guard > edges_.size() + 1)
            throw Error("right extension does not terminate (graph malformed)");
    }
    return p;
}

Scheme::Path Scheme::left_extension(Path p) const {
    path_end_vertex(p);
    int at = edge(p.front()).tail;
    std::size_t guard = 0;
    while (vertices_[static_cast<std::size_t>(at)].role != VertexRole::Collecting) {
        const auto& ins = in_[static_cast<std::size_t>(at)];
        if (ins.size() != 1) throw Error("distributing vertex without unique in-edge");
        p.insert(p.begin(), ins.front());
        at = edge(ins.front()).tail;
        if (++guard > edges_.size() + 1)
            throw Error("left extension does not terminate (graph malformed)");
    }
    return p;
}

const Word& Scheme::front_word(int number) const {
    auto& slot = fw_cache_.at(static_cast<std::size_t>(number - 1));
    if (!slot) {
        const Path ext = right_extension({number});
        Word w = glued_word(ext);
        const Vertex& tail = vertices_[static_cast<std::size_t>(edge(number).tail)];
        if (tail.role == VertexRole::Distributing)
            w.erase(0, static_cast<std::size_t>(tail.overlap));
        slot = std::move(w);
    }
    return *slot;
}

const Word& Scheme::back_word(int number) const {
    auto& slot = bw_cache_.at(static_cast<std::size_t>(number - 1));
    if (!slot) {
        const Path ext = left_extension({number});
        Word w = glued_word(ext);
        const Vertex& head = vertices_[static_cast<std::size_t>(edge(number).head)];
        if (head.role == VertexRole::Collecting)
            w.erase(w.size() - static_cast<std::size_t>(head.overlap));
        slot = std::move(w);
    }
    return *slot;
}

std::int64_t Scheme::front_word_length(int number) const {
    const Path ext = right_extension({number});
    std::int64_t len = glued_length(ext);
    const Vertex& tail = vertices_[static_cast<std::size_t>(edge(number).tail)];
    if (tail.role == VertexRole::Distributing) len -= tail.overlap;
    return len;
}

std::int64_t Scheme::back_word_length(int number) const {
    const Path ext = left_extension({number});
    std::int64_t len = glued_length(ext);
    const Vertex& head = vertices_[static_cast<std::size_t>(edge(number).head)];
    if (head.role == VertexRole::Collecting) len -= head.overlap;
    return len;
}

std::pair<Word, Word> Scheme::path_words(const Path& p) const {
    path_end_vertex(p);
    Word f, b;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Edge& e = edge(p[i]);
        const bool front_gen =
            i == 0 ||
            vertices_[static_cast<std::size_t>(e.tail)].role == VertexRole::Distributing;
        if (front_gen) f += front_word(p[i]);
        const bool back_gen =
            i == p.size() - 1 ||
            vertices_[static_cast<std::size_t>(e.head)].role == VertexRole::Collecting;
        if (back_gen) b += back_word(p[i]);
    }
    return {std::move(f), std::move(b)};
}

std::vector<int> Scheme::support_edges() const {
    std::vector<int> out;
    for (const auto& e : edges_) {
        if (vertices_[static_cast<std::size_t>(e.tail)].role == VertexRole::Collecting &&
            vertices_[static_cast<std::size_t>(e.head)].role == VertexRole::Distributing)
            out.push_back(e.number);
    }
    if (out.empty())
        throw NoSupportEdgeError("no collecting->distributing edge: malformed scheme");
    return out;
}

std::int64_t Scheme::scale() const {
    std::int64_t best = -1;
    for (int num : support_edges()) {
        const std::int64_t len = front_word_length(num);
        if (best < 0 || len < best) best = len;
    }
    return best;
}

std::vector<Scheme::Path> Scheme::symmetric_paths(int max_edges) const {
    std::vector<Path> result;
    Path cur;
    auto dfs = [&](auto&& self, int at) -> void {
        if (!cur.empty() &&
            vertices_[static_cast<std::size_t>(at)].role == VertexRole::Distributing)
            result.push_back(cur);
        if (static_cast<int>(cur.size()) >= max_edges) return;
        for (int num : out_[static_cast<std::size_t>(at)]) {
            cur.push_back(num);
            self(self, edge(num).head);
            cur.pop_back();
        }
    };
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].role == VertexRole::Collecting) dfs(dfs, static_cast<int>(v));
    std::sort(result.begin(), result.end());
    return result;
}

bool Scheme::admissible(const Path& p, FactorOracle& oracle) const {
    if (!is_symmetric(p)) throw InvalidPathError("admissibility is defined for symmetric paths");
    return oracle.is_factor(path_words(p).first);
}

std::string Scheme::to_dot() const {
    std::ostringstream os;
    os << "digraph scheme {\n  rankdir=LR;\n";
    auto trunc = [](const Word& w) {
        return w.size() <= 24 ? w : w.substr(0, 21) + "...";
    };
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        os << "  v" << v << " [label=\"" << trunc(window(static_cast<int>(v)))
           << "\", shape=" << (vertices_[v].role == VertexRole::Collecting ? "box" : "diamond")
           << "];\n";
    for (const auto& e : edges_)
        os << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.number << ":"
           << trunc(front_word(e.number)) << "/" << trunc(back_word(e.number)) << "\"];\n";
    os << "}\n";
    return os.str();
}

void Scheme::debug_override_front_word(int number, Word w) const {
    fw_cache_.at(static_cast<std::size_t>(number - 1)) = std::move(w);
}

void Scheme::debug_override_back_word(int number, Word w) const {
    bw_cache_.at(static_cast<std::size_t>(number - 1)) = std::move(w);
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
    if (wellformed.status == PropertyResult::Status::Fail) return false;
    for (const auto& p : properties)
        if (p.status == PropertyResult::Status::Fail) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    auto word = [](PropertyResult::Status s) {
        switch (s) {
            case PropertyResult::Status::Pass: return "pass";
            case PropertyResult::Status::Fail: return "FAIL";
            default: return "unverified";
        }
    };
    os << "wellformed: " << word(wellformed.status);
    if (!wellformed.detail.empty()) os << " (" << wellformed.detail << ")";
    os << "\n";
    for (std::size_t i = 0; i < properties.size(); ++i) {
        os << "property " << (i + 1) << ": " << word(properties[i].status);
        if (!properties[i].detail.empty()) os << " (" << properties[i].detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

std::int64_t count_subpaths(const Scheme::Path& needle, const Scheme::Path& hay) {
    if (needle.empty() || needle.size() > hay.size()) return 0;
    std::int64_t cnt = 0;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i)))
            ++cnt;
    return cnt;
}

} // namespace

ValidationReport validate_scheme(const Scheme& s, FactorOracle& oracle,
                                 std::int64_t path_bound, std::int64_t factor_bound,
                                 std::int64_t char_budget) {
    ValidationReport rep;
    rep.path_bound = path_bound;
    rep.factor_bound = factor_bound;
    rep.properties.resize(7);
    std::int64_t budget = char_budget;
    auto spend = [&](std::int64_t cost) {
        budget -= cost;
        return budget >= 0;
    };

    // Structural discipline and window coherence.
    {
        auto& r = rep.wellformed;
        try {
            for (std::size_t v = 0; v < s.vertex_count(); ++v) {
                const auto& vx = s.vertex(static_cast<int>(v));
                const auto o = static_cast<std::size_t>(vx.overlap);
                const Word win = s.window(static_cast<int>(v));
                for (int num : s.in_edges(static_cast<int>(v))) {
                    const Word& w = s.edge(num).word;
                    if (w.size() < o || Word(w.end() - static_cast<std::ptrdiff_t>(o), w.end()) != win) {
                        r.status = PropertyResult::Status::Fail;
                        r.detail = "in-word of edge " + std::to_string(num) +
                                   " does not end with the vertex window";
                        break;
                    }
                }
                for (int num : s.out_edges(static_cast<int>(v))) {
                    const Word& w = s.edge(num).word;
                    if (w.size() < o || w.compare(0, o, win) != 0) {
                        r.status = PropertyResult::Status::Fail;
                        r.detail = "out-word of edge " + std::to_string(num) +
                                   " does not start with the vertex window";
                        break;
                    }
                }
                if (r.status == PropertyResult::Status::Fail) break;
            }
        } catch (const Error& e) {
            r.status = PropertyResult::Status::Fail;
            r.detail = e.what();
        }
    }

    // Property 1: strongly connected, more than one edge.
    {
        auto& r = rep.properties[0];
        if (!s.strongly_connected()) {
            r.status = PropertyResult::Status::Fail;
            r.detail = "not strongly connected";
        } else if (s.edge_count() <= 1) {
            r.status = PropertyResult::Status::Fail;
            r.detail = "only one edge";
        }
    }

    // Property 2: distinct branch letters.
    {
        auto& r = rep.properties[1];
        for (std::size_t v = 0; v < s.vertex_count() && r.status == PropertyResult::Status::Pass; ++v) {
            const auto& vx = s.vertex(static_cast<int>(v));
            if (vx.role == VertexRole::Distributing) {
                std::set<Letter> first;
                for (int num : s.out_edges(static_cast<int>(v))) {
                    const Word& f = s.front_word(num);
                    if (f.empty() || !first.insert(f.front()).second) {
                        r.status = PropertyResult::Status::Fail;
                        r.detail = "front words out of vertex " + std::to_string(v) +
                                   " do not have pairwise distinct first letters";
                        break;
                    }
                }
            } else {
                std::set<Letter> last;
                for (int num : s.in_edges(static_cast<int>(v))) {
                    const Word& b = s.back_word(num);
                    if (b.empty() || !last.insert(b.back()).second) {
                        r.status = PropertyResult::Status::Fail;
                        r.detail = "back words into vertex " + std::to_string(v) +
                                   " do not have pairwise distinct last letters";
                        break;
                    }
                }
            }
        }
    }

    const auto sym = s.symmetric_paths(static_cast<int>(path_bound));

    // Property 3: F = B on symmetric paths.
    {
        auto& r = rep.properties[2];
        for (const auto& p : sym) {
            const auto [f, b] = s.path_words(p);
            ++r.checked;
            if (!spend(static_cast<std::int64_t>(f.size()))) {
                r.status = PropertyResult::Status::Unverified;
                r.detail = "budget exhausted after " + std::to_string(r.checked) + " paths";
                break;
            }
            if (f != b) {
                r.status = PropertyResult::Status::Fail;
                std::ostringstream d;
                d << "F != B on path [";
                for (std::size_t i = 0; i < p.size(); ++i) d << (i ? " " : "") << p[i];
                d << "]";
                r.detail = d.str();
                break;
            }
        }
    }

    // Property 4: containment transfer F(s1) <=_m F(s2) => s1 <=_m s2.
    {
        auto& r = rep.properties[3];
        std::vector<Word> fwords;
        fwords.reserve(sym.size());
        for (const auto& p : sym) fwords.push_back(s.path_words(p).first);
        for (std::size_t i = 0; i < sym.size() && r.status == PropertyResult::Status::Pass; ++i) {
            for (std::size_t j = 0; j < sym.size(); ++j) {
                if (fwords[i].size() > fwords[j].size()) continue;
                if (!spend(static_cast<std::int64_t>(fwords[j].size()))) {
                    r.status = PropertyResult::Status::Unverified;
                    r.detail = "budget exhausted after " + std::to_string(r.checked) + " pairs";
                    break;
                }
                const std::int64_t occ_w = count_occurrences(fwords[j], fwords[i]);
                if (occ_w == 0) continue;
                ++r.checked;
                const std::int64_t occ_p = count_subpaths(sym[i], sym[j]);
                if (occ_p < occ_w) {
                    r.status = PropertyResult::Status::Fail;
                    r.detail = "word occurs " + std::to_string(occ_w) + "x but path only " +
                               std::to_string(occ_p) + "x";
                    break;
                }
            }
        }
    }

    // Property 5: all words written on edges are factors of W.
    {
        auto& r = rep.properties[4];
        for (const auto& e : s.edges()) {
            const Word* words[3] = {&e.word, &s.front_word(e.number), &s.back_word(e.number)};
            for (const Word* w : words) {
                if (!spend(static_cast<std::int64_t>(w->size()) * oracle.safety_factor())) {
                    r.status = PropertyResult::Status::Unverified;
                    r.detail = "budget exhausted after " + std::to_string(r.checked) + " words";
                    break;
                }
                ++r.checked;
                Ternary t = oracle.membership(*w);
                if (t == Ternary::No) {
                    r.status = PropertyResult::Status::Fail;
                    r.detail = "edge " + std::to_string(e.number) + " carries a non-factor";
                    break;
                }
                if (t == Ternary::Unknown && r.status == PropertyResult::Status::Pass) {
                    r.status = PropertyResult::Status::Unverified;
                    r.detail = "membership undecided for edge " + std::to_string(e.number);
                }
            }
            if (r.status == PropertyResult::Status::Fail) break;
        }
    }

    // Cached admissibility of the enumerated symmetric paths (Unknown counts
    // as admissible: that only strengthens the universal checks below).
    std::vector<Word> sym_f(sym.size());
    std::vector<bool> sym_adm(sym.size(), true);
    for (std::size_t i = 0; i < sym.size(); ++i) {
        sym_f[i] = s.path_words(sym[i]).first;
        if (spend(static_cast<std::int64_t>(sym_f[i].size()) * oracle.safety_factor()))
            sym_adm[i] = oracle.membership(sym_f[i]) != Ternary::No;
    }

    // Property 6: every factor up to factor_bound appears in some symmetric
    // path word. A recurrence certificate short-circuits the search: when the
    // scale exceeds the buffer recurrence exponent P2(m), the support word
    // already contains every length-m factor.
    {
        auto& r = rep.properties[5];
        std::int64_t certified_up_to = 0;
        try {
            const std::int64_t sc = s.scale();
            const RecurrenceProfile rp = recurrence_exponent(
                oracle, std::min<std::int64_t>(factor_bound, 64));
            for (std::int64_t m = 1; m <= static_cast<std::int64_t>(rp.values.size()); ++m) {
                const auto& val = rp.values[static_cast<std::size_t>(m - 1)];
                if (val && *val <= sc && certified_up_to == m - 1) certified_up_to = m;
            }
        } catch (const Error&) {
            certified_up_to = 0;
        }
        // Existence within the bounded path set can only be confirmed, never
        // refuted: factors not located stay Unverified.
        std::int64_t misses = 0;
        Word miss_example;
        for (std::int64_t m = 1; m <= factor_bound; ++m) {
            if (m <= certified_up_to) { ++r.checked; continue; }
            std::vector<Word> fs;
            try {
                fs = oracle.factors(m);
            } catch (const HorizonExceededError&) {
                ++misses;
                continue;
            }
            for (const auto& u : fs) {
                bool found = false;
                for (std::size_t i = 0; i < sym.size() && !found; ++i) {
                    if (!spend(static_cast<std::int64_t>(sym_f[i].size()))) break;
                    found = find_kmp(sym_f[i], u) != std::string_view::npos;
                }
                ++r.checked;
                if (!found) {
                    ++misses;
                    if (miss_example.empty()) miss_example = u;
                }
            }
        }
        if (misses > 0) {
            r.status = PropertyResult::Status::Unverified;
            r.detail = std::to_string(misses) + " factors beyond bounded reach";
            if (!miss_example.empty()) r.detail += " (first: \"" + miss_example + "\")";
        }
    }

    // Property 7: for each edge, a pinning word u_s forcing every admissible
    // symmetric path containing it through that edge. Absence within the
    // bound is unverified, not failed.
    {
        auto& r = rep.properties[6];
        std::vector<int> unpinned;
        for (const auto& e : s.edges()) {
            bool pinned = false;
            for (std::int64_t m = 1; m <= factor_bound && !pinned; ++m) {
                std::vector<Word> fs;
                try {
                    fs = oracle.factors(m);
                } catch (const HorizonExceededError&) {
                    break;
                }
                for (const auto& u : fs) {
                    bool all_through = true, any = false;
                    for (std::size_t i = 0; i < sym.size(); ++i) {
                        if (!sym_adm[i]) continue;
                        if (!spend(static_cast<std::int64_t>(sym_f[i].size()))) { all_through = false; break; }
                        if (find_kmp(sym_f[i], u) == std::string_view::npos) continue;
                        any = true;
                        if (std::find(sym[i].begin(), sym[i].end(), e.number) == sym[i].end()) {
                            all_through = false;
                            break;
                        }
                    }
                    if (any && all_through) { pinned = true; break; }
                }
            }
            ++r.checked;
            if (!pinned) unpinned.push_back(e.number);
        }
        if (!unpinned.empty()) {
            r.status = PropertyResult::Status::Unverified;
            std::ostringstream d;
            d << "no pinning word within bound for edges:";
            for (int n : unpinned) d << " " << n;
            r.detail = d.str();
        }
    }

    return rep;
}

// ---------------------------------------------------------------------------
// Construction from the Rauzy graph

std::int64_t find_clean_order(FactorOracle& oracle, std::int64_t k_min,
                              std::int64_t search_cap) {
    for (std::int64_t k = std::max<std::int64_t>(1, k_min); k <= search_cap; ++k) {
        const auto rep = special_factors(oracle, k);
        if (!rep.bispecial.empty()) continue;
        if (oracle.factors(k).size() == oracle.factors(k + 1).size()) continue; // G_k is a cycle
        return k;
    }
    throw HorizonExceededError("no clean order found up to k=" + std::to_string(search_cap));
}

Scheme build_scheme_from_rauzy(FactorOracle& oracle, std::int64_t k) {
    const auto sf = special_factors(oracle, k);
    if (!sf.bispecial.empty()) throw BispecialAtOrderError(k);

    const RauzyGraph g = build_rauzy_graph(oracle, k);
    if (g.report().is_cycle)
        throw GraphIsCycleError("G_" + std::to_string(k) + " is a cycle");
    if (!g.report().strongly_connected)
        throw Error("G_" + std::to_string(k) + " is not strongly connected");

    // Scheme vertices = special vertices of G_k.
    std::map<int, int> vid; // G vertex -> scheme vertex
    std::vector<Scheme::Vertex> vertices;
    std::vector<int> gvert;
    auto add_vertex = [&](int gv, VertexRole role) {
        vid[gv] = static_cast<int>(vertices.size());
        vertices.push_back({role, k});
        gvert.push_back(gv);
    };
    for (int gv : g.report().in_special) add_vertex(gv, VertexRole::Collecting);
    for (int gv : g.report().out_special) add_vertex(gv, VertexRole::Distributing);
    if (vertices.empty())
        throw GraphIsCycleError("G_" + std::to_string(k) + " has no special vertices");

    // Edges = simple chains between special vertices.
    struct RawEdge {
        int tail, head;
        Word word;
        Word tail_win, head_win;
    };
    std::vector<RawEdge> raw;
    for (std::size_t i = 0; i < gvert.size(); ++i) {
        const int s = gvert[i];
        for (int e0 : g.out_edges(s)) {
            GraphPath chain{s, {e0}};
            int at = g.edge(e0).head;
            std::size_t guard = 0;
            while (!vid.count(at)) {
                const auto& outs = g.out_edges(at);
                if (outs.size() != 1) throw Error("non-special vertex with branching");
                chain.edges.push_back(outs.front());
                at = g.edge(outs.front()).head;
                if (++guard > g.edge_count()) throw Error("chain walk does not terminate");
            }
            RawEdge re;
            re.tail = vid[s];
            re.head = vid[at];
            re.word = g.word_of_path(chain);
            re.tail_win = g.vertex_word(s);
            re.head_win = g.vertex_word(at);
            raw.push_back(std::move(re));
        }
    }

    std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
        return std::tie(a.tail_win, a.head_win, a.word) < std::tie(b.tail_win, b.head_win, b.word);
    });
    std::vector<Scheme::Edge> edges;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        Scheme::Edge e;
        e.number = static_cast<int>(i) + 1;
        e.tail = raw[i].tail;
        e.head = raw[i].head;
        e.word = std::move(raw[i].word);
        e.origin = {Constituent::old_edge(e.number)};
        edges.push_back(std::move(e));
    }
    return Scheme(std::move(vertices), std::move(edges));
}

} // namespace rauzy
