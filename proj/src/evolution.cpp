#include "rauzy/evolution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rauzy {

// ---------------------------------------------------------------------------
// Light schemes

LightScheme light_of(const Scheme& s) {
    LightScheme l;
    std::map<int, int> relabel;
    auto label = [&](int v) {
        auto it = relabel.find(v);
        if (it != relabel.end()) return it->second;
        const int id = static_cast<int>(relabel.size());
        relabel[v] = id;
        return id;
    };
    for (const auto& e : s.edges())
        l.edges.emplace_back(label(e.tail), label(e.head));
    l.vertex_count = static_cast<int>(relabel.size());
    return l;
}

std::vector<int> LightScheme::support_edges() const {
    std::vector<int> din(static_cast<std::size_t>(vertex_count), 0);
    std::vector<int> dout(static_cast<std::size_t>(vertex_count), 0);
    for (const auto& [t, h] : edges) {
        ++dout[static_cast<std::size_t>(t)];
        ++din[static_cast<std::size_t>(h)];
    }
    std::vector<int> result;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [t, h] = edges[i];
        const bool tail_col = din[static_cast<std::size_t>(t)] > 1 &&
                              dout[static_cast<std::size_t>(t)] == 1;
        const bool head_dis = din[static_cast<std::size_t>(h)] == 1 &&
                              dout[static_cast<std::size_t>(h)] > 1;
        if (tail_col && head_dis) result.push_back(static_cast<int>(i) + 1);
    }
    return result;
}

std::string LightScheme::to_string() const {
    std::ostringstream os;
    os << "V" << vertex_count << ":";
    for (const auto& [t, h] : edges) os << " " << t << ">" << h;
    return os.str();
}

int choose_support(const LightScheme& light) {
    const auto sup = light.support_edges();
    if (sup.empty()) throw NoSupportEdgeError("light scheme has no support edge");
    return sup.front();
}

// ---------------------------------------------------------------------------
// Elementary evolution

namespace {

struct MutVertex {
    std::int64_t overlap = 0;
    bool alive = true;
};

struct MutEdge {
    int tail = -1, head = -1;
    Word word;
    std::vector<Constituent> origin;
    bool alive = true;
};

struct MutGraph {
    std::vector<MutVertex> verts;
    std::vector<MutEdge> edges;

    int add_vertex(std::int64_t overlap) {
        verts.push_back({overlap, true});
        return static_cast<int>(verts.size()) - 1;
    }
    void add_edge(int t, int h, Word w, std::vector<Constituent> origin) {
        edges.push_back({t, h, std::move(w), std::move(origin), true});
    }
    std::vector<std::vector<int>> in_lists() const {
        std::vector<std::vector<int>> in(verts.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].alive) in[static_cast<std::size_t>(edges[i].head)].push_back(static_cast<int>(i));
        return in;
    }
    std::vector<std::vector<int>> out_lists() const {
        std::vector<std::vector<int>> out(verts.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].alive) out[static_cast<std::size_t>(edges[i].tail)].push_back(static_cast<int>(i));
        return out;
    }
};

Word glue(const Word& a, const Word& b, std::int64_t overlap) {
    const auto o = static_cast<std::size_t>(overlap);
    if (a.size() < o || b.size() < o)
        throw Error("glue: word shorter than the overlap");
    if (a.compare(a.size() - o, o, b, 0, o) != 0)
        throw Error("glue: overlap windows disagree");
    Word w;
    w.reserve(a.size() + b.size() - o);
    w = a;
    w.append(b, o, Word::npos);
    return w;
}

void prune_dead_ends(MutGraph& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        const auto in = g.in_lists();
        const auto out = g.out_lists();
        for (std::size_t v = 0; v < g.verts.size(); ++v) {
            if (!g.verts[v].alive) continue;
            if (in[v].empty() || out[v].empty()) {
                g.verts[v].alive = false;
                for (auto& e : g.edges)
                    if (e.alive && (e.tail == static_cast<int>(v) || e.head == static_cast<int>(v)))
                        e.alive = false;
                changed = true;
            }
        }
    }
}

void smooth_pass_through(MutGraph& g) {
    for (;;) {
        const auto in = g.in_lists();
        const auto out = g.out_lists();
        int target = -1;
        for (std::size_t v = 0; v < g.verts.size(); ++v)
            if (g.verts[v].alive && in[v].size() == 1 && out[v].size() == 1) {
                target = static_cast<int>(v);
                break;
            }
        if (target < 0) return;
        const int pe = in[static_cast<std::size_t>(target)].front();
        const int qe = out[static_cast<std::size_t>(target)].front();
        if (pe == qe)
            throw DegenerateResultError("evolution produced an isolated loop");
        MutEdge& p = g.edges[static_cast<std::size_t>(pe)];
        MutEdge& q = g.edges[static_cast<std::size_t>(qe)];
        Word w = glue(p.word, q.word, g.verts[static_cast<std::size_t>(target)].overlap);
        std::vector<Constituent> origin = p.origin;
        origin.insert(origin.end(), q.origin.begin(), q.origin.end());
        const int t = p.tail, h = q.head;
        p.alive = q.alive = false;
        g.verts[static_cast<std::size_t>(target)].alive = false;
        g.add_edge(t, h, std::move(w), std::move(origin));
    }
}

// Slides every vertex window to the true branch point: out-words of a
// distributing vertex must diverge right after the window, in-words of a
// collecting vertex right before it.
void tighten_windows(MutGraph& g) {
    for (int guard = 0; guard < 4096; ++guard) {
        bool changed = false;
        const auto in = g.in_lists();
        const auto out = g.out_lists();
        for (std::size_t v = 0; v < g.verts.size(); ++v) {
            if (!g.verts[v].alive) continue;
            const auto& ins = in[v];
            const auto& outs = out[v];
            if (ins.size() == 1 && outs.size() >= 2) {
                std::size_t cp = g.edges[static_cast<std::size_t>(outs[0])].word.size();
                for (std::size_t i = 1; i < outs.size(); ++i) {
                    const Word& a = g.edges[static_cast<std::size_t>(outs[0])].word;
                    const Word& b = g.edges[static_cast<std::size_t>(outs[i])].word;
                    std::size_t m = 0;
                    const std::size_t lim = std::min({cp, a.size(), b.size()});
                    while (m < lim && a[m] == b[m]) ++m;
                    cp = m;
                }
                const auto o = static_cast<std::size_t>(g.verts[v].overlap);
                if (cp > o) {
                    const int pe = ins.front();
                    MutEdge& p = g.edges[static_cast<std::size_t>(pe)];
                    if (p.tail == static_cast<int>(v))
                        throw DegenerateResultError("self-loop at a distributing vertex");
                    p.word.append(g.edges[static_cast<std::size_t>(outs[0])].word, o, cp - o);
                    g.verts[v].overlap = static_cast<std::int64_t>(cp);
                    changed = true;
                }
            } else if (ins.size() >= 2 && outs.size() == 1) {
                std::size_t cs = g.edges[static_cast<std::size_t>(ins[0])].word.size();
                for (std::size_t i = 1; i < ins.size(); ++i) {
                    const Word& a = g.edges[static_cast<std::size_t>(ins[0])].word;
                    const Word& b = g.edges[static_cast<std::size_t>(ins[i])].word;
                    std::size_t m = 0;
                    const std::size_t lim = std::min({cs, a.size(), b.size()});
                    while (m < lim && a[a.size() - 1 - m] == b[b.size() - 1 - m]) ++m;
                    cs = m;
                }
                const auto o = static_cast<std::size_t>(g.verts[v].overlap);
                if (cs > o) {
                    const int qe = outs.front();
                    MutEdge& q = g.edges[static_cast<std::size_t>(qe)];
                    if (q.head == static_cast<int>(v))
                        throw DegenerateResultError("self-loop at a collecting vertex");
                    const Word& ref = g.edges[static_cast<std::size_t>(ins[0])].word;
                    q.word.insert(0, ref, ref.size() - cs, cs - o);
                    g.verts[v].overlap = static_cast<std::int64_t>(cs);
                    changed = true;
                }
            }
        }
        if (!changed) return;
    }
    throw DegenerateResultError("window tightening did not reach a fixpoint");
}

Scheme finalize(MutGraph& g) {
    std::vector<int> alive_edges;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].alive) alive_edges.push_back(static_cast<int>(i));
    if (alive_edges.size() < 2)
        throw DegenerateResultError("fewer than two edges remain after evolution");

    // Renumbering keys: pure-old edges first by old number, then composites by
    // the (e, f) numbers of their first composite constituent.
    auto key = [&](int ei) {
        const auto& origin = g.edges[static_cast<std::size_t>(ei)].origin;
        for (const auto& c : origin)
            if (c.kind == Constituent::Kind::Composite)
                return std::tuple<int, int, int>(1, c.comp_e, c.comp_f);
        return std::tuple<int, int, int>(0, origin.front().old_number, 0);
    };
    std::stable_sort(alive_edges.begin(), alive_edges.end(),
                     [&](int a, int b) { return key(a) < key(b); });

    std::map<int, int> vmap;
    std::vector<Scheme::Vertex> vertices;
    const auto in = g.in_lists();
    const auto out = g.out_lists();
    auto vertex_of = [&](int v) {
        auto it = vmap.find(v);
        if (it != vmap.end()) return it->second;
        const std::size_t din = in[static_cast<std::size_t>(v)].size();
        const std::size_t dout = out[static_cast<std::size_t>(v)].size();
        if (!((din > 1 && dout == 1) || (din == 1 && dout > 1)))
            throw DegenerateResultError("evolution produced an illegal vertex of degrees (" +
                                        std::to_string(din) + "," + std::to_string(dout) + ")");
        const int id = static_cast<int>(vertices.size());
        vertices.push_back({din > 1 ? VertexRole::Collecting : VertexRole::Distributing,
                            g.verts[static_cast<std::size_t>(v)].overlap});
        vmap[v] = id;
        return id;
    };

    std::vector<Scheme::Edge> edges;
    for (std::size_t i = 0; i < alive_edges.size(); ++i) {
        MutEdge& me = g.edges[static_cast<std::size_t>(alive_edges[i])];
        Scheme::Edge e;
        e.number = static_cast<int>(i) + 1;
        e.tail = vertex_of(me.tail);
        e.head = vertex_of(me.head);
        e.word = std::move(me.word);
        e.origin = std::move(me.origin);
        edges.push_back(std::move(e));
    }
    return Scheme(std::move(vertices), std::move(edges));
}

} // namespace

EvolveOutcome evolve(const Scheme& s, int support_number, FactorOracle& oracle) {
    const Scheme::Edge& v = s.edge(support_number);
    const int c = v.tail, d = v.head;
    if (s.vertex(c).role != VertexRole::Collecting ||
        s.vertex(d).role != VertexRole::Distributing)
        throw NotSupportEdgeError("edge " + std::to_string(support_number) +
                                  " is not collecting->distributing");

    const std::vector<int> e_in = s.in_edges(c);
    const std::vector<int> f_out = s.out_edges(d);
    const std::int64_t oc = s.vertex(c).overlap, od = s.vertex(d).overlap;

    // Admissibility of each minimal strict super-path e.v.f of the support
    // edge: its spelled word must be a factor of W.
    std::vector<std::pair<int, int>> admitted, rejected;
    for (int e : e_in) {
        for (int f : f_out) {
            Word w = glue(glue(s.edge(e).word, v.word, oc), s.edge(f).word, od);
            switch (oracle.membership(w)) {
                case Ternary::Yes: admitted.emplace_back(e, f); break;
                case Ternary::No: rejected.emplace_back(e, f); break;
                default:
                    throw HorizonExceededError(
                        "composite admissibility undecided within horizon cap");
            }
        }
    }
    std::sort(admitted.begin(), admitted.end());
    std::sort(rejected.begin(), rejected.end());

    MutGraph g;
    // Old vertices except the two being resolved.
    std::map<int, int> vmap;
    for (std::size_t i = 0; i < s.vertex_count(); ++i) {
        const int vi = static_cast<int>(i);
        if (vi == c || vi == d) continue;
        vmap[vi] = g.add_vertex(s.vertex(vi).overlap);
    }
    // Split ports: one vertex per in-edge of c and per out-edge of d.
    std::map<int, int> pe, pf;
    for (int e : e_in)
        pe[e] = g.add_vertex(static_cast<std::int64_t>(s.edge(e).word.size()));
    for (int f : f_out)
        pf[f] = g.add_vertex(static_cast<std::int64_t>(s.edge(f).word.size()));

    for (const auto& oe : s.edges()) {
        if (oe.number == support_number) continue;
        const bool is_e = oe.head == c;
        const bool is_f = oe.tail == d;
        const int t = is_f ? pf[oe.number] : vmap.at(oe.tail);
        const int h = is_e ? pe[oe.number] : vmap.at(oe.head);
        g.add_edge(t, h, oe.word, {Constituent::old_edge(oe.number)});
    }
    for (const auto& [e, f] : admitted) {
        Word w = glue(glue(s.edge(e).word, v.word, oc), s.edge(f).word, od);
        g.add_edge(pe[e], pf[f], std::move(w), {Constituent::composite(e, f)});
    }

    prune_dead_ends(g);
    smooth_pass_through(g);
    tighten_windows(g);

    EvolveOutcome out{finalize(g), std::move(rejected),
                      static_cast<int>(admitted.size())};
    return out;
}

LightEvolution evolve_light(const LightScheme& light,
                            const std::vector<std::pair<int, int>>& admitted) {
    LightEvolution out;
    out.support = choose_support(light);
    const auto [c, d] = light.edges.at(static_cast<std::size_t>(out.support - 1));

    // Same surgery as evolve(), with endpoints and origins only.
    struct LEdge {
        int tail, head;
        std::vector<Constituent> origin;
        bool alive = true;
    };
    std::vector<LEdge> edges;
    int next_vertex = light.vertex_count;
    std::map<int, int> pe, pf; // ports per in-edge of c / out-edge of d
    for (std::size_t i = 0; i < light.edges.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (num == out.support) continue;
        const auto [t, h] = light.edges[i];
        if (h == c) pe.emplace(num, next_vertex++);
        if (t == d) pf.emplace(num, next_vertex++);
    }
    for (std::size_t i = 0; i < light.edges.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (num == out.support) continue;
        const auto [t, h] = light.edges[i];
        edges.push_back({t == d ? pf.at(num) : t, h == c ? pe.at(num) : h,
                         {Constituent::old_edge(num)}, true});
    }
    for (const auto& [e, f] : admitted)
        edges.push_back({pe.at(e), pf.at(f), {Constituent::composite(e, f)}, true});

    auto degrees = [&]() {
        std::vector<std::vector<int>> in(static_cast<std::size_t>(next_vertex)),
            outl(static_cast<std::size_t>(next_vertex));
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].alive) {
                outl[static_cast<std::size_t>(edges[i].tail)].push_back(static_cast<int>(i));
                in[static_cast<std::size_t>(edges[i].head)].push_back(static_cast<int>(i));
            }
        return std::pair(in, outl);
    };

    for (bool changed = true; changed;) { // prune dead ends
        changed = false;
        const auto [in, outl] = degrees();
        for (int v = 0; v < next_vertex; ++v) {
            const bool used = !in[static_cast<std::size_t>(v)].empty() ||
                              !outl[static_cast<std::size_t>(v)].empty();
            if (!used) continue;
            if (in[static_cast<std::size_t>(v)].empty() ||
                outl[static_cast<std::size_t>(v)].empty()) {
                for (auto& e : edges)
                    if (e.alive && (e.tail == v || e.head == v)) { e.alive = false; changed = true; }
            }
        }
    }
    for (;;) { // smooth pass-through vertices
        const auto [in, outl] = degrees();
        int target = -1;
        for (int v = 0; v < next_vertex && target < 0; ++v)
            if (in[static_cast<std::size_t>(v)].size() == 1 &&
                outl[static_cast<std::size_t>(v)].size() == 1)
                target = v;
        if (target < 0) break;
        const int pe_i = degrees().first[static_cast<std::size_t>(target)].front();
        const int qe_i = degrees().second[static_cast<std::size_t>(target)].front();
        if (pe_i == qe_i) throw DegenerateResultError("light evolution produced an isolated loop");
        LEdge merged{edges[static_cast<std::size_t>(pe_i)].tail,
                     edges[static_cast<std::size_t>(qe_i)].head,
                     edges[static_cast<std::size_t>(pe_i)].origin, true};
        merged.origin.insert(merged.origin.end(),
                             edges[static_cast<std::size_t>(qe_i)].origin.begin(),
                             edges[static_cast<std::size_t>(qe_i)].origin.end());
        edges[static_cast<std::size_t>(pe_i)].alive = false;
        edges[static_cast<std::size_t>(qe_i)].alive = false;
        edges.push_back(std::move(merged));
    }

    std::vector<int> alive;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].alive) alive.push_back(static_cast<int>(i));
    if (alive.size() < 2)
        throw DegenerateResultError("light evolution left fewer than two edges");
    auto key = [&](int ei) {
        for (const auto& cst : edges[static_cast<std::size_t>(ei)].origin)
            if (cst.kind == Constituent::Kind::Composite)
                return std::tuple<int, int, int>(1, cst.comp_e, cst.comp_f);
        return std::tuple<int, int, int>(0, edges[static_cast<std::size_t>(ei)].origin.front().old_number, 0);
    };
    std::stable_sort(alive.begin(), alive.end(), [&](int a, int b) { return key(a) < key(b); });

    std::map<int, int> relabel;
    auto label = [&](int v) {
        auto it = relabel.find(v);
        if (it != relabel.end()) return it->second;
        const int id = static_cast<int>(relabel.size());
        relabel[v] = id;
        return id;
    };
    for (std::size_t i = 0; i < alive.size(); ++i) {
        const LEdge& e = edges[static_cast<std::size_t>(alive[i])];
        out.result.edges.emplace_back(label(e.tail), label(e.head));
        const auto [kind, a, b] = key(alive[i]);
        if (kind == 0) out.surviving[a] = static_cast<int>(i) + 1;
        else out.created[{a, b}] = static_cast<int>(i) + 1;
    }
    out.result.vertex_count = static_cast<int>(relabel.size());
    return out;
}

// ---------------------------------------------------------------------------
// Protocol

std::optional<PeriodDetection> detect_period(const std::vector<ProtocolEntry>& entries,
                                             std::int64_t min_repetitions) {
    const auto T = static_cast<std::int64_t>(entries.size());
    if (T < 3) return std::nullopt;
    for (std::int64_t p = 1; p <= T / 2; ++p) {
        // Largest tail on which entries are p-periodic.
        std::int64_t q = T - p;
        while (q > 0 && entries[static_cast<std::size_t>(q - 1)] ==
                            entries[static_cast<std::size_t>(q - 1 + p)])
            --q;
        if (T - q >= min_repetitions * p) {
            PeriodDetection det;
            det.period = p;
            det.preperiod = q;
            det.repetitions = (T - q) / p;
            return det;
        }
    }
    return std::nullopt;
}

Protocol run_protocol(FactorOracle& oracle, std::int64_t k0, std::int64_t steps,
                      std::int64_t min_repetitions) {
    Protocol proto;
    proto.source = oracle.source().describe();
    proto.k0 = k0;
    proto.steps_requested = steps;
    std::optional<Scheme> current;
    try {
        proto.clean_order = find_clean_order(oracle, k0);
        current.emplace(build_scheme_from_rauzy(oracle, proto.clean_order));
    } catch (const Error& e) {
        proto.abort_reason = std::string("construction: ") + e.what();
        return proto;
    }
    for (std::int64_t step = 0; step < steps; ++step) {
        ProtocolEntry entry;
        entry.light = light_of(*current);
        std::int64_t sc;
        try {
            entry.support = choose_support(entry.light);
            sc = current->scale();
            EvolveOutcome out = evolve(*current, entry.support, oracle);
            entry.rejected = std::move(out.rejected);
            proto.entries.push_back(std::move(entry));
            proto.scales.push_back(sc);
            current.emplace(std::move(out.scheme));
        } catch (const Error& e) {
            proto.abort_reason = "step " + std::to_string(step) + ": " + e.what();
            break;
        }
    }
    proto.detection = detect_period(proto.entries, min_repetitions);
    return proto;
}

// ---------------------------------------------------------------------------
// Test words and riggings

std::vector<Word> test_words(const Morphism& phi, const Morphism* coding, std::int64_t k,
                             FactorOracle& base_oracle) {
    std::set<Word> out;
    auto push = [&](const Word& u) {
        Word w = phi.apply_power(u, static_cast<int>(k));
        if (coding) w = coding->apply(w);
        out.insert(std::move(w));
    };
    for (Letter a : phi.alphabet()) push(Word(1, a));
    for (const Word& pair : base_oracle.factors(2)) push(pair);
    return {out.begin(), out.end()};
}

Rigging rigging(const Scheme& s, const std::vector<Word>& words, std::int64_t path_cap) {
    Rigging rig;
    rig.words = words;
    std::sort(rig.words.begin(), rig.words.end());
    rig.sets.resize(rig.words.size());

    for (std::size_t qi = 0; qi < rig.words.size(); ++qi) {
        const Word& q = rig.words[qi];
        std::vector<std::vector<int>> found;
        // DFS over paths from collecting vertices; the front word only grows,
        // so failing the substring test prunes the whole branch.
        std::vector<int> cur;
        auto dfs = [&](auto&& self, int at, const Word& f) -> void {
            if (!cur.empty()) {
                if (find_kmp(q, f) == std::string_view::npos) return;
                if (s.vertex(at).role == VertexRole::Distributing)
                    found.push_back(cur);
                // Still viable at the cap: longer members may exist.
                if (static_cast<std::int64_t>(cur.size()) >= path_cap)
                    throw PathCapExceededError("rigging path cap too small");
            }
            for (int num : s.out_edges(at)) {
                cur.push_back(num);
                Word next_f = f;
                if (cur.size() == 1 ||
                    s.vertex(s.edge(num).tail).role == VertexRole::Distributing)
                    next_f += s.front_word(num);
                self(self, s.edge(num).head, next_f);
                cur.pop_back();
            }
        };
        for (std::size_t v = 0; v < s.vertex_count(); ++v)
            if (s.vertex(static_cast<int>(v)).role == VertexRole::Collecting)
                dfs(dfs, static_cast<int>(v), Word{});
        std::sort(found.begin(), found.end());
        auto& set = rig.sets[qi];
        for (auto& p : found) {
            RiggingPath rp;
            rp.edges = std::move(p);
            set.push_back(std::move(rp));
        }
        // Maximal = not a strict subpath of another member.
        auto contains = [](const std::vector<int>& hay, const std::vector<int>& needle) {
            if (needle.size() > hay.size()) return false;
            for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
                if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i)))
                    return true;
            return false;
        };
        for (auto& rp : set) {
            rp.maximal = true;
            for (const auto& other : set) {
                if (&other == &rp || other.edges == rp.edges) continue;
                if (contains(other.edges, rp.edges)) { rp.maximal = false; break; }
            }
            rig.size = std::max<std::int64_t>(rig.size,
                                              static_cast<std::int64_t>(rp.edges.size()));
        }
    }
    return rig;
}

} // namespace rauzy
