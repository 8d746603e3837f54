#include <doctest.h>

#include <algorithm>
#include <set>

#include "rauzy/oracle.hpp"
#include "rauzy/rauzy_graph.hpp"

using namespace rauzy;

namespace {

std::set<Word> brute_factors(std::string_view text, std::size_t n) {
    std::set<Word> out;
    for (std::size_t i = 0; i + n <= text.size(); ++i)
        out.insert(Word(text.substr(i, n)));
    return out;
}

std::vector<Word> words_of(const RauzyGraph& g, const std::vector<int>& vs) {
    std::vector<Word> out;
    for (int v : vs) out.push_back(g.vertex_word(v));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("Fibonacci G_1 and G_2 match brute-force factor sets") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g1 = build_rauzy_graph(oracle, 1);
    CHECK(g1.vertex_count() == 2);
    CHECK(g1.edge_count() == 3);
    CHECK(g1.edge_id("aa") >= 0);
    CHECK(g1.edge_id("ab") >= 0);
    CHECK(g1.edge_id("ba") >= 0);
    CHECK(g1.edge_id("bb") < 0);

    const RauzyGraph g2 = build_rauzy_graph(oracle, 2);
    CHECK(g2.vertex_count() == 3);
    CHECK(g2.edge_count() == 4);
    for (const auto& w : {"aab", "aba", "baa", "bab"})
        CHECK(g2.edge_id(w) >= 0);

    // Euler consistency against an independent enumeration on a long prefix.
    const auto text = oracle.prefix(4096);
    for (std::int64_t k : {1, 2, 3, 5, 8}) {
        const RauzyGraph g = build_rauzy_graph(oracle, k);
        CHECK(g.vertex_count() == brute_factors(text, static_cast<std::size_t>(k)).size());
        CHECK(g.edge_count() == brute_factors(text, static_cast<std::size_t>(k) + 1).size());
    }
}

TEST_CASE("graph report: special vertices, connectivity, cycle flag") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g2 = build_rauzy_graph(oracle, 2);
    const auto& rep = g2.report();
    CHECK(words_of(g2, rep.in_special) == std::vector<Word>{"ab"});
    CHECK(words_of(g2, rep.out_special) == std::vector<Word>{"ba"});
    CHECK(rep.strongly_connected);
    CHECK_FALSE(rep.is_cycle);

    const RauzyGraph g1 = build_rauzy_graph(oracle, 1);
    CHECK(words_of(g1, g1.report().in_special) == std::vector<Word>{"a"});
    CHECK(words_of(g1, g1.report().out_special) == std::vector<Word>{"a"});

    FactorOracle periodic(std::make_unique<EventuallyPeriodicSource>("", "ab"));
    const RauzyGraph gp = build_rauzy_graph(periodic, 1);
    CHECK(gp.vertex_count() == 2);
    CHECK(gp.edge_count() == 2);
    CHECK(gp.report().is_cycle);
}

TEST_CASE("path_of_word and word_of_path invert each other") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g2 = build_rauzy_graph(oracle, 2);

    const GraphPath p = g2.path_of_word("abaab");
    REQUIRE(p.edges.size() == 3);
    CHECK(g2.edge(p.edges[0]).word == "aba");
    CHECK(g2.edge(p.edges[1]).word == "baa");
    CHECK(g2.edge(p.edges[2]).word == "aab");
    CHECK(g2.word_of_path(p) == "abaab");

    const GraphPath anchor = g2.path_of_word("ab");
    CHECK(anchor.edges.empty());
    CHECK(g2.word_of_path(anchor) == "ab");

    CHECK_THROWS_AS(g2.path_of_word("abb"), NotAFactorPathError);
    CHECK_THROWS_AS(g2.path_of_word("a"), NotAFactorPathError);

    // Round trip over every certified factor of lengths k..k+6.
    for (std::int64_t len = 2; len <= 8; ++len)
        for (const auto& w : oracle.factors(len))
            CHECK(g2.word_of_path(g2.path_of_word(w)) == w);
}

TEST_CASE("natural extensions in G_2(Fibonacci)") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g2 = build_rauzy_graph(oracle, 2);
    const GraphPath bab = g2.path_of_word("bab");

    // Right: append the forced edge aba, reaching the out-special vertex ba.
    const GraphPath right = g2.right_extension(bab);
    CHECK(g2.word_of_path(right) == "baba");
    // Left: prepend the forced edge aba, starting from the in-special vertex ab.
    const GraphPath left = g2.left_extension(bab);
    CHECK(g2.word_of_path(left) == "abab");

    // A path already ending at a distributing vertex extends to itself.
    const GraphPath aba = g2.path_of_word("aba");
    CHECK(g2.right_extension(aba).edges == aba.edges);

    FactorOracle periodic(std::make_unique<EventuallyPeriodicSource>("", "ab"));
    const RauzyGraph gp = build_rauzy_graph(periodic, 1);
    CHECK_THROWS_AS(gp.right_extension(gp.path_of_word("ab")), GraphIsCycleError);
}

TEST_CASE("front/back words via the construction rules") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g2 = build_rauzy_graph(oracle, 2);

    // Chain ab -> ba (word aba): starts at the collecting side, keeps all.
    CHECK(g2.front_word(g2.path_of_word("aba")) == "aba");
    CHECK(g2.back_word(g2.path_of_word("aba")) == "aba");
    // Right extension of bab is baba; starting at out-special ba drops k letters.
    CHECK(g2.front_word(g2.right_extension(g2.path_of_word("bab"))) == "ba");
    // Left extension of bab is abab; ending at in-special ab drops k letters.
    CHECK(g2.back_word(g2.left_extension(g2.path_of_word("bab"))) == "ab");
}

TEST_CASE("DOT export carries vertex labels and extension letters") {
    FactorOracle oracle(make_fibonacci_source());
    const RauzyGraph g1 = build_rauzy_graph(oracle, 1);
    const std::string dot = g1.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("label=\"a\"") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("strong connectivity and non-cycle hold along certified orders") {
    FactorOracle oracle(make_thue_morse_source());
    for (std::int64_t k = 1; k <= 10; ++k) {
        const RauzyGraph g = build_rauzy_graph(oracle, k);
        CHECK(g.report().strongly_connected);
        CHECK_FALSE(g.report().is_cycle);
    }
}
