#include <doctest.h>

#include <algorithm>
#include <map>

#include "rauzy/analysis.hpp"
#include "rauzy/rauzy_graph.hpp"
#include "rauzy/scheme.hpp"

using namespace rauzy;

namespace {

// Edge lookup by spelled word (unique in the schemes used here).
int edge_by_word(const Scheme& s, const Word& w) {
    for (const auto& e : s.edges())
        if (e.word == w) return e.number;
    return -1;
}

} // namespace

TEST_CASE("find_clean_order") {
    FactorOracle fib(make_fibonacci_source());
    CHECK(find_clean_order(fib, 1) == 2);

    FactorOracle tmo(make_thue_morse_source());
    const std::int64_t k_tm = find_clean_order(tmo, 1);
    CHECK(special_factors(tmo, k_tm).bispecial.empty());
    for (std::int64_t k = 1; k < k_tm; ++k)
        CHECK_FALSE(special_factors(tmo, k).bispecial.empty());

    FactorOracle periodic(std::make_unique<EventuallyPeriodicSource>("", "ab"));
    CHECK_THROWS_AS(find_clean_order(periodic, 1, 32), HorizonExceededError);
}

TEST_CASE("Fibonacci k=2 scheme: structure and words") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);

    REQUIRE(s.vertex_count() == 2);
    REQUIRE(s.edge_count() == 3);

    // Canonical numbering sorts by (tail window, head window, word):
    // 1: ab->ba word aba, 2: ba->ab word baab, 3: ba->ab word bab.
    CHECK(s.edge(1).word == "aba");
    CHECK(s.edge(2).word == "baab");
    CHECK(s.edge(3).word == "bab");

    const int c = s.edge(1).tail, d = s.edge(1).head;
    CHECK(s.vertex(c).role == VertexRole::Collecting);
    CHECK(s.vertex(d).role == VertexRole::Distributing);
    CHECK(s.window(c) == "ab");
    CHECK(s.window(d) == "ba");

    // Front/back words from the natural extensions in G_2.
    CHECK(s.front_word(1) == "aba");
    CHECK(s.back_word(1) == "aba");
    CHECK(s.front_word(3) == "ba");
    CHECK(s.back_word(3) == "ab");
    CHECK(s.front_word(2) == "aba");
    CHECK(s.back_word(2) == "aba");

    CHECK(s.support_edges() == std::vector<int>{1});
    CHECK(s.scale() == 3);
}

TEST_CASE("construction errors") {
    FactorOracle oracle(make_fibonacci_source());
    CHECK_THROWS_AS(build_scheme_from_rauzy(oracle, 1), BispecialAtOrderError);

    FactorOracle periodic(std::make_unique<EventuallyPeriodicSource>("", "ab"));
    CHECK_THROWS_AS(build_scheme_from_rauzy(periodic, 1), GraphIsCycleError);
}

TEST_CASE("path_words on the Fibonacci scheme") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);

    // Single support edge is a symmetric path; F = B = its word.
    const auto [f1, b1] = s.path_words({1});
    CHECK(f1 == "aba");
    CHECK(b1 == "aba");
    CHECK(s.is_symmetric({1}));

    // Three-edge symmetric paths through each return edge.
    const auto [f3, b3] = s.path_words({1, 3, 1});
    CHECK(f3 == "ababa");
    CHECK(f3 == b3);
    const auto [f2, b2] = s.path_words({1, 2, 1});
    CHECK(f2 == "abaaba");
    CHECK(f2 == b2);

    // F of a symmetric path equals the glued spelled word.
    CHECK(s.glued_word({1, 3, 1}) == f3);
    CHECK(s.glued_word({1, 2, 1}) == f2);

    CHECK_THROWS_AS(s.path_words({1, 1}), InvalidPathError);
}

TEST_CASE("scheme natural extensions") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    // Edge 3 (ba->ab) ends at the collecting vertex: extend through edge 1.
    CHECK(s.right_extension({3}) == Scheme::Path{3, 1});
    CHECK(s.left_extension({3}) == Scheme::Path{1, 3});
    // Already at a distributing end: unchanged.
    CHECK(s.right_extension({1}) == Scheme::Path{1});
}

TEST_CASE("construction coherence with the independent G_k rule") {
    // F(s) of any bounded path must equal the front word of the right natural
    // extension of the corresponding G_k path, computed by the graph module.
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    const RauzyGraph g = build_rauzy_graph(oracle, 2);

    for (const auto& path : s.symmetric_paths(5)) {
        const Word spelled = s.glued_word(path);
        const GraphPath gp = g.path_of_word(spelled);
        const Word expect = g.front_word(g.right_extension(gp));
        CHECK(s.path_words(path).first == expect);
    }
    // Also on non-symmetric single edges.
    for (const auto& e : s.edges()) {
        const GraphPath gp = g.path_of_word(e.word);
        CHECK(s.front_word(e.number) == g.front_word(g.right_extension(gp)));
        CHECK(s.back_word(e.number) == g.back_word(g.left_extension(gp)));
    }
}

TEST_CASE("admissible paths") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    CHECK(s.admissible({1}, oracle));
    CHECK(s.admissible({1, 2, 1}, oracle));
    CHECK(s.admissible({1, 3, 1}, oracle));
    // F([1,3,1,3,1]) = abababa contains bb-free square pattern not in Fibonacci.
    CHECK_FALSE(s.admissible({1, 3, 1, 3, 1}, oracle));
    CHECK_THROWS_AS(s.admissible({3}, oracle), InvalidPathError);
}

TEST_CASE("validator passes on the freshly built scheme") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    const ValidationReport rep = validate_scheme(s, oracle, 6, 20);
    CHECK(rep.ok());
    CHECK(rep.wellformed.status == PropertyResult::Status::Pass);
    // Properties 1-5 are decidable at these bounds; 6 and 7 are existence
    // searches and may come back unverified, but never failed.
    for (int i = 0; i < 5; ++i)
        CHECK(rep.properties[static_cast<std::size_t>(i)].status == PropertyResult::Status::Pass);
    for (int i = 5; i < 7; ++i)
        CHECK(rep.properties[static_cast<std::size_t>(i)].status != PropertyResult::Status::Fail);
}

TEST_CASE("validator detects an injected branch-letter fault") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    // Make both front words out of the distributing vertex start with 'b'.
    s.debug_override_front_word(2, "ba" + s.front_word(2).substr(2));
    const ValidationReport rep = validate_scheme(s, oracle, 4, 8);
    CHECK(rep.properties[1].status == PropertyResult::Status::Fail);
}

TEST_CASE("validator detects a front/back mismatch") {
    FactorOracle oracle(make_fibonacci_source());
    const Scheme s = build_scheme_from_rauzy(oracle, 2);
    s.debug_override_back_word(1, "abb");
    const ValidationReport rep = validate_scheme(s, oracle, 4, 8);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("containment transfer holds on bounded symmetric paths") {
    FactorOracle oracle(make_tribonacci_source());
    const std::int64_t k = find_clean_order(oracle, 1);
    const Scheme s = build_scheme_from_rauzy(oracle, k);
    const ValidationReport rep = validate_scheme(s, oracle, 5, 12);
    CHECK(rep.ok());
    CHECK(rep.properties[3].status == PropertyResult::Status::Pass);
}

TEST_CASE("coded morphic source builds a valid scheme") {
    const MorphismFile mf = parse_morphism_text("a -> ab\nb -> a\nseed: a\na => x\nb => y\n");
    REQUIRE(mf.coding.has_value());
    FactorOracle oracle(std::make_unique<MorphicSource>(mf.morphism, *mf.seed, *mf.coding));
    const std::int64_t k = find_clean_order(oracle, 1);
    CHECK(k == 2);
    const Scheme s = build_scheme_from_rauzy(oracle, k);
    CHECK(s.edge_count() == 3);
    CHECK(s.front_word(1) == "xyx"); // relabeled Fibonacci words
    CHECK(validate_scheme(s, oracle, 5, 10).ok());
}
