#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "unravel/sct.hpp"

using namespace unravel;

namespace {

constexpr auto P = EdgeLabel::Progressing;
constexpr auto Q = EdgeLabel::Preserving;

CallSystem one_function(std::vector<SizeChangeGraph> loops) {
    CallSystem cs;
    std::size_t n = loops.empty() ? 1 : loops[0].src_arity();
    cs.functions = {{"f", std::vector<SortId>(n, kDefaultSort)}};
    for (std::size_t i = 0; i < loops.size(); ++i) cs.calls.push_back({"f." + std::to_string(i), "f", "f", loops[i]});
    return cs;
}

}  // namespace

TEST_CASE("fixtures terminate") {
    for (const auto& e : fixtures::examples()) {
        CAPTURE(e.name);
        auto v = decide_termination(e.graphs);
        CHECK(v.terminating);
        CHECK_FALSE(v.counterexample);
        CHECK(v.closure_size > 0);
    }
}

TEST_CASE("swap without descent does not terminate") {
    auto cs = one_function({SizeChangeGraph(2, 2, {{0, 1, Q}, {1, 0, Q}})});
    auto v = decide_termination(cs);
    REQUIRE_FALSE(v.terminating);
    REQUIRE(v.counterexample);
    CHECK(oracle::refutes(cs, v.counterexample->prefix, v.counterexample->cycle));
}

TEST_CASE("descent needs every cycle") {
    // f.0 alone descends on x0, f.1 alone on x1, but f.0 f.1 loses both.
    auto cs = one_function({SizeChangeGraph(2, 2, {{0, 0, P}}), SizeChangeGraph(2, 2, {{1, 1, P}})});
    CHECK_FALSE(decide_termination(cs).terminating);
    cs.calls[1].graph.add(0, 0, Q);
    CHECK(decide_termination(cs).terminating);
}

TEST_CASE("roots restrict the analysis to reachable calls") {
    CallSystem cs;
    cs.functions = {{"f", {kDefaultSort}}, {"g", {kDefaultSort}}};
    cs.calls = {{"g.0", "g", "g", SizeChangeGraph(1, 1, {{0, 0, Q}})}};
    CHECK_FALSE(decide_termination(cs).terminating);
    CHECK(decide_termination(cs, std::set<std::string>{"f"}).terminating);
    CHECK_FALSE(decide_termination(cs, std::set<std::string>{"g"}).terminating);
}

TEST_CASE("path_graph composes in call order") {
    const auto& cs = fixtures::example("plus").graphs;
    CHECK(to_string(path_graph(cs, {"+.0", "+.0"})) == "{0>0, 1>1}");
    const auto& fg = fixtures::example("fg").graphs;
    CHECK(to_string(path_graph(fg, {"f.0", "g.0"})) == "{0>0, 1>0}");
}

TEST_CASE("closure keeps one witness per element") {
    const auto& cs = fixtures::example("plus").graphs;
    auto cl = closure(cs);
    CHECK(cl.size() == 3);
    for (const auto& el : cl) CHECK(path_graph(cs, el.witness) == el.graph);
}

TEST_CASE("decide_termination agrees with the brute-force oracle") {
    std::mt19937 rng(11);
    oracle::Shape shape;
    int negative = 0;
    for (int t = 0; t < 300; ++t) {
        auto cs = oracle::random_system(rng, shape);
        auto v = decide_termination(cs);
        REQUIRE(v.terminating == oracle::terminates(cs));
        if (!v.terminating) {
            ++negative;
            REQUIRE(v.counterexample);
            CHECK(oracle::refutes(cs, v.counterexample->prefix, v.counterexample->cycle));
        }
    }
    CHECK(negative > 20);
    CHECK(negative < 280);
}

TEST_CASE("check_soundness on induced derivations") {
    for (const auto& e : fixtures::examples()) {
        auto ind = induced_proof_system(e.graphs);
        CHECK(check_soundness(ind.derivations.at(e.root), ind.system).terminating);
    }
    auto ind = induced_proof_system(one_function({SizeChangeGraph(1, 1, {{0, 0, Q}})}));
    CHECK_FALSE(check_soundness(ind.derivations.at("f"), ind.system).terminating);
}
