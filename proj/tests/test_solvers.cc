#include "oracle.hh"
#include "pfree/solvers.hh"

#include <doctest.h>

#include <random>

using namespace pfree;

TEST_CASE("subsets_up_to")
{
    CHECK(subsets_up_to(5, 0) == 1);
    CHECK(subsets_up_to(5, 2) == 16);
    CHECK(subsets_up_to(3, 10) == 8);
    CHECK(subsets_up_to(45, 3) == 1 + 45 + 990 + 14190);
}

TEST_CASE("brute_force_deletion")
{
    auto p = oracle::prison();
    auto one = brute_force_deletion(p, 1);
    REQUIRE(one);
    CHECK(one->size() == 1);
    CHECK(one->edits == EdgeSet{Edge(0, 3)});
    CHECK(!brute_force_deletion(p, 0));
    CHECK(brute_force_deletion(complete_graph(6), 0)->size() == 0);

    Graph big = complete_graph(40);
    CHECK_THROWS_AS(brute_force_deletion(big, 3), GuardExceeded);
}

TEST_CASE("branch_deletion")
{
    auto k6 = branch_deletion(complete_graph(6), 0);
    REQUIRE(k6);
    CHECK(k6->size() == 0);
    CHECK(branch_deletion(oracle::prison(), 1));
    CHECK(!branch_deletion(oracle::prison(), 0));

    std::mt19937_64 rng(43);
    for (int i = 0; i < 60; ++i) {
        auto g = oracle::random_graph(7, 0.6, rng);
        int k = i % 4;
        auto bf = brute_force_deletion(g, k);
        auto br = branch_deletion(g, k);
        CHECK(bf.has_value() == br.has_value());
        int naive = oracle::min_toggles(g, g.edges(), k);
        CHECK(bf.has_value() == (naive >= 0));
        if (bf && br) {
            CHECK(bf->size() == br->size());
            CHECK(static_cast<int>(bf->size()) == naive);
            CHECK(verify_solution(AnnotatedGraph(g), *br));
        }
    }
}

TEST_CASE("completion solvers")
{
    AnnotatedGraph p(oracle::prison());
    auto one = branch_completion(p, 1);
    REQUIRE(one);
    CHECK(one->edits == EdgeSet{Edge(0, 1)});
    auto bf = brute_force_completion(p, 3);
    REQUIRE(bf);
    CHECK(bf->size() == 1);

    AnnotatedGraph locked = p;
    locked.forbid(Edge(0, 1));
    locked.forbid(Edge(0, 2));
    CHECK(!branch_completion(locked, 5));
    CHECK(!brute_force_completion(locked, 5));

    AnnotatedGraph k33(from_edge_list(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}));
    CHECK(brute_force_completion(k33, 2)->size() == 0);

    // propagational gadget with e1 present and e2, e3 forbidden
    AnnotatedGraph prop(from_edge_list(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}, {4, 0}, {2, 3}, {3, 4}}));
    prop.forbid(Edge(0, 1));
    prop.forbid(Edge(1, 2));
    CHECK(!branch_completion(prop, 3));
    CHECK(!brute_force_completion(prop, 3));

    std::mt19937_64 rng(47);
    for (int i = 0; i < 60; ++i) {
        AnnotatedGraph ag(oracle::random_graph(7, 0.6, rng));
        for (const auto &e : complement(ag.graph).edges())
            if (rng() % 5 == 0)
                ag.forbid(e);
        int k = i % 4;
        auto a = branch_completion(ag, k);
        auto b = brute_force_completion(ag, k);
        CHECK(a.has_value() == b.has_value());
        std::vector<Edge> allowed;
        for (const auto &e : complement(ag.graph).edges())
            if (!ag.is_forbidden(e))
                allowed.push_back(e);
        int naive = oracle::min_toggles(ag.graph, allowed, k);
        CHECK(b.has_value() == (naive >= 0));
        if (a && b) {
            CHECK(a->size() == b->size());
            CHECK(verify_solution(ag, *a));
            for (const auto &e : a->edits)
                CHECK(!ag.is_forbidden(e));
        }
    }
}

TEST_CASE("propagate_forced")
{
    AnnotatedGraph p(oracle::prison());
    p.forbid(Edge(0, 1));
    auto st = propagate_forced(p, {});
    CHECK(!st.conflict);
    CHECK(st.added == EdgeSet{Edge(0, 2)});

    p.forbid(Edge(0, 2));
    CHECK(propagate_forced(p, {}).conflict);

    // both outputs of a propagational gadget blocked: adding e1 is derived forbidden
    AnnotatedGraph prop(from_edge_list(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}, {4, 0}, {2, 3}}));
    prop.forbid(Edge(0, 1));
    prop.forbid(Edge(1, 2));
    auto d = propagate_forced(prop, {});
    CHECK(d.derived_forbidden.count(Edge(3, 4)));
    CHECK(propagate_forced(prop, {Edge(3, 4)}).conflict);

    CHECK_THROWS(propagate_forced(prop, {Edge(0, 1)}));
    CHECK_THROWS(propagate_forced(prop, {Edge(0, 2)}));
}

TEST_CASE("propagation is sound against the exhaustive completion")
{
    std::mt19937_64 rng(53);
    int compared = 0;
    for (int i = 0; i < 150; ++i) {
        AnnotatedGraph ag(oracle::random_graph(7, 0.7, rng));
        auto non_edges = complement(ag.graph).edges();
        for (const auto &e : non_edges)
            if (rng() % 3 == 0)
                ag.forbid(e);
        EdgeSet seed;
        for (const auto &e : non_edges)
            if (!ag.is_forbidden(e) && rng() % 6 == 0)
                seed.insert(e);
        auto st = propagate_forced(ag, seed);
        AnnotatedGraph with_seed = ag;
        for (const auto &e : seed)
            with_seed.graph.add_edge(e);
        auto best = brute_force_completion(with_seed, 4);
        if (best) {
            ++compared;
            CHECK(!st.conflict);
            EdgeSet full = best->edits;
            full.insert(seed.begin(), seed.end());
            for (const auto &e : st.added)
                CHECK(full.count(e));
            for (const auto &e : st.derived_forbidden)
                CHECK(!full.count(e));
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("verify_solution")
{
    AnnotatedGraph k5(complete_graph(5));
    CHECK(verify_solution(k5, Solution{{}, EditMode::Deletion}));
    AnnotatedGraph p(oracle::prison());
    CHECK_THROWS(verify_solution(p, Solution{{Edge(0, 1)}, EditMode::Deletion}));
    CHECK_THROWS(verify_solution(p, Solution{{Edge(3, 4)}, EditMode::Completion}));
    CHECK(verify_solution(p, Solution{{Edge(0, 1)}, EditMode::Completion}));
    p.forbid(Edge(0, 1));
    CHECK(!verify_solution(p, Solution{{Edge(0, 1)}, EditMode::Completion}));
    CHECK(!verify_solution(p, Solution{{}, EditMode::Completion}));
}
