#include "oracle.hh"
#include "pfree/structure.hh"

#include <doctest.h>

#include <random>

using namespace pfree;

namespace {

Graph complete_multipartite(const std::vector<std::size_t> &parts)
{
    std::size_t n = 0;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts[i]; ++j, ++n)
            owner.push_back(i);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (owner[u] != owner[v])
                g.add_edge(u, v);
    return g;
}

}

TEST_CASE("classify_five")
{
    auto k5 = classify_five(complete_graph(5), {0, 1, 2, 3, 4});
    CHECK(k5.kind == FiveKind::StrictSupergraph);
    CHECK(k5.non_edges.empty());

    auto p = classify_five(oracle::prison(), {4, 2, 0, 3, 1});
    CHECK(p.kind == FiveKind::Prison);
    CHECK(p.non_edges == std::vector<Edge>{Edge(0, 1), Edge(0, 2)});
    CHECK(p.vertices == std::array<Vertex, 5>{0, 1, 2, 3, 4});

    auto c5 = from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(classify_five(c5, {0, 1, 2, 3, 4}).kind == FiveKind::Other);

    // K5 minus a matching of size two is neither
    auto m = apply_edits(complete_graph(5), {Edge(0, 1), Edge(2, 3)}, {});
    CHECK(classify_five(m, {0, 1, 2, 3, 4}).kind == FiveKind::Other);

    CHECK_THROWS(classify_five(complete_graph(5), {0, 1, 2, 3, 3}));
    CHECK_THROWS(classify_five(complete_graph(5), {0, 1, 2, 3, 9}));

    // permutation invariance
    std::mt19937_64 rng(5);
    auto g = oracle::random_graph(5, 0.8, rng);
    std::array<Vertex, 5> vs{0, 1, 2, 3, 4};
    auto base = classify_five(g, vs);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(vs.begin(), vs.end(), rng);
        auto c = classify_five(g, vs);
        CHECK(c.kind == base.kind);
        CHECK(c.non_edges == base.non_edges);
    }
}

TEST_CASE("find_prison")
{
    CHECK(!find_prison(complete_graph(6)));

    Graph g(8);
    for (const auto &e : oracle::prison().edges())
        g.add_edge(e.u + 3, e.v + 3);
    auto w = find_prison(g);
    REQUIRE(w);
    CHECK(w->vertices == std::array<Vertex, 5>{3, 4, 5, 6, 7});
    CHECK(w->non_edges == std::array<Edge, 2>{Edge(3, 4), Edge(3, 5)});
    CHECK(w->edges().size() == 8);
}

TEST_CASE("enumerate_prisons against the naive classifier")
{
    CHECK(enumerate_prisons(complete_graph(7)).empty());
    CHECK(enumerate_prisons(oracle::prison()).size() == 1);

    // prison plus an apex adjacent to all five
    Graph apex = oracle::prison();
    Vertex a = apex.add_vertices(1);
    for (Vertex v = 0; v < 5; ++v)
        apex.add_edge(v, a);
    auto naive = oracle::prisons(apex);
    auto fast = enumerate_prisons(apex);
    REQUIRE(fast.size() == naive.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
        CHECK(fast[i].vertices == naive[i]);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        auto g = oracle::random_graph(5 + i % 6, 0.3 + 0.2 * (i % 3), rng);
        auto expect = oracle::prisons(g);
        auto got = enumerate_prisons(g);
        REQUIRE(got.size() == expect.size());
        for (std::size_t j = 0; j < got.size(); ++j) {
            CHECK(got[j].vertices == expect[j]);
            CHECK(classify_five(g, got[j].vertices).kind == FiveKind::Prison);
        }
        CHECK(has_prison(g) == !expect.empty());
        auto first = find_prison(g);
        CHECK(first.has_value() == !expect.empty());
        if (first)
            CHECK(first->vertices == expect.front());
    }
}

TEST_CASE("large-graph path of has_prison agrees with the small path")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        auto g = oracle::random_graph(9, 0.5, rng);
        Graph big = g;
        big.add_vertices(70);   // pushes n past the packed-word fast path
        CHECK(has_prison(big) == has_prison(g));
        CHECK(enumerate_prisons(big).size() == enumerate_prisons(g).size());
    }
}

TEST_CASE("prisons through a given edge")
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        auto g = oracle::random_graph(8, 0.6, rng);
        for (const auto &e : g.edges()) {
            std::vector<std::array<Vertex, 5>> got;
            for_each_prison_containing(g, e.u, e.v, [&](const PrisonWitness &p) {
                got.push_back(p.vertices);
                return true;
            });
            std::sort(got.begin(), got.end());
            std::vector<std::array<Vertex, 5>> expect;
            for (const auto &vs : oracle::prisons(g))
                if (std::count(vs.begin(), vs.end(), e.u) && std::count(vs.begin(), vs.end(), e.v))
                    expect.push_back(vs);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("dense five-sets through a pair")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        auto g = oracle::random_graph(8, 0.6, rng);
        for (Vertex a = 0; a < 8; ++a)
            for (Vertex b = a + 1; b < 8; ++b) {
                std::size_t got = 0, expect = 0;
                for_each_dense_five(g, a, b, 3, [&](const std::array<Vertex, 5> &vs) {
                    CHECK(oracle::missing_pairs(g, vs) <= 3);
                    ++got;
                    return true;
                });
                oracle::for_each_five(8, [&](const auto &vs) {
                    if (std::count(vs.begin(), vs.end(), a) && std::count(vs.begin(), vs.end(), b) &&
                        oracle::missing_pairs(g, vs) <= 3)
                        ++expect;
                });
                CHECK(got == expect);
            }
    }
}

TEST_CASE("edge_in_strict_supergraph")
{
    auto k5 = complete_graph(5);
    for (const auto &e : k5.edges())
        CHECK(edge_in_strict_supergraph(k5, e));
    CHECK(!edge_in_strict_supergraph(from_edge_list(6, {{2, 3}}), Edge(2, 3)));
    auto p = oracle::prison();
    for (const auto &e : p.edges())
        CHECK(!edge_in_strict_supergraph(p, e));
    CHECK_THROWS(edge_in_strict_supergraph(p, Edge(0, 1)));

    std::mt19937_64 rng(37);
    for (int i = 0; i < 150; ++i) {
        auto g = oracle::random_graph(8, 0.7, rng);
        for (const auto &e : g.edges())
            CHECK(edge_in_strict_supergraph(g, e) == oracle::in_strict_supergraph(g, e));
    }
}

TEST_CASE("cliques")
{
    CHECK(count_cliques(complete_graph(6), 4) == 15);
    CHECK(count_cliques(oracle::prison(), 4) == 1);
    std::vector<std::vector<Vertex>> seen;
    for_each_clique(complete_graph(5), 3, [&](const std::vector<Vertex> &q) {
        seen.push_back(q);
        return true;
    });
    CHECK(seen.size() == 10);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
}

TEST_CASE("cmd")
{
    auto k5 = cmd(complete_graph(5), 4);
    REQUIRE(k5.size() == 1);
    CHECK(k5[0].classes.size() == 5);

    auto g = complete_multipartite({2, 2, 1, 1});
    auto comps = cmd(g, 4);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].vertices.size() == 6);
    CHECK(comps[0].classes.size() == 4);

    CHECK(cmd(Graph(6), 2).empty());
    CHECK_THROWS(cmd(complete_graph(3), 1));

    // every component is complete multipartite with at least p parts, and maximal
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        auto h = oracle::random_graph(9, 0.6, rng);
        for (std::size_t p : {2u, 3u, 4u})
            for (const auto &f : cmd(h, p)) {
                auto mc = multipartite_structure(h, f.vertices);
                REQUIRE(mc);
                CHECK(mc->classes == f.classes);
                CHECK(f.classes.size() >= p);
                for (Vertex v = 0; v < 9; ++v) {
                    if (std::binary_search(f.vertices.begin(), f.vertices.end(), v))
                        continue;
                    auto bigger = f.vertices;
                    bigger.push_back(v);
                    CHECK(!is_complete_multipartite(h, bigger));
                }
            }
    }
}

TEST_CASE("multipartite_edge_count")
{
    CHECK(multipartite_edge_count({1, 1, 1, 1}) == 6);
    CHECK(multipartite_edge_count({2, 2}) == 4);
    CHECK(multipartite_edge_count({}) == 0);
    // brute-force pair count for (3,2,1)
    auto g = complete_multipartite({3, 2, 1});
    CHECK(g.size() == 11);
    CHECK(multipartite_edge_count({3, 2, 1}) == g.size());
    CHECK_THROWS(multipartite_edge_count({2, 0}));
}

TEST_CASE("check_structure_theorem")
{
    auto p = check_structure_theorem(oracle::prison());
    CHECK(!p.holds);
    REQUIRE(p.violation);
    // the K4 {1,2,3,4} and the vertex 0 that sees two of its classes
    CHECK(p.violation->component.vertices == std::vector<Vertex>{1, 2, 3, 4});
    CHECK(p.violation->vertex == 0);

    CHECK(check_structure_theorem(complete_multipartite({3, 1, 2, 2})).holds);
    CHECK(check_structure_theorem(complete_multipartite({1, 1, 1, 1, 1, 1})).holds);

    // exhaustive over all graphs on 5 vertices
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        Graph g(5);
        int bit = 0;
        for (Vertex u = 0; u < 5; ++u)
            for (Vertex v = u + 1; v < 5; ++v, ++bit)
                if (mask >> bit & 1)
                    g.add_edge(u, v);
        CHECK(check_structure_theorem(g).holds == oracle::prison_free(g));
    }
}

TEST_CASE("check_cmd4_properties")
{
    // two K4s sharing vertex 0
    auto g = from_edge_list(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                {0, 4}, {0, 5}, {0, 6}, {4, 5}, {4, 6}, {5, 6}});
    auto r = check_cmd4_properties(g);
    CHECK(r.prison_free);
    CHECK(r.holds);
    CHECK(r.components == 2);
    CHECK(r.k4_count == 2);

    auto two = from_edge_list(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                  {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
    auto r2 = check_cmd4_properties(two);
    CHECK(r2.holds);
    CHECK(r2.components == 2);

    auto rp = check_cmd4_properties(oracle::prison());
    CHECK(!rp.prison_free);
}
