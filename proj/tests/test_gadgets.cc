#include "oracle.hh"
#include "pfree/gadgets.hh"
#include "pfree/io.hh"

#include <doctest.h>

#include <random>

using namespace pfree;

namespace {

// K4 count through edges and common neighbours, each K4 seen 6 times
std::size_t naive_k4(const Graph &g)
{
    std::size_t n = 0;
    for (const auto &e : g.edges()) {
        std::vector<Vertex> common;
        for (Vertex w = 0; w < g.order(); ++w)
            if (g.has_edge(e.u, w) && g.has_edge(e.v, w))
                common.push_back(w);
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j)
                n += g.has_edge(common[i], common[j]) ? 1 : 0;
    }
    return n / 6;
}

// minimum completion sets of size <= cap (0 or 1) over the given pairs, by exhaustion
std::set<EdgeSet> completions(const Graph &g, const std::vector<Edge> &pairs, int cap)
{
    std::set<EdgeSet> out;
    if (oracle::prison_free(g))
        return {EdgeSet{}};
    for (std::size_t i = 0; i < pairs.size() && cap >= 1; ++i) {
        Graph h = g;
        h.add_edge(pairs[i]);
        if (oracle::prison_free(h))
            out.insert({pairs[i]});
    }
    return out;
}

std::vector<Edge> allowed_pairs(const AnnotatedGraph &ag)
{
    std::vector<Edge> out;
    for (const auto &e : complement(ag.graph).edges())
        if (!ag.is_forbidden(e))
            out.push_back(e);
    return out;
}

Graph k4_graph()
{
    return complete_graph(4);
}

GapInstance tiny_gap(int ell)
{
    return reduce_vc_to_gap({k4_graph(), 3}, ell);
}

}

TEST_CASE("propagational component")
{
    AnnotatedGraph host;
    auto h = build_propagational(host);
    CHECK(host.graph.order() == 5);
    CHECK(host.graph.size() == 7);
    CHECK(oracle::prison_free(host.graph));
    const Edge e1 = h.labels.at("e1"), e2 = h.labels.at("e2"), e3 = h.labels.at("e3");
    for (int mask = 0; mask < 8; ++mask) {
        Graph g = host.graph;
        if (mask & 1)
            g.add_edge(e1);
        if (mask & 2)
            g.add_edge(e2);
        if (mask & 4)
            g.add_edge(e3);
        if ((mask & 1) && oracle::prison_free(g))
            CHECK((mask & 6) != 0);
        if (mask == 0)
            CHECK(oracle::prison_free(g));
    }
}

TEST_CASE("forbidden-edge realization")
{
    AnnotatedGraph host(Graph(7));
    auto h = build_forbidden_realization(host, 0, 1, 1);
    CHECK(h.vertices.size() == 6);
    CHECK(host.graph.order() == 13);
    CHECK(naive_k4(host.graph) == 2);
    CHECK_THROWS(build_forbidden_realization(host, 0, h.vertices[0], 1));

    // on a 7-vertex host with a prison, adding uv costs more than k = 1
    Graph base = oracle::prison();
    base.add_vertices(2);
    base.add_edge(3, 5);
    base.add_edge(4, 6);
    AnnotatedGraph symbolic(base);
    symbolic.forbid(Edge(0, 1));
    Graph realized = realize_forbidden(symbolic, 1);
    CHECK(realized.order() == 13);
    Graph forced = realized;
    forced.add_edge(0, 1);
    CHECK(oracle::min_toggles(forced, complement(forced).edges(), 1) < 0);

    // solutions of size <= 1 agree between the symbolic and realized versions
    auto sym = completions(symbolic.graph, allowed_pairs(symbolic), 1);
    auto real = completions(realized, complement(realized).edges(), 1);
    CHECK(sym == real);
    CHECK(sym == std::set<EdgeSet>{{Edge(0, 2)}});

    std::mt19937_64 rng(79);
    for (int round = 0; round < 20; ++round) {
        AnnotatedGraph ag(oracle::random_graph(7, 0.7, rng));
        auto non = complement(ag.graph).edges();
        if (non.empty())
            continue;
        ag.forbid(non[rng() % non.size()]);
        CHECK(completions(ag.graph, allowed_pairs(ag), 1) ==
              completions(realize_forbidden(ag, 1), complement(realize_forbidden(ag, 1)).edges(), 1));
    }

    AnnotatedGraph plain(oracle::prison());
    CHECK(realize_forbidden(plain, 3) == plain.graph);
}

TEST_CASE("cloning component")
{
    AnnotatedGraph host;
    auto x = build_cloning(host, 4);
    CHECK(host.graph.order() == 12);
    CHECK(host.forbidden.size() == 4);
    CHECK(oracle::prison_free(host.graph));
    CHECK(naive_k4(host.graph) == 0);

    const auto &a = x.roles.at("a");
    const auto &c = x.roles.at("c");
    Graph active = host.graph;
    active.add_edge(a[0], c[0]);
    CHECK(naive_k4(active) == 1);

    CHECK(cloning_pair(x, 1) == Port{a[0], c[0]});
    CHECK_THROWS(cloning_pair(x, 5));
    AnnotatedGraph small;
    CHECK_THROWS(build_cloning(small, 3));

    for (std::size_t ell : {4u, 5u, 6u, 8u}) {
        AnnotatedGraph hg;
        auto xc = build_cloning(hg, ell);
        const auto &ra = xc.roles.at("a");
        const auto &rb = xc.roles.at("b");
        const auto &rc = xc.roles.at("c");
        // every 5-tuple induces the propagational pattern
        for (std::size_t i = 0; i < ell; ++i) {
            std::size_t n = (i + 1) % ell;
            std::array<Vertex, 5> t{ra[n], rc[n], rb[i], rc[i], ra[i]};
            std::set<std::pair<int, int>> missing;
            for (int p = 0; p < 5; ++p)
                for (int q = p + 1; q < 5; ++q)
                    if (!hg.graph.has_edge(t[p], t[q]))
                        missing.insert({p, q});
            CHECK(missing == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {3, 4}});
        }
        auto st = propagate_forced(hg, {Edge(ra[0], rc[0])});
        CHECK(!st.conflict);
        for (std::size_t i = 0; i < ell; ++i)
            CHECK(st.added.count(Edge(ra[i], rc[i])));
    }
}

TEST_CASE("disjoint propagational component")
{
    AnnotatedGraph host;
    auto d = build_disjoint_propagational(host);
    CHECK(host.graph.order() == 11);
    CHECK(host.graph.size() == 21);
    CHECK(oracle::prison_free(host.graph));
    CHECK(naive_k4(host.graph) == 0);
    const Edge e1 = d.labels.at("e1"), e2 = d.labels.at("e2"), e3 = d.labels.at("e3");
    std::set<Vertex> ends{e1.u, e1.v, e2.u, e2.v, e3.u, e3.v};
    CHECK(ends.size() == 6);

    // each of the three five-sets is a propagational component
    const auto &v = d.vertices;
    for (auto five : {std::array<int, 5>{1, 2, 3, 4, 5}, std::array<int, 5>{4, 5, 6, 7, 8},
                      std::array<int, 5>{3, 5, 9, 10, 11}}) {
        int missing = 0;
        for (int p = 0; p < 5; ++p)
            for (int q = p + 1; q < 5; ++q)
                missing += host.graph.has_edge(v[five[p] - 1], v[five[q] - 1]) ? 0 : 1;
        CHECK(missing == 3);
    }

    AnnotatedGraph blocked = host;
    blocked.forbid(e2);
    blocked.forbid(e3);
    CHECK(propagate_forced(blocked, {e1}).conflict);
    Graph with_input = blocked.graph;
    with_input.add_edge(e1);
    AnnotatedGraph seeded = blocked;
    seeded.graph = with_input;
    CHECK(!brute_force_completion(seeded, 4));

    // sharing existing pairs
    AnnotatedGraph shared(Graph(6));
    auto s = build_disjoint_propagational(shared, {Port{0, 1}, Port{2, 3}, Port{4, 5}});
    CHECK(shared.graph.order() == 11);
    CHECK(s.labels.at("e1") == Edge(0, 1));
    CHECK(s.labels.at("e2") == Edge(2, 3));
    CHECK(s.labels.at("e3") == Edge(4, 5));
    CHECK_THROWS(build_disjoint_propagational(shared, {Port{0, 1}, Port{1, 2}, std::nullopt}));
}

TEST_CASE("gap reduction on K4")
{
    auto gi = tiny_gap(6);
    const auto &g = gi.graph.graph;
    CHECK(g.order() == 3 * 4 * 6 + 3 * 7 + 5 * 6);
    CHECK(naive_k4(g) == 1);
    Graph minus = g;
    minus.remove_edge(gi.activation());
    CHECK(naive_k4(minus) == 0);
    CHECK(gi.activation() == Edge(gi.x0.a[6], gi.x0.c[6]));

    // forbidden count: S parts of sizes 12, 12, 24, 24, the X0 chain pairs and two per DPC;
    // chain pairs of the X_i already lie inside S3 or S4
    auto pairs = [](std::size_t n) { return n * (n - 1) / 2; };
    CHECK(gi.graph.forbidden.size() == 2 * pairs(12) + 2 * pairs(24) + 7 + 2 * 6);

    CHECK(gi.k == 1053 + 36 * 3 * 6 * 7 + 144 * 49);
    CHECK(gi.k == 12645);
    CHECK(gi.g == (13 * 24 * 24 / 4 - 9 * 24) - 12645);

    // each vertex of H uses its three slots once
    std::map<std::pair<Vertex, std::size_t>, int> uses;
    for (const auto &d : gi.dpc) {
        ++uses[{d.h_edge.u, d.slot_a}];
        ++uses[{d.h_edge.v, d.slot_b}];
    }
    CHECK(uses.size() == 12);
    for (const auto &[key, n] : uses)
        CHECK(n == 1);

    auto back = GapInstance::from_annotated(parse_annotated(write_annotated(gi.graph)));
    CHECK(back.roles() == gi.roles());
    CHECK(back.graph == gi.graph);

    Graph path(4);
    path.add_edge(0, 1);
    CHECK_THROWS(reduce_vc_to_gap({path, 1}, 6));
    CHECK_THROWS(reduce_vc_to_gap({k4_graph(), 3}, 7));
    CHECK_THROWS(reduce_vc_to_gap({k4_graph(), 3}, 4));
}

TEST_CASE("constructive completion from a cover")
{
    auto gi = tiny_gap(6);
    for (std::vector<Vertex> cover :
         {std::vector<Vertex>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2, 3}}) {
        auto sol = constructive_completion_from_cover(gi, cover);
        const auto t = static_cast<std::int64_t>(cover.size());
        CHECK(verify_solution(gi.graph, sol));
        CHECK(static_cast<std::int64_t>(sol.size()) <= gap_upper_bound(t, 6, 6));
        CHECK(static_cast<std::int64_t>(sol.size()) >= gap_lower_bound(t, 6));
        for (const auto &e : sol.edits)
            CHECK(!gi.graph.is_forbidden(e));
    }
    CHECK(gap_upper_bound(3, 6, 6) == 12645);
    CHECK(gap_lower_bound(3, 6) == 891);
    CHECK_THROWS(constructive_completion_from_cover(gi, {0, 1}));
}

TEST_CASE("composition parameters")
{
    CHECK(composition_height(1) == 0);
    CHECK(composition_height(2) == 1);
    CHECK(composition_height(3) == 2);
    CHECK(composition_height(4) == 2);
    CHECK(composition_height(5) == 3);
    CHECK(composition_gap(3, 6, 46, 1) == (84 + 6) * (9 * 46) + 90 * 90);

    // brute search for the smallest even ell, scaled by 4
    auto fits = [](std::int64_t ell, int h) {
        auto g = composition_gap(3, 6, ell, h);
        return 13 * 16 * ell * ell - 36 * 3 * ell > 13 * 9 * ell * ell + 4 * g;
    };
    for (std::size_t t : {2u, 3u}) {
        int h = composition_height(t);
        std::int64_t ell = 6;
        while (!fits(ell, h))
            ell += 2;
        CHECK(minimum_composition_ell(3, 6, t) == ell);
    }
    CHECK(minimum_composition_ell(3, 6, 2) == 46);
}

TEST_CASE("composition wiring and pruning")
{
    auto small = tiny_gap(6);
    CHECK_THROWS_WITH_AS(compose({small, small}), doctest::Contains("46"), std::invalid_argument);
    CHECK_THROWS(compose({small, tiny_gap(8)}));

    for (std::size_t t : {2u, 3u}) {
        const int ell = minimum_composition_ell(3, 6, t);
        auto gi = tiny_gap(ell);
        std::vector<GapInstance> ins(t, gi);
        auto ci = compose(ins);
        CHECK(composition_problem(ci).empty());
        CHECK(ci.h == (t == 2 ? 1 : 2));
        CHECK(ci.dpc.size() == (t == 2 ? 1u : 3u));
        std::size_t unused = 0;
        for (std::size_t i = 0; i < ci.leaves.size(); ++i)
            if (!ci.leaves[i]) {
                ++unused;
                CHECK(ci.graph.is_forbidden(Edge(ci.ports[ci.leaves.size() + i].first,
                                                 ci.ports[ci.leaves.size() + i].second)));
            }
        CHECK(unused == (t == 2 ? 0u : 1u));
        for (const auto &e : ci.activations)
            CHECK(!ci.graph.graph.has_edge(e));
        CHECK(ci.graph.graph.has_edge(*ci.graph.activation));
        CHECK(ci.k == 13 * (3 * ell) * (3 * ell) / 4 + composition_gap(3, 6, ell, ci.h));
        CHECK(ci.graph.g == composition_gap(3, 6, ell, ci.h));

        for (std::size_t leaf = 0; leaf < t; ++leaf) {
            auto pruned = prune_to_leaf(ci, leaf);
            auto st = propagate_forced(pruned, {});
            CHECK(!st.conflict);
            CHECK(st.added.count(ci.activations[leaf]));
        }
    }
}
