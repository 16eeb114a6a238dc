#include "oracle.hh"
#include "pfree/graph.hh"
#include "pfree/io.hh"

#include <doctest.h>

#include <random>

using namespace pfree;

TEST_CASE("from_edge_list")
{
    auto empty = from_edge_list(0, {});
    CHECK(empty.order() == 0);
    CHECK(empty.size() == 0);

    auto k5 = complete_graph(5);
    CHECK(k5.size() == 10);

    auto p = from_edge_list(5, {{0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(p == oracle::prison());

    auto dup = from_edge_list(3, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.size() == 1);

    CHECK_THROWS_AS(from_edge_list(3, {{0, 3}}), std::out_of_range);
    CHECK_THROWS_AS(from_edge_list(3, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("complement")
{
    auto k5 = complete_graph(5);
    CHECK(complement(k5).size() == 0);

    auto c = complement(oracle::prison());
    CHECK(c.size() == 2);
    CHECK(c.has_edge(0, 1));
    CHECK(c.has_edge(0, 2));
    CHECK(c.degree(3) == 0);
    CHECK(c.degree(4) == 0);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto g = oracle::random_graph(9, 0.4, rng);
        CHECK(complement(complement(g)) == g);
        CHECK(g.size() + complement(g).size() == 36);
    }
}

TEST_CASE("common_neighborhood")
{
    CHECK(common_neighborhood(complete_graph(5), Edge(0, 1)) == std::vector<Vertex>{2, 3, 4});
    CHECK(common_neighborhood(Graph(4), Edge(0, 1)).empty());
    CHECK(common_neighborhood(oracle::prison(), Edge(3, 4)) == std::vector<Vertex>{0, 1, 2});
    CHECK_THROWS(common_neighborhood(Graph(3), Edge(0, 5)));
}

TEST_CASE("induced_subgraph")
{
    auto k3 = induced_subgraph(complete_graph(5), std::vector<Vertex>{0, 1, 2});
    CHECK(k3.graph == complete_graph(3));

    auto none = induced_subgraph(oracle::prison(), std::vector<Vertex>{});
    CHECK(none.graph.order() == 0);

    // dropping the degree-3 vertex 1 leaves K4 minus {0,2}
    auto d = induced_subgraph(oracle::prison(), std::vector<Vertex>{0, 2, 3, 4});
    CHECK(d.graph.size() == 5);
    CHECK(!d.graph.has_edge(d.new_ids.at(0), d.new_ids.at(2)));
    CHECK(d.old_ids == std::vector<Vertex>{0, 2, 3, 4});

    CHECK_THROWS(induced_subgraph(complete_graph(3), std::vector<Vertex>{0, 7}));
}

TEST_CASE("apply_edits")
{
    auto k5 = complete_graph(5);
    auto p = apply_edits(k5, {Edge(0, 1), Edge(0, 2)}, {});
    CHECK(p == oracle::prison());
    CHECK(k5.size() == 10);
    CHECK(apply_edits(p, {}, {Edge(0, 1), Edge(0, 2)}) == k5);
    CHECK(apply_edits(p, {}, {}) == p);

    CHECK_THROWS(apply_edits(p, {Edge(0, 1)}, {}));
    CHECK_THROWS(apply_edits(p, {}, {Edge(3, 4)}));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto g = oracle::random_graph(8, 0.5, rng);
        EdgeSet del, add;
        for (const auto &e : g.edges())
            if (rng() % 3 == 0)
                del.insert(e);
        for (const auto &e : complement(g).edges())
            if (rng() % 3 == 0)
                add.insert(e);
        auto h = apply_edits(g, del, add);
        CHECK(apply_edits(h, add, del) == g);
    }
}

TEST_CASE("edge list round trip and diagnostics")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        auto g = oracle::random_graph(7, 0.5, rng);
        auto text = write_edge_list(g);
        CHECK(parse_edge_list(text) == g);
        CHECK(write_edge_list(parse_edge_list(text)) == text);
    }
    CHECK(parse_edge_list("# comment\n\n3 1\n# more\n0 2\n").has_edge(0, 2));

    auto line_of = [](const std::string &text) {
        try {
            parse_edge_list(text);
        }
        catch (const ParseError &err) {
            return err.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("3\n") == 1);
    CHECK(line_of("3 2\n0 1\n1 1\n") == 3);
    CHECK(line_of("3 1\n0 9\n") == 2);
    CHECK(line_of("3 1\n0 x\n") == 2);
    CHECK(line_of("3 2\n0 1\n") == 2);
}

TEST_CASE("annotated JSON round trip")
{
    AnnotatedGraph ag(oracle::prison());
    ag.forbid(Edge(0, 1));
    ag.name("e1", Edge(0, 2));
    ag.name("e2", Edge(0, 1));
    ag.activation = Edge(3, 4);
    ag.k = 3;
    ag.g = -2;
    ag.meta = {{"kind", "test"}};
    auto text = write_annotated(ag);
    auto back = parse_annotated(text);
    CHECK(back == ag);
    CHECK(write_annotated(back) == text);

    AnnotatedGraph bare(Graph(2));
    CHECK(parse_annotated(write_annotated(bare)) == bare);

    CHECK_THROWS_AS(parse_annotated("{\"n\": 3, \"edges\": [[0,1]], \"forbidden\": [[0,1]]}"), ParseError);
    CHECK_THROWS_AS(parse_annotated("{\"n\": 3,\n \"edges\": [[0,1]"), ParseError);
    CHECK_THROWS_AS(ag.forbid(Edge(3, 4)), std::invalid_argument);
}
