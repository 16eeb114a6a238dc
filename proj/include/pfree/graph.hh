#pragma once

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfree {

using Vertex = std::uint32_t;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

// Unordered vertex pair, stored with the smaller id first.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool contains(Vertex x) const { return x == u || x == v; }
    Vertex other(Vertex x) const { return x == u ? v : u; }

    friend auto operator<=>(const Edge &, const Edge &) = default;
    friend bool operator==(const Edge &, const Edge &) = default;
};

using EdgeSet = std::set<Edge>;

std::string to_string(const Edge &e);

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    std::size_t order() const { return rows_.size(); }
    std::size_t size() const { return edge_count_; }

    bool has_edge(Vertex a, Vertex b) const { return rows_[a].test(b); }
    bool has_edge(const Edge &e) const { return has_edge(e.u, e.v); }
    const VertexSet &neighbors(Vertex v) const { return rows_[v]; }
    std::size_t degree(Vertex v) const { return rows_[v].count(); }

    // Mutators; throw on loops, out-of-range ids, or (for the strict
    // variants) adding a present edge / removing an absent one.
    void add_edge(Vertex a, Vertex b);
    void remove_edge(Vertex a, Vertex b);
    void add_edge(const Edge &e) { add_edge(e.u, e.v); }
    void remove_edge(const Edge &e) { remove_edge(e.u, e.v); }
    bool set_edge(Vertex a, Vertex b, bool present);

    Vertex add_vertices(std::size_t count);

    std::vector<Edge> edges() const;
    EdgeSet edge_set() const;
    std::vector<Vertex> neighbor_list(Vertex v) const;

    VertexSet empty_set() const { return VertexSet(order()); }
    VertexSet full_set() const;

    void check_vertex(Vertex v) const;

    friend bool operator==(const Graph &a, const Graph &b) { return a.rows_ == b.rows_; }

private:
    std::vector<VertexSet> rows_;
    std::size_t edge_count_ = 0;
};

Graph from_edge_list(std::size_t n, std::span<const Edge> pairs);
Graph from_edge_list(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs);
Graph complete_graph(std::size_t n);
Graph complement(const Graph &g);
std::vector<Vertex> common_neighborhood(const Graph &g, const Edge &e);

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> old_ids;              // new id -> old id
    std::map<Vertex, Vertex> new_ids;         // old id -> new id
};

InducedSubgraph induced_subgraph(const Graph &g, std::span<const Vertex> vs);
InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &vs);

Graph apply_edits(const Graph &g, const EdgeSet &remove, const EdgeSet &add);

std::vector<Vertex> to_vector(const VertexSet &s);
VertexSet to_set(std::size_t n, std::span<const Vertex> vs);
VertexSet to_set(std::size_t n, std::initializer_list<Vertex> vs);

template <typename F>
void for_each_vertex(const VertexSet &s, F &&f)
{
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
        f(static_cast<Vertex>(v));
}

struct AnnotatedGraph {
    Graph graph;
    std::map<std::string, Edge> named;
    EdgeSet forbidden;
    std::optional<Edge> activation;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> g;
    nlohmann::json meta;   // null unless a builder records roles

    AnnotatedGraph() = default;
    explicit AnnotatedGraph(Graph gr) : graph(std::move(gr)) {}

    bool is_forbidden(const Edge &e) const { return forbidden.count(e) > 0; }
    void forbid(const Edge &e);
    void name(const std::string &label, const Edge &e);

    // Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    friend bool operator==(const AnnotatedGraph &, const AnnotatedGraph &) = default;
};

}
