#include "pfree/graph.hh"

#include <algorithm>

namespace pfree {

std::string to_string(const Edge &e)
{
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

Graph::Graph(std::size_t n) : rows_(n, VertexSet(n)) {}

void Graph::check_vertex(Vertex v) const
{
    if (v >= order())
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n = " +
                                std::to_string(order()) + ")");
}

bool Graph::set_edge(Vertex a, Vertex b, bool present)
{
    check_vertex(a);
    check_vertex(b);
    if (a == b)
        throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
    if (rows_[a].test(b) == present)
        return false;
    rows_[a].set(b, present);
    rows_[b].set(a, present);
    if (present)
        ++edge_count_;
    else
        --edge_count_;
    return true;
}

void Graph::add_edge(Vertex a, Vertex b)
{
    if (!set_edge(a, b, true))
        throw std::invalid_argument("edge " + to_string(Edge(a, b)) + " already present");
}

void Graph::remove_edge(Vertex a, Vertex b)
{
    if (!set_edge(a, b, false))
        throw std::invalid_argument("edge " + to_string(Edge(a, b)) + " not present");
}

Vertex Graph::add_vertices(std::size_t count)
{
    auto first = static_cast<Vertex>(order());
    std::size_t n = order() + count;
    for (auto &row : rows_)
        row.resize(n);
    rows_.resize(n, VertexSet(n));
    return first;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < order(); ++u)
        for (auto v = rows_[u].find_next(u); v != VertexSet::npos; v = rows_[u].find_next(v))
            out.emplace_back(u, static_cast<Vertex>(v));
    return out;
}

EdgeSet Graph::edge_set() const
{
    auto es = edges();
    return EdgeSet(es.begin(), es.end());
}

std::vector<Vertex> Graph::neighbor_list(Vertex v) const
{
    return to_vector(rows_[v]);
}

VertexSet Graph::full_set() const
{
    VertexSet s(order());
    s.set();
    return s;
}

Graph from_edge_list(std::size_t n, std::span<const Edge> pairs)
{
    Graph g(n);
    for (const auto &e : pairs)
        g.set_edge(e.u, e.v, true);
    return g;
}

Graph from_edge_list(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs)
{
    Graph g(n);
    for (auto [a, b] : pairs)
        g.set_edge(a, b, true);
    return g;
}

Graph complete_graph(std::size_t n)
{
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph complement(const Graph &g)
{
    Graph h(g.order());
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v))
                h.add_edge(u, v);
    return h;
}

std::vector<Vertex> common_neighborhood(const Graph &g, const Edge &e)
{
    g.check_vertex(e.u);
    g.check_vertex(e.v);
    if (e.u == e.v)
        throw std::invalid_argument("common_neighborhood needs two distinct vertices");
    return to_vector(g.neighbors(e.u) & g.neighbors(e.v));
}

InducedSubgraph induced_subgraph(const Graph &g, std::span<const Vertex> vs)
{
    InducedSubgraph r;
    r.old_ids.assign(vs.begin(), vs.end());
    std::sort(r.old_ids.begin(), r.old_ids.end());
    r.old_ids.erase(std::unique(r.old_ids.begin(), r.old_ids.end()), r.old_ids.end());
    for (std::size_t i = 0; i < r.old_ids.size(); ++i) {
        g.check_vertex(r.old_ids[i]);
        r.new_ids[r.old_ids[i]] = static_cast<Vertex>(i);
    }
    r.graph = Graph(r.old_ids.size());
    for (std::size_t i = 0; i < r.old_ids.size(); ++i)
        for (std::size_t j = i + 1; j < r.old_ids.size(); ++j)
            if (g.has_edge(r.old_ids[i], r.old_ids[j]))
                r.graph.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return r;
}

InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &vs)
{
    auto list = to_vector(vs);
    return induced_subgraph(g, list);
}

Graph apply_edits(const Graph &g, const EdgeSet &remove, const EdgeSet &add)
{
    for (const auto &e : remove)
        if (add.count(e))
            throw std::invalid_argument("pair " + to_string(e) + " both deleted and added");
    Graph h = g;
    for (const auto &e : remove)
        h.remove_edge(e);
    for (const auto &e : add)
        h.add_edge(e);
    return h;
}

std::vector<Vertex> to_vector(const VertexSet &s)
{
    std::vector<Vertex> out;
    out.reserve(s.count());
    for_each_vertex(s, [&](Vertex v) { out.push_back(v); });
    return out;
}

VertexSet to_set(std::size_t n, std::span<const Vertex> vs)
{
    VertexSet s(n);
    for (Vertex v : vs) {
        if (v >= n)
            throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
        s.set(v);
    }
    return s;
}

VertexSet to_set(std::size_t n, std::initializer_list<Vertex> vs)
{
    return to_set(n, std::span<const Vertex>(vs.begin(), vs.size()));
}

void AnnotatedGraph::forbid(const Edge &e)
{
    graph.check_vertex(e.v);
    if (e.u == e.v)
        throw std::invalid_argument("forbidden pair is a loop");
    if (graph.has_edge(e))
        throw std::invalid_argument("cannot forbid present edge " + to_string(e));
    forbidden.insert(e);
}

void AnnotatedGraph::name(const std::string &label, const Edge &e)
{
    graph.check_vertex(e.v);
    if (e.u == e.v)
        throw std::invalid_argument("named pair is a loop");
    auto [it, fresh] = named.emplace(label, e);
    if (!fresh && it->second != e)
        throw std::invalid_argument("label '" + label + "' already names " + to_string(it->second));
}

void AnnotatedGraph::validate() const
{
    auto valid_pair = [&](const Edge &e, const std::string &what) {
        if (e.u == e.v || e.v >= graph.order())
            throw std::invalid_argument(what + " pair " + to_string(e) + " is not a vertex pair");
    };
    for (const auto &[label, e] : named)
        valid_pair(e, "named '" + label + "'");
    for (const auto &e : forbidden) {
        valid_pair(e, "forbidden");
        if (graph.has_edge(e))
            throw std::invalid_argument("forbidden pair " + to_string(e) + " is an edge");
    }
    if (activation)
        valid_pair(*activation, "activation");
}

}
