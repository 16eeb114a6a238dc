#pragma once

#include "pfree/graph.hh"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pfree {

enum class FiveKind { Prison, StrictSupergraph, Other };

std::string to_string(FiveKind kind);

struct FiveClass {
    std::array<Vertex, 5> vertices{};
    FiveKind kind = FiveKind::Other;
    std::vector<Edge> non_edges;
};

struct PrisonWitness {
    std::array<Vertex, 5> vertices{};   // sorted
    std::array<Edge, 2> non_edges{};    // sorted; they share a vertex

    std::vector<Edge> edges() const;    // the 8 prison edges, sorted
    friend auto operator<=>(const PrisonWitness &, const PrisonWitness &) = default;
    friend bool operator==(const PrisonWitness &, const PrisonWitness &) = default;
};

struct MultipartiteComponent {
    std::vector<Vertex> vertices;               // sorted
    std::vector<std::vector<Vertex>> classes;   // each sorted, ordered by smallest member

    std::size_t class_of(Vertex v) const;       // npos-like size() if absent
    friend bool operator==(const MultipartiteComponent &, const MultipartiteComponent &) = default;
};

FiveClass classify_five(const Graph &g, std::array<Vertex, 5> vs);

// Calls f for every induced prison; f returns false to stop early.
void for_each_prison(const Graph &g, const std::function<bool(const PrisonWitness &)> &f);
// Only the prisons containing both endpoints of the edge {a,b}.
void for_each_prison_containing(const Graph &g, Vertex a, Vertex b,
                                const std::function<bool(const PrisonWitness &)> &f);

bool has_prison(const Graph &g);
std::optional<PrisonWitness> find_prison(const Graph &g);
std::vector<PrisonWitness> enumerate_prisons(const Graph &g);

bool edge_in_strict_supergraph(const Graph &g, const Edge &e);

// 5-sets containing a and b with at most max_missing non-edges (a,b may be
// adjacent or not). Vertices are passed sorted; f returns false to stop.
void for_each_dense_five(const Graph &g, Vertex a, Vertex b, std::size_t max_missing,
                         const std::function<bool(const std::array<Vertex, 5> &)> &f);

namespace detail {
// Adjacency packed into one word per vertex; n <= 64.
bool has_prison_small(const std::uint64_t *adj, std::size_t n);
std::vector<std::uint64_t> pack_small(const Graph &g);
}

// Cliques of the given size in lexicographic order; f returns false to stop.
void for_each_clique(const Graph &g, std::size_t size,
                     const std::function<bool(const std::vector<Vertex> &)> &f);
std::size_t count_cliques(const Graph &g, std::size_t size);

bool is_complete_multipartite(const Graph &g, std::span<const Vertex> vs);
// Partition of vs into classes if G[vs] is complete multipartite.
std::optional<MultipartiteComponent> multipartite_structure(const Graph &g, std::span<const Vertex> vs);
std::vector<MultipartiteComponent> cmd(const Graph &g, std::size_t p);

std::uint64_t multipartite_edge_count(std::span<const std::uint64_t> sizes);
std::uint64_t multipartite_edge_count(std::initializer_list<std::uint64_t> sizes);

// Number of classes of f met by N(v).
std::size_t classes_seen(const Graph &g, const MultipartiteComponent &f, Vertex v);

struct StructureViolation {
    MultipartiteComponent component;
    Vertex vertex = 0;
    std::size_t class_a = 0, class_b = 0;
};

struct StructureCheck {
    bool holds = true;
    std::optional<StructureViolation> violation;
};

StructureCheck check_structure_theorem(const Graph &g);

struct Cmd4Report {
    bool prison_free = true;
    bool holds = true;
    int failed_item = 0;          // 1..3 when !holds
    std::string detail;
    std::size_t components = 0;
    std::size_t k4_count = 0;
};

Cmd4Report check_cmd4_properties(const Graph &g);

}
