#pragma once

#include "pfree/graph.hh"
#include "pfree/solvers.hh"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfree {

// Raised by builders when a freshly built instance fails its own checks.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GadgetHandle {
    std::vector<Vertex> vertices;
    std::map<std::string, Edge> labels;
    std::map<std::string, std::vector<Vertex>> roles;
};

// Ordered pair of host vertices standing in for a named pair of a gadget.
using Port = std::pair<Vertex, Vertex>;

// 5 vertices, 7 edges; e1 = (3,4), e2 = (0,1), e3 = (1,2) in local offsets.
GadgetHandle build_propagational(AnnotatedGraph &host);

// 3(k+1) fresh vertices making uv too expensive to add within budget k.
GadgetHandle build_forbidden_realization(AnnotatedGraph &host, Vertex u, Vertex v, int k);

// Roles "a", "b", "c" (index i); labels "e1[i]" = a_i c_i, "e2[i]" = a_{i+1} c_{i+1},
// "e3[i]" = c_{i+1} b_i (forbidden).
GadgetHandle build_cloning(AnnotatedGraph &host, std::size_t ell);

// Chain pair X.e_j = a_{j-1} c_{j-1}, 1-based as in the figure.
Port cloning_pair(const GadgetHandle &x, std::size_t j);

struct DpcPorts {
    std::optional<Port> input;   // vertices 1, 2
    std::optional<Port> out2;    // vertices 10, 11
    std::optional<Port> out3;    // vertices 6, 8
};

// Role "v" lists the 11 vertices in figure order (v[0] is vertex 1).
GadgetHandle build_disjoint_propagational(AnnotatedGraph &host, const DpcPorts &ports = {});

// Each symbolic forbidden pair replaced by a realization gadget of budget k.
Graph realize_forbidden(const AnnotatedGraph &g, int k);

struct VCInstance {
    Graph h;
    int t = 0;
};

struct CloningRoles {
    std::vector<Vertex> a, b, c;
};

struct DpcRoles {
    Edge h_edge;
    std::array<Vertex, 11> v{};
    std::size_t slot_a = 0, slot_b = 0;   // chain indices j used in X_a and X_b
};

struct GapInstance {
    AnnotatedGraph graph;   // activation present; meta holds the roles below
    std::int64_t k = 0;
    std::int64_t g = 0;
    int ell = 0;
    int t = 0;
    std::size_t n_h = 0;
    std::vector<Edge> h_edges;
    CloningRoles x0;
    std::vector<CloningRoles> x;
    std::vector<std::array<std::size_t, 3>> slots;
    std::vector<DpcRoles> dpc;
    std::array<std::vector<Vertex>, 4> s;

    Edge activation() const { return *graph.activation; }
    nlohmann::json roles() const;
    static GapInstance from_annotated(const AnnotatedGraph &ag);
};

// 13(tl)^2/4 + 36tl(m+1) + 144(m+1)^2 and 13(tl)^2/4 - 9tl
std::int64_t gap_upper_bound(std::int64_t t, std::int64_t ell, std::int64_t m);
std::int64_t gap_lower_bound(std::int64_t t, std::int64_t ell);

GapInstance reduce_vc_to_gap(const VCInstance &vc, int ell);

Solution constructive_completion_from_cover(const GapInstance &gi, const std::vector<Vertex> &cover);

struct CompositionInstance {
    AnnotatedGraph graph;
    std::int64_t k = 0;
    int h = 0;
    std::size_t t = 0;
    int ell = 0;
    std::vector<Vertex> offsets;                    // per input instance
    std::vector<Port> ports;                        // heap index 1..2^{h+1}-1; [0] unused
    std::vector<std::array<Vertex, 11>> dpc;        // internal node x at [x-1]
    std::vector<std::optional<std::size_t>> leaves; // leaf slot -> input instance
    std::vector<Edge> activations;                  // per input instance, in composed ids

    nlohmann::json roles() const;
};

std::int64_t composition_gap(std::int64_t k0, std::int64_t m0, std::int64_t ell, int h);
int composition_height(std::size_t t);
// Smallest even l >= 6 with 13((k0+1)l)^2/4 - 9 k0 l > 13(k0 l)^2/4 + g.
int minimum_composition_ell(std::int64_t k0, std::int64_t m0, std::size_t t);

CompositionInstance compose(const std::vector<GapInstance> &instances);

// Empty when the wiring is as intended, else a description of the first problem.
std::string composition_problem(const CompositionInstance &ci);

// Copy of the composed graph with every output leaving the root-to-leaf path
// towards `leaf` forbidden.
AnnotatedGraph prune_to_leaf(const CompositionInstance &ci, std::size_t leaf);

}
