#pragma once

#include "pfree/graph.hh"
#include "pfree/structure.hh"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pfree {

using BigInt = boost::multiprecision::cpp_int;

// Raised when a property that the rules should guarantee does not hold.
class StructuralAssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TraceEvent {
    std::string rule;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;
    int k_after = 0;
    std::string note;
};

nlohmann::json to_json(const TraceEvent &ev);
nlohmann::json trace_to_json(const std::vector<TraceEvent> &trace);

struct NoInstance {
    std::string reason;
    std::vector<TraceEvent> trace;
};

struct Modulator {
    std::vector<Vertex> vertices;
    std::vector<PrisonWitness> family;
    std::vector<PrisonWitness> dropped;
};

BigInt sunflower_threshold(int k);   // 8! (k+1)^8

std::variant<NoInstance, Modulator> compute_modulator(const Graph &g, int k);
// Same procedure with an explicit loop threshold; used to exercise the
// sunflower loop on instances far below the real threshold.
std::variant<NoInstance, Modulator> compute_modulator_with_threshold(const Graph &g, int k, const BigInt &threshold);

struct Rr1Result {
    Graph graph;
    Edge deleted;
};

struct Rr2Result {
    Graph graph;
    int k = 0;
    Edge deleted;
    PrisonWitness prison;
};

struct Rr3Result {
    Graph graph;
    EdgeSet removed;
    MultipartiteComponent component;
};

std::optional<Rr1Result> apply_rr1(const Graph &g, const VertexSet &s);
std::optional<Rr2Result> apply_rr2(const Graph &g, int k, const VertexSet &s);
std::optional<Rr3Result> apply_rr3(const Graph &g, const VertexSet &s);

// cmd_3 of G - S, in the ids of g.
std::vector<MultipartiteComponent> cmd3_outside(const Graph &g, const VertexSet &s);

std::map<Edge, EdgeSet> compute_B_partition(const Graph &g, const VertexSet &s);

enum class FamilyKind { Cmd3, BipartiteBlock };

struct FamilyMember {
    MultipartiteComponent component;
    FamilyKind kind = FamilyKind::Cmd3;
    std::optional<Edge> label;   // the edge e of G[S] for a block B_e
    EdgeSet edges;
};

struct FFamily {
    std::vector<FamilyMember> members;
};

FFamily compute_F_family(const Graph &g, const VertexSet &s);

struct ClassTyping {
    std::vector<std::size_t> type1;   // class indices
    std::vector<std::size_t> type2;
};

ClassTyping classify_classes(const MultipartiteComponent &f, const Graph &g, const VertexSet &s);

struct MarkedSets {
    std::vector<std::vector<Vertex>> per_component;
    std::vector<Vertex> outside;
};

MarkedSets mark(const Graph &g, const VertexSet &s, const FFamily &fam, int k);

struct RuleStep {
    std::string rule;
    const Graph &before;
    int k_before;
    const Graph &after;
    int k_after;
};

struct KernelResult {
    Graph graph;
    int budget = 0;
    std::vector<Vertex> kept;    // kernel vertex i is vertex kept[i] of the input
    bool trivial = false;        // answered during preprocessing
    Graph reduced;               // after rule exhaustion, before marking
    Modulator modulator;
    FFamily family;
    std::vector<ClassTyping> typing;
    MarkedSets marks;
    std::vector<TraceEvent> trace;
};

std::variant<NoInstance, KernelResult> kernelize(const Graph &g, int k,
                                                 const std::function<void(const RuleStep &)> &observer = {});

// |S| + |S|^4 (2k+5) + |F| (|S|^5 (2k+5) + (2k+5)^2)
BigInt kernel_size_bound(std::size_t s, std::size_t family, int k);
BigInt family_size_bound(std::size_t s);   // |S|^3 + |S|^2

}
