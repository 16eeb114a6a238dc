#pragma once

#include "pfree/graph.hh"
#include "pfree/structure.hh"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pfree {

enum class EditMode { Deletion, Completion };

struct Solution {
    EdgeSet edits;
    EditMode mode = EditMode::Deletion;

    std::size_t size() const { return edits.size(); }
};

struct PropagationState {
    EdgeSet added;              // includes the seed
    EdgeSet derived_forbidden;  // pairs whose addition would close a dead prison
    bool conflict = false;
    std::optional<PrisonWitness> conflict_witness;
};

class GuardExceeded : public std::runtime_error {
public:
    GuardExceeded(std::string guard, const std::string &what)
        : std::runtime_error(what), guard_(std::move(guard))
    {
    }
    const std::string &guard() const { return guard_; }

private:
    std::string guard_;
};

inline constexpr std::uint64_t deletion_candidate_guard = 10'000'000;
inline constexpr std::uint64_t completion_candidate_guard = std::uint64_t{1} << 24;

std::optional<Solution> brute_force_deletion(const Graph &g, int k);
std::optional<Solution> branch_deletion(const Graph &g, int k);
std::optional<Solution> branch_completion(const AnnotatedGraph &g, int k);
std::optional<Solution> brute_force_completion(const AnnotatedGraph &g, int cap);

PropagationState propagate_forced(const AnnotatedGraph &g, const EdgeSet &seed);

bool verify_solution(const AnnotatedGraph &g, const Solution &sol);

// Number of subsets of size at most k of an m-element set, saturating.
std::uint64_t subsets_up_to(std::uint64_t m, std::uint64_t k);

}
