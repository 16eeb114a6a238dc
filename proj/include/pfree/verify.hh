#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pfree {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;        // first failure, or a short summary
    std::uint64_t checks = 0;
    double seconds = 0;
};

CriterionResult check_structure_equivalence(std::uint64_t seed);
CriterionResult check_cmd4_decomposition(std::uint64_t seed);
// Kernel equivalence and the size ledger come out of the same sweep.
std::vector<CriterionResult> check_kernel(std::uint64_t seed);
CriterionResult check_solver_agreement(std::uint64_t seed);
CriterionResult check_gadget_properties(std::uint64_t seed);
CriterionResult check_gap_reduction();
CriterionResult check_composition();

// suite: structure, kernel, solvers, gadgets, reductions or all.
// Throws std::invalid_argument on an unknown name.
std::vector<CriterionResult> run_suite(const std::string &suite, std::uint64_t seed);

std::string format_result(const CriterionResult &r);

}
