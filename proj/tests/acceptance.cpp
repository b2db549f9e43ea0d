// Acceptance suite runner: executes the full verification profile and prints
// one pass/fail line per criterion. An optional argument restricts the run to
// a single criterion id (used by ctest to report each criterion separately).
#include <cstdlib>
#include <iostream>

#include "ellseq/verify.hpp"

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (only < 0 || only > 11) {
        std::cerr << "criterion id must be 1..11\n";
        return 2;
    }
    std::vector<ellseq::CriterionResult> results =
        ellseq::run_acceptance(ellseq::Profile::Full, ellseq::FactorBudget{}, only);
    if (results.empty()) {
        std::cerr << "no criterion with id " << only << "\n";
        return 2;
    }
    return ellseq::print_acceptance(results, std::cout) == 0 ? 0 : 1;
}
