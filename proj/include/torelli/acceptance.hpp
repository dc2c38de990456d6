#pragma once

#include "torelli/ctp.hpp"
#include "torelli/graph.hpp"
#include "torelli/taut.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace torelli::acceptance {

struct Check {
    std::string what;
    bool ok;
    std::string detail;
};

struct CriterionResult {
    int id;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0;
    double budget_seconds = 0;

    bool passed() const;
    std::string summary() const; // one line
};

// Random decorated stable graph with at most max_vertices vertices.
Generator random_generator(std::mt19937_64 &rng, Policy policy, int max_vertices = 4);
// Same generator with vertices, edges, edge orientations and legs shuffled.
Generator relabel(const Generator &g, std::mt19937_64 &rng);

// Random well-formed pairing with at most max_side half-edges per side.
ctp::HalfEdgePairing random_pairing(std::mt19937_64 &rng, int max_side = 10);
// A pairing equivalent to p: some alternating 4-cycles lose one edge.
ctp::HalfEdgePairing random_equivalent(const ctp::HalfEdgePairing &p, std::mt19937_64 &rng);

// c_2(T M_4^ct) written out as -1/2 kappa_2 + 1/2 (13 lambda_1 - 2 delta)^2 plus the psi
// terms on the two boundary divisors; kappa2 is the kappa_2 coefficient to use.
TautClass c2_M4_reference(const Rational &kappa2);

CriterionResult criterion_g4();
CriterionResult criterion_g5();
CriterionResult criterion_excess();
CriterionResult criterion_chern();
CriterionResult criterion_ctp(std::uint64_t seed);
CriterionResult criterion_period();
CriterionResult criterion_properties(std::uint64_t seed);

std::vector<CriterionResult> run_all(std::uint64_t seed);

} // namespace torelli::acceptance
