#pragma once

#include "torelli/rational.hpp"

#include <string>
#include <vector>

namespace torelli::excess {

struct ExcessDims {
    int d_A;
    int d_B;
    int d() const { return d_A + d_B; }
};

// Projective space P^n with split bundles given by line-bundle degrees.
struct LocalModel {
    std::string name;
    int n;                      // ambient dimension
    std::vector<int> total;     // bundle whose top Chern class gives the total intersection
    std::vector<int> normal;    // N, restricted to the components
    std::vector<int> normal_A;  // N_A
    std::vector<int> normal_B;  // N_B
    ExcessDims dims;
};

enum class Sub { A, B };

long multiplicity(const ExcessDims &dims);
long multiplicity_shifted(int d_A, int d_B, int k);

Rational chern_quotient_degree(const LocalModel &model, Sub sub, int k);
Rational top_chern_degree(const LocalModel &model);
long oracle_multiplicity(const LocalModel &model, const ExcessDims &dims);

// Three models: two P^3's in P^6, a plane and a line in P^3, two lines in P^2.
LocalModel builtin_model(const std::string &name); // "b2", "b3", "b4"
std::vector<std::string> builtin_model_names();

bool binomial_identity_check(int d, int k);

struct ResidualResult {
    Rational total;
    Rational divisor_part;
    Rational residual_part;
};

// O(2)^3 on P^3 with a section vanishing on V(xz, yz, z^2), split along D = V(z).
ResidualResult verify_residual_model();

} // namespace torelli::excess
