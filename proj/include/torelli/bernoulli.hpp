#pragma once

#include "torelli/rational.hpp"

namespace torelli {

inline constexpr int default_bernoulli_cap = 32;

// Bernoulli number B_m with B_1 = -1/2.
Rational bernoulli_number(int m, int cap = default_bernoulli_cap);

// B_m(x) = sum_k C(m,k) B_k x^(m-k), so that B_1(x) = x - 1/2.
Rational bernoulli_polynomial(int m, const Rational &x, int cap = default_bernoulli_cap);

} // namespace torelli
