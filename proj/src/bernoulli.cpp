#include "torelli/bernoulli.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace torelli {

namespace {

void check_degree(int m, int cap)
{
    if (m < 0)
        throw std::invalid_argument("negative Bernoulli index");
    if (m > cap)
        throw std::length_error("Bernoulli degree " + std::to_string(m) + " exceeds cap " + std::to_string(cap));
}

} // namespace

Rational bernoulli_number(int m, int cap)
{
    check_degree(m, cap);
    // sum_{k<=n} C(n+1,k) B_k = 0 for n >= 1
    std::vector<Rational> b(m + 1);
    b[0] = Rational(1);
    for (int n = 1; n <= m; ++n) {
        Rational s(0);
        for (int k = 0; k < n; ++k)
            s += binomial(n + 1, k) * b[k];
        b[n] = -s / Rational(n + 1);
    }
    return b[m];
}

Rational bernoulli_polynomial(int m, const Rational &x, int cap)
{
    check_degree(m, cap);
    Rational r(0);
    for (int k = 0; k <= m; ++k)
        r += binomial(m, k) * bernoulli_number(k, cap) * pow(x, m - k);
    return r;
}

} // namespace torelli
