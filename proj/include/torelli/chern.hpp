#pragma once

#include "torelli/rational.hpp"
#include "torelli/taut.hpp"

#include <map>
#include <string>
#include <vector>

namespace torelli::chern {

// ch_m of the log cotangent bundle, from the Bernoulli-polynomial formula for the Chern
// character of the Hodge-type pushforward. Boundary sum over one-edge graphs.
TautClass ch_log_cotangent(const Ambient &amb, int m);

// ch_m of the sum of boundary structure sheaves, via GRR with the inverse Todd class of the
// normal bundle, c_1(N) = -psi - psibar.
TautClass ch_structure_sheaves(const Ambient &amb, int m);

// ch_m(T) = (-1)^m (ch_m(Omega^log) - ch_m(O_boundary)), kappa_1 left unexpanded.
TautClass ch_tangent(const Ambient &amb, int m);

// c_1..c_k of the tangent bundle, kappa_1 expanded. k <= 3.
std::vector<TautClass> chern_tangent_moduli(const Ambient &amb, int k);

// Polynomial in lambda_1..lambda_g.
class HodgeExpression {
public:
    using Exps = std::map<int, int>; // index -> exponent
    explicit HodgeExpression(int g) : g_(g) {}
    static HodgeExpression lambda(int g, int i); // lambda_0 = 1, zero above g
    static HodgeExpression constant(int g, const Rational &c);

    int genus() const { return g_; }
    const std::map<Exps, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool reduced() const { return reduced_; }

    HodgeExpression &operator+=(const HodgeExpression &o);
    HodgeExpression &operator*=(const Rational &c);
    friend HodgeExpression operator+(HodgeExpression a, const HodgeExpression &b) { return a += b; }
    friend HodgeExpression operator-(HodgeExpression a, const HodgeExpression &b)
    {
        HodgeExpression nb = b;
        nb *= Rational(-1);
        return a += nb;
    }
    friend HodgeExpression operator*(const Rational &c, HodgeExpression a) { return a *= c; }
    friend HodgeExpression operator*(const HodgeExpression &a, const HodgeExpression &b);
    bool operator==(const HodgeExpression &o) const { return g_ == o.g_ && terms_ == o.terms_; }

    // Normal form modulo c(E) c(E^dual) = 1, i.e. the even power sums p_2k = 0:
    // every monomial ends up square-free.
    HodgeExpression reduce() const;
    bool square_free() const;
    // Evaluates lambda_i -> value[i-1].
    TautClass evaluate(const std::vector<TautClass> &lambdas) const;
    std::string str() const;

private:
    void add_term(const Exps &e, const Rational &c);
    int g_;
    std::map<Exps, Rational> terms_;
    bool reduced_ = false;
};

// Power sum p_k of the Chern roots of E in terms of lambda.
HodgeExpression power_sum(int g, int k);
// ch_m(T A_g) = ch_m(Sym^2 E^dual), raw or reduced.
HodgeExpression ch_tangent_Ag(int g, int m, bool reduced);

// Divisor on the partial compactification of A_4: a lambda_1 coefficient plus a boundary
// symbol D.
struct AbarDivisor {
    Rational lambda1;
    Rational D;
    std::string str() const;
    AbarDivisor operator-() const { return {-lambda1, -D}; }
    bool operator==(const AbarDivisor &) const = default;
    // Under the Torelli map D pulls back to delta_irr.
    TautClass pullback_torelli() const;
};

AbarDivisor c1_log_Abar4();

} // namespace torelli::chern
