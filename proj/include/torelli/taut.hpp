#pragma once

#include "torelli/graph.hpp"
#include "torelli/rational.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace torelli {

// Moduli space M_{g,P} with a boundary policy. Markings are kept sorted.
struct Ambient {
    int g = 0;
    std::vector<std::string> markings;
    Policy policy = Policy::CompactType;

    Ambient() = default;
    Ambient(int g, std::vector<std::string> markings, Policy policy);
    // Markings "1".."n".
    static Ambient numbered(int g, int n, Policy policy);

    int n() const { return static_cast<int>(markings.size()); }
    int dim() const { return 3 * g - 3 + n(); }
    bool has_marking(const std::string &m) const;
    Ambient with_marking(const std::string &x) const;
    Ambient without_marking(const std::string &x) const;
    std::string str() const;

    auto operator<=>(const Ambient &) const = default;
};

class UnsupportedOperation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TautClass {
public:
    using Terms = std::map<Generator, Rational>;

    explicit TautClass(Ambient amb);

    const Ambient &ambient() const { return amb_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::set<int> degrees() const;

    // Adds c * xi_{G*}(decoration). The generator is canonicalized; terms that vanish for
    // dimension reasons are dropped.
    void add(const Generator &g, const Rational &c);

    TautClass &operator+=(const TautClass &o);
    TautClass &operator-=(const TautClass &o);
    TautClass &operator*=(const Rational &c);
    friend TautClass operator+(TautClass a, const TautClass &b) { return a += b; }
    friend TautClass operator-(TautClass a, const TautClass &b) { return a -= b; }
    friend TautClass operator*(const Rational &c, TautClass a) { return a *= c; }
    TautClass operator-() const { return Rational(-1) * *this; }
    bool operator==(const TautClass &o) const { return amb_ == o.amb_ && terms_ == o.terms_; }

    // One term per line: p/q<TAB>generator.
    std::string serialize() const;
    static TautClass parse(const Ambient &amb, const std::string &text);

private:
    Ambient amb_;
    Terms terms_;
};

// A one-edge stable graph used as a gluing map. For a separating edge the two sides are
// (g_a, legs_a) and (g_b, legs_b); for a loop only g_a and legs_a are used, with g_a the
// genus of the normalization. h_a and h_b name the new markings on the factors.
struct OneEdge {
    bool loop = false;
    int g_a = 0;
    std::vector<std::string> legs_a;
    int g_b = 0;
    std::vector<std::string> legs_b;
    std::string h_a = "#h0";
    std::string h_b = "#h1";

    Ambient target(Policy p) const;
    std::vector<Ambient> factors(Policy p) const;
    Generator generator(Policy p) const; // undecorated xi_Gamma, not canonicalized
};

struct BoundaryDivisor {
    OneEdge shape;
    Generator gen; // canonical
    long automorphisms = 1;
    std::string name;
};

// All one-edge graphs of the ambient: separating splits with both sides stable, plus the
// self-edge under the stable policy. Deterministic order.
std::vector<BoundaryDivisor> one_edge_graphs(const Ambient &amb);
std::string boundary_name(const Ambient &amb, const Generator &canonical);

TautClass unit_class(const Ambient &amb);
TautClass kappa_class(const Ambient &amb, int i);
TautClass lambda_class(const Ambient &amb, int i);
TautClass psi_class(const Ambient &amb, const std::string &marking, int exp = 1);
TautClass monomial_class(const Ambient &amb, const Monomial &m);
// delta = sum over one-edge graphs of xi_{Gamma*}(1) / |Aut Gamma|.
TautClass delta_class(const Ambient &amb);
// Single boundary divisor (g1, S) | (g - g1, P \ S), with its 1/|Aut| factor.
TautClass delta_split(const Ambient &amb, int g1, const std::vector<std::string> &side);
TautClass delta_irr(const Ambient &amb);
// delta_{0,{p,x}}: p and x on a rational tail.
TautClass delta_rational_tail(const Ambient &amb, const std::string &p, const std::string &x);

// Classes on a product of moduli spaces, term = one generator per factor.
class ProductClass {
public:
    using Key = std::vector<Generator>;
    explicit ProductClass(std::vector<Ambient> factors);

    static ProductClass tensor(const std::vector<TautClass> &parts);

    const std::vector<Ambient> &factors() const { return factors_; }
    const std::map<Key, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key &k, const Rational &c);
    ProductClass &operator+=(const ProductClass &o);
    ProductClass &operator-=(const ProductClass &o);
    ProductClass &operator*=(const Rational &c);
    friend ProductClass operator+(ProductClass a, const ProductClass &b) { return a += b; }
    friend ProductClass operator-(ProductClass a, const ProductClass &b) { return a -= b; }
    friend ProductClass operator*(const Rational &c, ProductClass a) { return a *= c; }
    bool operator==(const ProductClass &o) const { return factors_ == o.factors_ && terms_ == o.terms_; }

    // One term per line: p/q<TAB>gen | gen | ...
    std::string serialize() const;

private:
    std::vector<Ambient> factors_;
    std::map<Key, Rational> terms_;
};

// Factor-wise ring product.
ProductClass multiply(const ProductClass &a, const ProductClass &b);

TautClass pullback_forgetful(const TautClass &c, const std::string &x);
TautClass pushforward_forgetful(const TautClass &c, const std::string &x);
ProductClass pullback_forgetful(const ProductClass &c, int factor, const std::string &x);
ProductClass pushforward_forgetful(const ProductClass &c, int factor, const std::string &x);

ProductClass pullback_gluing(const TautClass &c, const OneEdge &gamma);
TautClass pushforward_gluing(const ProductClass &c, const OneEdge &gamma);

// Ring product. Supported when one side of every pair of terms lives on a graph with at
// most one edge; otherwise throws UnsupportedOperation.
TautClass multiply(const TautClass &a, const TautClass &b);
TautClass power(const TautClass &a, int e);

// Replaces kappa_1 at each vertex by 12 lambda_1 + sum of psi at the vertex - delta of the
// vertex, until no kappa_1 is left.
TautClass kappa1_expand(const TautClass &c);

// Drops every term supported on the boundary.
TautClass restrict_interior(const TautClass &c);
// Same class, generators reinterpreted under another policy (compact type into stable).
TautClass change_policy(const TautClass &c, Policy p);

std::string monomial_name(const Monomial &m);
// Human-readable form: lambda1, kappa2, psi_p, delta_A, ... with the full boundary
// divisor collapsed to "delta" when all its components carry the same coefficient.
std::string pretty(const TautClass &c);
std::string pretty(const ProductClass &c);

} // namespace torelli
