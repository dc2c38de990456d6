#pragma once

#include "torelli/chern.hpp"
#include "torelli/rational.hpp"
#include "torelli/taut.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torelli::pipeline {

class PipelineMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LedgerEntry {
    std::string label;  // "Delta+", "A-", "Z3", ...
    std::string source; // what produced the class
    TautClass cls;      // contribution before the multiplicity
    Rational multiplicity;
    std::string anchor;
};

struct ContributionLedger {
    std::vector<LedgerEntry> entries;
    TautClass total(const Ambient &amb) const;
    std::string str() const;
};

// Named intermediate values, in computation order.
using Intermediates = std::vector<std::pair<std::string, std::string>>;

struct G4Result {
    TautClass final;
    ContributionLedger ledger;
    Intermediates intermediates;
};

// t^* T_4 on the compact-type space M_4^ct.
G4Result t_pullback_g4();

// Pieces of the genus-4 computation, exposed for tests.
TautClass delta_contribution(const Ambient &amb);
TautClass a_contribution(Intermediates *log = nullptr);
TautClass b_contribution(Intermediates *log = nullptr);

// Intersection numbers against lambda_g lambda_{g-1} on Mbar_{g,n}.
// psi exponents d (one per marking) and kappa indices; zero unless the degree is 2g-3+n.
Rational lambda_gg1_integral(int g, const std::vector<int> &psi, const std::vector<int> &kappa = {});

// Polynomial in kappa classes on the interior, exponent map kappa index -> power.
struct KappaPoly {
    std::map<std::map<int, int>, Rational> terms;

    static KappaPoly kappa(int i);
    static KappaPoly constant(const Rational &c);
    void add(const std::map<int, int> &e, const Rational &c);
    KappaPoly &operator+=(const KappaPoly &o);
    friend KappaPoly operator+(KappaPoly a, const KappaPoly &b) { return a += b; }
    friend KappaPoly operator-(KappaPoly a, const KappaPoly &b) { return a += Rational(-1) * b; }
    friend KappaPoly operator*(const Rational &c, KappaPoly a);
    friend KappaPoly operator*(const KappaPoly &a, const KappaPoly &b);
    bool operator==(const KappaPoly &) const = default;
    std::string str() const;
};
// Integral of a kappa polynomial against lambda_g lambda_{g-1}, in units of kappa_{g-2}.
Rational kappa_socle_ratio(int g, const KappaPoly &p);
// Interior lambda_i written in kappa classes (Mumford's relation ch(E) = Bernoulli * kappa).
std::vector<KappaPoly> interior_lambdas(int g, int up_to);
// Interior class of degree g-2 as a multiple of kappa_{g-2}, for classes on the trivial graph.
Rational top_interior_coefficient(const TautClass &c);

struct G5Report {
    std::vector<TautClass> ch_M;          // ch_1..ch_3 of T M_5, interior
    std::vector<chern::HodgeExpression> ch_A_raw;
    std::vector<chern::HodgeExpression> ch_A_reduced;
    std::vector<TautClass> ch_N;
    TautClass c3_N;
    Rational kappa1_cubed, kappa1_kappa2; // in units of kappa_3
    Rational two_c3_N;                    // coefficient of kappa_3
    long multiplicity = 0;
    Rational hyperelliptic;
    Rational final;
};

struct G5Result {
    TautClass final;
    G5Report report;
};

// t^* T_5 restricted to M_5.
G5Result t_pullback_g5();

struct Abar4Result {
    TautClass curve_side; // on Mbar_4 with delta_irr
    chern::AbarDivisor divisor;
    TautClass diagonal_each;
    Rational c1_delta_irr; // delta_irr coefficient in c_1(T Mbar_4)
    TautClass d_pullback;
};

Abar4Result t_pushforward_Abar4();

struct DimensionVerdict {
    int dimension;
    bool vanishes;
    std::string note;
};

DimensionVerdict torelli_dimension(int g);

struct ConstantRow {
    std::string name;
    std::string value;
    std::string tag;
    std::string source;
    std::map<std::string, Rational> coefficients; // monomial -> coefficient, before any overall factor
    Rational overall;
};

const std::vector<ConstantRow> &reference_constants();
// The hyperelliptic locus class in genus 5, as a multiple of kappa_3.
Rational hyperelliptic_class_g5();

} // namespace torelli::pipeline
