#pragma once

// Graph surgery on decorated generators. Everything here works on uncanonicalized
// generators; the class layer canonicalizes and collects terms.

#include "torelli/graph.hpp"
#include "torelli/taut.hpp"

#include <string>
#include <utility>
#include <vector>

namespace torelli::detail {

struct HalfEdge {
    int vertex = 0;
    int psi = 0;
    std::string label; // leg label when partner < 0
    int partner = -1;
};

// Half-edge view of a generator.
struct Exploded {
    Policy policy = Policy::CompactType;
    std::vector<int> genus;
    std::vector<Monomial> mono;
    std::vector<HalfEdge> he;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    std::vector<int> at(int v) const;
    int leg(const std::string &label) const; // -1 if absent
    int add_vertex(int g, Monomial m = {});
    int add_half(int v, int psi = 0);
    void join(int a, int b);
    int vertex_degree(int v) const;
};

Exploded explode(const Generator &g);
Generator implode(const Exploded &e);
// Drops the flagged vertices and half-edges and renumbers the rest.
Exploded compact(const Exploded &e, const std::vector<bool> &dead_vertex, const std::vector<bool> &dead_half);

using GenTerms = std::vector<std::pair<Generator, Rational>>;
using FactorTerms = std::vector<std::pair<std::vector<Generator>, Rational>>;

// psi powers on legs and a monomial living on a single vertex.
struct PointDecoration {
    Monomial mono;
    std::vector<std::pair<std::string, int>> leg_psi;
};

std::vector<std::pair<std::pair<Monomial, Monomial>, Rational>> split_monomial(const Monomial &m, int g1, int g2);
bool stable_vertex(int g, int valence);

GenTerms forget_pullback(const Generator &g, const std::string &x);
GenTerms forget_pushforward(const Generator &g, const std::string &x);
FactorTerms glue_pullback(const Generator &g, const OneEdge &gamma);
Generator glue_pushforward(const std::vector<Generator> &factors, const OneEdge &gamma);
// Multiplies the generator by the pullback of a decoration from the unglued space.
GenTerms multiply_point(const PointDecoration &d, const Generator &g);
GenTerms multiply_generators(const Generator &a, const Generator &b);
// One kappa_1 replacement; returns {g} unchanged (and changed = false) when none is left.
GenTerms kappa1_step(const Generator &g, bool &changed);

} // namespace torelli::detail
