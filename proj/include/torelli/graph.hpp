#pragma once

#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace torelli {

enum class Policy { CompactType, Stable };

std::string to_string(Policy p);
Policy parse_policy(const std::string &s);

struct Edge {
    int v0 = 0, v1 = 0;
    // Optional half-edge names; used when a graph describes a gluing map.
    std::string h0, h1;
    auto operator<=>(const Edge &) const = default;
};

struct Leg {
    std::string label;
    int vertex = 0;
    auto operator<=>(const Leg &) const = default;
};

struct StableGraph {
    std::vector<int> genus;
    std::vector<Edge> edges;
    std::vector<Leg> legs;
    Policy policy = Policy::CompactType;
    auto operator<=>(const StableGraph &) const = default;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int valence(int v) const;
    int betti() const;
    int total_genus() const;
    std::vector<std::string> markings() const; // sorted
};

// Monomial in kappa_i and lambda_i on a single vertex: index -> exponent.
struct Monomial {
    std::map<int, int> kappa;
    std::map<int, int> lambda;
    auto operator<=>(const Monomial &) const = default;

    int degree() const;
    bool empty() const { return kappa.empty() && lambda.empty(); }
    void mul_kappa(int i, int e = 1);
    void mul_lambda(int i, int e = 1);
    Monomial operator*(const Monomial &o) const;
};

struct Decoration {
    std::vector<Monomial> vertex;           // per vertex
    std::vector<std::array<int, 2>> edge_psi; // per edge, psi exponent at (v0 side, v1 side)
    std::vector<int> leg_psi;               // per leg
    auto operator<=>(const Decoration &) const = default;
};

// A decorated stable graph, standing for xi_{Gamma*} of the product of its decorations.
struct Generator {
    StableGraph graph;
    Decoration decor;
    auto operator<=>(const Generator &) const = default;

    // Plain graph with empty decoration of matching shape.
    static Generator bare(const StableGraph &g);

    int degree() const;
    int vertex_degree(int v) const; // decoration degree supported on vertex v
    int vertex_dim(int v) const;    // 3g-3+n of the vertex moduli space
    int leg_index(const std::string &label) const; // -1 if absent
};

class UnstableGraph : public std::invalid_argument {
public:
    UnstableGraph(int vertex, const std::string &why);
    int vertex() const { return vertex_; }

private:
    int vertex_;
};

// Structural checks: indices, stability of every vertex, tree shape under compact type,
// decoration shape. Throws UnstableGraph or std::invalid_argument.
void validate(const Generator &g);

// True when the term vanishes for degree reasons (decoration above vertex dimension,
// lambda_k with k above the vertex genus).
bool vanishes_trivially(const Generator &g);

struct CanonicalForm {
    Generator gen;
    long automorphisms = 1;
};

// Canonical representative of the isomorphism class (legs are labeled and fixed, vertices
// and edges are not), plus the order of the decoration-preserving automorphism group.
CanonicalForm canonicalize(const Generator &g);

// Line format: V <genus>...; E <i>-<j>...; L <label>@<i>...; decor <ref>:<symbol>^<exp>...
// Refs are v<i> for a vertex, e<i>.<side> for an edge half, or a leg label.
std::string to_string(const Generator &g);
Generator parse_generator(const std::string &s, Policy policy);

} // namespace torelli
