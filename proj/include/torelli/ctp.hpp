#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torelli::ctp {

// Tree of compact type, no legs. Total genus is the sum of the vertex genera.
struct GenusTree {
    std::vector<int> genus;
    std::vector<std::pair<int, int>> edges;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int total_genus() const;
    int degree(int v) const;
    bool adjacent(int v, int w) const;
    // Isomorphism-invariant string (rooted at the center).
    std::string canonical() const;
    std::string str() const;
};

enum class Sign { Plus, Minus, Both };
char sign_char(Sign s); // '+', '-', 'B' (both)
std::string sign_name(Sign s); // "+", "-", "+-"

struct Component {
    GenusTree t1, t2;
    std::vector<int> nu;                 // t1 vertex -> t2 vertex
    std::vector<std::optional<Sign>> sigma; // per t1 vertex, set iff genus >= 2

    // Conditions: positive genera, nu a genus-preserving bijection, sigma = Both exactly at
    // genus 2, and no adjacent genus-1 pair of t1 maps to an adjacent pair of t2.
    bool valid(std::string *why = nullptr) const;
    // Invariant under simultaneous relabeling.
    std::string canonical() const;
    Component swapped() const;
    // "Delta+", "A-", "B", ... for the genus-4 divisor-level components, else canonical().
    std::string name() const;
    std::string serialize() const;
    static Component parse(const std::string &text);
};

class EnumerationLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Stable trees of genus g up to isomorphism; genus-0 vertices need valence >= 3.
std::vector<GenusTree> enumerate_stable_trees(int g, bool positive_only, std::optional<int> max_edges = std::nullopt);

// Components up to simultaneous relabeling. max_edges defaults to 1 for g >= 4.
// Throws EnumerationLimit when a tree has more than max_vertices vertices.
std::vector<Component> enumerate_components(int g, std::optional<int> max_edges = std::nullopt, int max_vertices = 6);

int component_dimension(const Component &c);

// Bipartite multigraph between half-edges of v (side 0) and of nu(v) (side 1). Blue edges
// come from gamma+, red ones from gamma-.
struct HalfEdgePairing {
    int genus = 0;
    int n0 = 0, n1 = 0;
    std::vector<std::pair<int, int>> blue, red; // (side-0 index, side-1 index)

    std::string str() const;
    static HalfEdgePairing parse(const std::string &text);
};

class MalformedPairing : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PairingVerdict {
    bool ok = true;
    std::string diagnostic;
};

// Walks alternating paths and cycles. Throws MalformedPairing on a vertex with two edges
// of one color or an index out of range.
PairingVerdict check_pairing(const HalfEdgePairing &p);
// Independent check by union-find component counting.
bool check_pairing_bruteforce(const HalfEdgePairing &p);
// Equal after closing every length-3 path to an alternating 4-cycle.
bool pairing_equivalent(const HalfEdgePairing &p, const HalfEdgePairing &q);
HalfEdgePairing completion(const HalfEdgePairing &p);

struct IntersectionStratum {
    std::string name; // Z1.. or "Delta+ & Delta-"
    std::string x, y; // component names
    int dimension = 0;
    bool divisorial = true;
    std::string note;
};

// Pairwise intersections of the genus-4 one-edge components reachable by adding signs and
// half-edge pairings. Z1..Z4 are the divisorial ones.
std::vector<IntersectionStratum> one_edge_intersections(int g = 4);

} // namespace torelli::ctp
