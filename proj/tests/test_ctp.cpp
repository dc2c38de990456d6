#include "torelli/acceptance.hpp"
#include "torelli/ctp.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace torelli;
using namespace torelli::ctp;

namespace {

std::set<std::string> tree_set(const std::vector<GenusTree> &ts)
{
    std::set<std::string> out;
    for (const auto &t : ts)
        out.insert(t.canonical());
    return out;
}

GenusTree T(std::vector<int> g, std::vector<std::pair<int, int>> e = {})
{
    return GenusTree{std::move(g), std::move(e)};
}

HalfEdgePairing P(const std::string &s)
{
    return HalfEdgePairing::parse(s);
}

} // namespace

TEST_CASE("stable tree enumeration")
{
    CHECK(tree_set(enumerate_stable_trees(1, true)) == std::set<std::string>{T({1}).canonical()});
    auto g2 = enumerate_stable_trees(2, true);
    CHECK(g2.size() == 2);
    CHECK(tree_set(g2) == std::set<std::string>{T({2}).canonical(), T({1, 1}, {{0, 1}}).canonical()});
    auto g4 = enumerate_stable_trees(4, true, 1);
    CHECK(g4.size() == 3);
    CHECK(tree_set(g4) == std::set<std::string>{T({4}).canonical(), T({1, 3}, {{0, 1}}).canonical(),
                                                T({2, 2}, {{0, 1}}).canonical()});
    for (const auto &t : enumerate_stable_trees(4, false))
        for (int v = 0; v < t.num_vertices(); ++v)
            if (t.genus[v] == 0)
                CHECK(t.degree(v) >= 3);
}

TEST_CASE("components at genus 4, one edge")
{
    auto comps = enumerate_components(4, 1);
    std::map<std::string, int> dims;
    for (const auto &c : comps) {
        CHECK(c.valid());
        dims[c.name()] = component_dimension(c);
    }
    CHECK(comps.size() == 5);
    CHECK(dims == std::map<std::string, int>{{"Delta+", 9}, {"Delta-", 9}, {"A+", 9}, {"A-", 9}, {"B", 10}});
}

TEST_CASE("components at genus 5 and genus 2")
{
    auto g5 = enumerate_components(5, 0);
    REQUIRE(g5.size() == 2);
    std::set<Sign> signs{*g5[0].sigma[0], *g5[1].sigma[0]};
    CHECK(signs == std::set<Sign>{Sign::Plus, Sign::Minus});
    auto g2 = enumerate_components(2);
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].t1.num_vertices() == 1);
    CHECK(g2[0].sigma[0] == Sign::Both);
}

TEST_CASE("component validity")
{
    CHECK_THROWS(Component::parse("T1 V 1,1; E 0-1\nT2 V 1,1; E 0-1\nnu: 0 1\nsigma:"));
    CHECK_THROWS(Component::parse("T1 V 4\nT2 V 4\nnu: 0\nsigma: 0:+-"));
    CHECK_THROWS(Component::parse("T1 V 4\nnu: 0"));
    Component c = Component::parse("T1 V 4\nT2 V 4\nnu: 0\nsigma: 0:+");
    CHECK(c.valid());
    c.sigma[0] = Sign::Both;
    std::string why;
    CHECK_FALSE(c.valid(&why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("property: component serialization round trip and swap invariance")
{
    for (int g = 2; g <= 5; ++g) {
        auto comps = enumerate_components(g);
        std::set<std::string> fwd, swapped;
        for (const auto &c : comps) {
            CHECK(Component::parse(c.serialize()).canonical() == c.canonical());
            fwd.insert(c.canonical());
            swapped.insert(c.swapped().canonical());
            CHECK(component_dimension(c.swapped()) == component_dimension(c));
        }
        CHECK(fwd == swapped);
        CHECK(fwd.size() == comps.size());
    }
}

TEST_CASE("property: zero-edge components have dimension 3g-3")
{
    for (int g = 2; g <= 8; ++g)
        for (const auto &c : enumerate_components(g, 0))
            CHECK(component_dimension(c) == 3 * g - 3);
}

TEST_CASE("enumeration limit")
{
    CHECK_THROWS_AS(enumerate_components(8, 7, 6), EnumerationLimit);
}

TEST_CASE("half-edge pairing admissibility")
{
    CHECK(check_pairing(P("g=2 n=1,1 blue 0-0 red 0-0")).ok);
    auto six = check_pairing(P("g=2 n=3,3 blue 0-0 1-1 2-2 red 0-1 1-2 2-0"));
    CHECK_FALSE(six.ok);
    CHECK_FALSE(six.diagnostic.empty());
    std::string seven = "g=2 n=7,7 blue";
    for (int i = 0; i < 7; ++i)
        seven += " " + std::to_string(i) + "-" + std::to_string(i);
    std::string six_twos = "g=2 n=6,6 blue 0-0 1-1 2-2 3-3 4-4 5-5 red 0-0 1-1 2-2 3-3 4-4 5-5";
    CHECK(check_pairing(P(six_twos)).ok);
    seven += " red";
    for (int i = 0; i < 7; ++i)
        seven += " " + std::to_string(i) + "-" + std::to_string(i);
    CHECK_FALSE(check_pairing(P(seven)).ok);
    CHECK_FALSE(check_pairing(P("g=1 n=3,2 blue 0-0 1-1 red 1-0 2-1")).ok); // path of length 4
    CHECK(check_pairing(P("g=1 n=2,2 blue 0-0 1-1 red 1-0")).ok);
    CHECK_THROWS_AS(check_pairing(P("g=1 n=2,2 blue 0-0 0-1")), MalformedPairing);
    CHECK_THROWS_AS(check_pairing(P("g=1 n=2,2 blue 0-5")), MalformedPairing);
    CHECK(P("g=2 n=3,3 blue 0-0 red 0-1").str() == "g=2 n=3,3 blue 0-0 red 0-1");
}

TEST_CASE("pairing equivalence")
{
    auto path = P("g=1 n=2,2 blue 0-0 1-1 red 1-0");
    auto cycle = P("g=1 n=2,2 blue 0-0 1-1 red 1-0 0-1");
    CHECK(pairing_equivalent(path, cycle));
    CHECK(pairing_equivalent(path, path));
    CHECK(completion(path).red.size() == 2);
    auto twos = P("g=1 n=2,2 blue 0-0 1-1 red 0-0 1-1");
    CHECK_FALSE(pairing_equivalent(twos, cycle));
}

TEST_CASE("property: pairing checker agrees with the union-find oracle on 10^4 multigraphs")
{
    std::mt19937_64 rng(17);
    int disagree = 0, admissible = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = acceptance::random_pairing(rng, 10);
        bool a = check_pairing(p).ok;
        admissible += a;
        disagree += a != check_pairing_bruteforce(p);
    }
    CHECK(disagree == 0);
    CHECK(admissible > 100);
    CHECK(admissible < 9900);
}

TEST_CASE("property: pairing equivalence is an equivalence relation")
{
    std::mt19937_64 rng(23);
    std::vector<HalfEdgePairing> pool;
    while (pool.size() < 200) {
        auto p = acceptance::random_pairing(rng, 6);
        if (!check_pairing(p).ok)
            continue;
        pool.push_back(p);
        pool.push_back(acceptance::random_equivalent(p, rng));
    }
    for (std::size_t i = 0; i < pool.size(); i += 2) {
        CHECK(pairing_equivalent(pool[i], pool[i]));
        CHECK(pairing_equivalent(pool[i], pool[i + 1]));
        CHECK(pairing_equivalent(pool[i + 1], pool[i]));
    }
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j) {
            CHECK(pairing_equivalent(pool[i], pool[j]) == pairing_equivalent(pool[j], pool[i]));
            if (!pairing_equivalent(pool[i], pool[j]))
                continue;
            for (std::size_t k = 0; k < 60; ++k)
                if (pairing_equivalent(pool[j], pool[k]))
                    CHECK(pairing_equivalent(pool[i], pool[k]));
        }
}

TEST_CASE("one-edge intersections at genus 4")
{
    auto z = one_edge_intersections(4);
    std::map<std::string, IntersectionStratum> by;
    for (const auto &s : z)
        by[s.x + " & " + s.y] = s;
    REQUIRE(by.count("Delta+ & A+"));
    CHECK(by["Delta+ & A+"].dimension == 8);
    CHECK(by["Delta+ & A+"].divisorial);
    REQUIRE(by.count("Delta- & A-"));
    REQUIRE(by.count("Delta+ & B"));
    CHECK(by["Delta+ & B"].dimension == 8);
    REQUIRE(by.count("Delta- & B"));
    REQUIRE(by.count("Delta+ & Delta-"));
    CHECK_FALSE(by["Delta+ & Delta-"].divisorial);
    CHECK(by["Delta+ & Delta-"].dimension == 7);
    int div = 0;
    for (const auto &s : z)
        div += s.divisorial;
    CHECK(div == 4);
}
