#include <algorithm>
#include <climits>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "dqc/benchgen.hpp"
#include "dqc/partition.hpp"
#include "dqc/rng.hpp"

using namespace dqc;

namespace {

// Exhaustive optimum over all assignments respecting the capacities.
long brute_force_cut(const InteractionGraph& g, const std::vector<int>& caps) {
    const int n = g.n_vertices;
    long best = LONG_MAX;
    for (int mask = 0; mask < (1 << n); ++mask) {
        const int ones = __builtin_popcount(mask);
        if (ones > caps[1] || n - ones > caps[0]) continue;
        std::vector<int> side(n);
        for (int v = 0; v < n; ++v) side[v] = (mask >> v) & 1;
        best = std::min(best, g.cut_weight(side));
    }
    return best;
}

InteractionGraph random_graph(int n, double p_edge, int w_max, std::mt19937_64& rng) {
    InteractionGraph g;
    g.n_vertices = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform_unit(rng) < p_edge)
                g.edges[{u, v}] = 1 + static_cast<long>(uniform_index(rng, w_max));
    return g;
}

std::string temp_path(const char* name) {
    return std::string("/tmp/dqc_test_") + name;
}

}  // namespace

TEST_CASE("interaction graph weights") {
    Circuit c(3);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cnot(0, 1));
    const InteractionGraph g = interaction_graph(c);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges.at({0, 1}) == 2);
}

TEST_CASE("qft-4 interaction graph is K4 with unit weights") {
    const InteractionGraph g = interaction_graph(gen_qft(4));
    CHECK(g.edges.size() == 6);
    for (const auto& [pair, w] : g.edges) CHECK(w == 1);
}

TEST_CASE("1q-only circuit has no edges") {
    Circuit c(4);
    c.add(Gate::h(0));
    c.add(Gate::rx(0.3, 2));
    CHECK(interaction_graph(c).edges.empty());
}

TEST_CASE("bipartition matches brute force on small graphs") {
    SUBCASE("4-cycle cuts 2") {
        InteractionGraph g;
        g.n_vertices = 4;
        g.edges[{0, 1}] = 1;
        g.edges[{1, 2}] = 1;
        g.edges[{2, 3}] = 1;
        g.edges[{0, 3}] = 1;
        const Assignment a = bipartition(g, {2, 2}, 1);
        CHECK(g.cut_weight(a.node_of) == 2);
        CHECK(brute_force_cut(g, {2, 2}) == 2);
    }
    SUBCASE("K4 cuts 4") {
        InteractionGraph g;
        g.n_vertices = 4;
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) g.edges[{u, v}] = 1;
        const Assignment a = bipartition(g, {2, 2}, 1);
        CHECK(g.cut_weight(a.node_of) == 4);
    }
    SUBCASE("edgeless graph cuts 0") {
        InteractionGraph g;
        g.n_vertices = 6;
        const Assignment a = bipartition(g, {3, 3}, 1);
        CHECK(g.cut_weight(a.node_of) == 0);
    }
}

TEST_CASE("multi-start fm lands within 10% of optimum on >= 95% of random graphs") {
    std::mt19937_64 rng(2024);
    int hits = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const int n = 6 + static_cast<int>(uniform_index(rng, 7));  // 6..12 vertices
        const InteractionGraph g = random_graph(n, 0.4, 5, rng);
        const std::vector<int> caps{(n + 1) / 2, n / 2 + (n % 2)};
        const long opt = brute_force_cut(g, caps);
        const long got = g.cut_weight(bipartition(g, caps, t).node_of);
        CHECK(got >= opt);
        if (got <= opt + std::max<long>(0, opt / 10)) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("fm never loses to its random start") {
    // Refinement starting from a random balanced split must not end worse.
    std::mt19937_64 rng(55);
    for (int t = 0; t < 20; ++t) {
        const int n = 10;
        const InteractionGraph g = random_graph(n, 0.5, 4, rng);
        std::vector<int> start(n);
        for (int v = 0; v < n; ++v) start[v] = v % 2;
        std::shuffle(start.begin(), start.end(), rng);
        const long start_cut = g.cut_weight(start);
        const long refined = g.cut_weight(bipartition(g, {5, 5}, t + 1).node_of);
        CHECK(refined <= start_cut);
    }
}

TEST_CASE("annotate_remote counts equal the assignment cut") {
    SUBCASE("all on one node") {
        const Circuit c = gen_qft(6);
        Assignment a;
        a.capacities = {6, 6};
        a.node_of.assign(6, 0);
        CHECK(annotate_remote(c, a).remote_count == 0);
    }
    SUBCASE("qft-32 contiguous halves cut 256") {
        const Circuit c = gen_qft(32);
        Assignment a;
        a.capacities = {16, 16};
        a.node_of.resize(32);
        for (int q = 0; q < 32; ++q) a.node_of[q] = q < 16 ? 0 : 1;
        const DistributedCircuit dc = annotate_remote(c, a);
        CHECK(dc.remote_count == 256);
        CHECK(dc.local_2q_count == 240);
        CHECK(dc.remote_count == interaction_graph(c).cut_weight(a.node_of));
    }
    SUBCASE("4-cycle optimal split has 2 remote gates") {
        const Circuit c = gen_qaoa_maxcut(4, 2, 1, 0);
        const Assignment a = bipartition(interaction_graph(c), {2, 2}, 3);
        CHECK(annotate_remote(c, a).remote_count == 2);
    }
}

TEST_CASE("remote count equals cut weight on benchmarks") {
    for (const Circuit& c :
         {gen_tlim(16, 4), gen_qaoa_maxcut(16, 4, 1, 9), gen_qft(12)}) {
        const InteractionGraph g = interaction_graph(c);
        const Assignment a = bipartition(g, {c.n_qubits / 2, c.n_qubits / 2}, 5);
        const DistributedCircuit dc = annotate_remote(c, a);
        CHECK(dc.remote_count == g.cut_weight(a.node_of));
    }
}

TEST_CASE("assignment file round trip and validation") {
    SUBCASE("valid file") {
        const std::string path = temp_path("assign_ok.txt");
        std::ofstream(path) << "0 0\n1 0\n2 1\n3 1\n";
        const Assignment a = load_assignment(path, 4, {2, 2});
        CHECK(a.node_of == std::vector<int>{0, 0, 1, 1});
        std::remove(path.c_str());
    }
    SUBCASE("duplicate qubit") {
        const std::string path = temp_path("assign_dup.txt");
        std::ofstream(path) << "0 0\n0 1\n";
        CHECK_THROWS_WITH_AS(load_assignment(path, 2, {1, 1}),
                             doctest::Contains("duplicate"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("node id out of range") {
        const std::string path = temp_path("assign_node.txt");
        std::ofstream(path) << "0 0\n1 2\n";
        CHECK_THROWS_WITH_AS(load_assignment(path, 2, {1, 1}),
                             doctest::Contains("node id"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("capacity violation") {
        const std::string path = temp_path("assign_cap.txt");
        std::ofstream(path) << "0 0\n1 0\n2 0\n";
        CHECK_THROWS(load_assignment(path, 3, {2, 1}));
        std::remove(path.c_str());
    }
    SUBCASE("save/load round trip") {
        Assignment a;
        a.capacities = {3, 2};
        a.node_of = {0, 1, 0, 1, 0};
        const std::string path = temp_path("assign_rt.txt");
        save_assignment(a, path);
        const Assignment b = load_assignment(path, 5, {3, 2});
        CHECK(b.node_of == a.node_of);
        std::remove(path.c_str());
    }
}

TEST_CASE("infeasible capacities rejected") {
    InteractionGraph g;
    g.n_vertices = 5;
    CHECK_THROWS_AS(bipartition(g, {2, 2}, 1), std::invalid_argument);
}
