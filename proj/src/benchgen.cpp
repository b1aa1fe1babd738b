#include "dqc/benchgen.hpp"

#include "dqc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace dqc {

Circuit gen_tlim(int n, int steps, const TlimAngles& angles) {
    if (n < 2) throw std::invalid_argument("gen_tlim: need at least 2 qubits");
    if (steps < 1) throw std::invalid_argument("gen_tlim: need at least 1 step");
    Circuit c(n);
    for (int s = 0; s < steps; ++s) {
        for (int q = 0; q + 1 < n; q += 2) c.add(Gate::rzz(angles.theta_zz, q, q + 1));
        for (int q = 1; q + 1 < n; q += 2) c.add(Gate::rzz(angles.theta_zz, q, q + 1));
        for (int q = 0; q < n; ++q) c.add(Gate::rz(angles.theta_z, q));
        for (int q = 0; q < n; ++q) c.add(Gate::rx(angles.theta_x, q));
    }
    return c;
}

std::vector<std::pair<int, int>> gen_regular_graph(int n, int degree, std::uint64_t seed) {
    if (degree < 1 || degree >= n) throw std::invalid_argument("gen_regular_graph: need 1 <= d < n");
    if ((std::int64_t(n) * degree) % 2 != 0)
        throw std::invalid_argument("gen_regular_graph: n*d must be even");

    std::mt19937_64 rng(seed);
    std::vector<int> stubs;
    stubs.reserve(std::size_t(n) * degree);

    // Configuration model with rejection: stubs pair up uniformly; a draw
    // that would create a self-loop or multi-edge is redrawn, and an attempt
    // that gets stuck restarts from scratch (cap 1000 attempts).
    for (int attempt = 0; attempt < 1000; ++attempt) {
        stubs.clear();
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < degree; ++k) stubs.push_back(v);

        std::set<std::pair<int, int>> edges;
        bool ok = true;
        while (!stubs.empty()) {
            bool paired = false;
            for (int redraw = 0; redraw < 200 && !paired; ++redraw) {
                std::size_t i = uniform_index(rng, stubs.size());
                std::size_t j = uniform_index(rng, stubs.size());
                if (i == j) continue;
                int u = stubs[i], v = stubs[j];
                if (u == v) continue;
                if (u > v) std::swap(u, v);
                if (edges.count({u, v})) continue;
                edges.emplace(u, v);
                if (i < j) std::swap(i, j);  // erase the higher index first
                stubs.erase(stubs.begin() + i);
                stubs.erase(stubs.begin() + j);
                paired = true;
            }
            if (!paired) {
                ok = false;
                break;
            }
        }
        if (ok) return {edges.begin(), edges.end()};
    }
    throw std::runtime_error("gen_regular_graph: configuration model failed after 1000 retries");
}

Circuit gen_qaoa_maxcut(int n, int degree, int layers, std::uint64_t seed, double gamma,
                        double beta) {
    if (layers < 1) throw std::invalid_argument("gen_qaoa_maxcut: need at least 1 layer");
    const auto edges = gen_regular_graph(n, degree, seed);
    Circuit c(n);
    for (int q = 0; q < n; ++q) c.add(Gate::h(q));
    for (int p = 0; p < layers; ++p) {
        for (const auto& [u, v] : edges) c.add(Gate::rzz(gamma, u, v));
        for (int q = 0; q < n; ++q) c.add(Gate::rx(beta, q));
    }
    return c;
}

Circuit gen_qft(int n) {
    if (n < 1) throw std::invalid_argument("gen_qft: need at least 1 qubit");
    Circuit c(n);
    for (int i = 0; i < n; ++i) {
        c.add(Gate::h(i));
        for (int j = i + 1; j < n; ++j)
            c.add(Gate::cphase(std::numbers::pi / std::pow(2.0, j - i), i, j));
    }
    return c;
}

}  // namespace dqc
