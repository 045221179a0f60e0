#include "pso/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pso {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t derive_seed(uint64_t master, uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

double Rng::exponential() { return -std::log(uniform_open01()); }

int Rng::below(int n) {
    if (n < 1) throw std::invalid_argument("Rng::below requires n >= 1");
    return static_cast<int>(engine_() % static_cast<uint64_t>(n));
}

std::vector<double> Rng::dirichlet_uniform(int n) {
    if (n < 1) throw std::invalid_argument("dirichlet_uniform requires n >= 1");
    std::vector<double> g(static_cast<size_t>(n));
    double total = 0.0;
    for (double& v : g) {
        v = exponential();
        total += v;
    }
    for (double& v : g) v /= total;
    return g;
}

}  // namespace pso
