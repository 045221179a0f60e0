#ifndef PSO_RNG_HPP
#define PSO_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace pso {

// Derives an independent substream seed from a master seed. Pure function.
uint64_t derive_seed(uint64_t master, uint64_t stream);

// mt19937_64 with hand-rolled real-valued draws. The standard library's
// real distributions are not bit-stable across implementations, and seeded
// reproducibility is part of the CLI contract.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform_open01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard exponential; strictly positive.
    double exponential();

    // Uniform integer in [0, n), n >= 1.
    int below(int n);

    // Dirichlet(1,...,1): uniform point of the (n-1)-simplex, all
    // coordinates strictly positive.
    std::vector<double> dirichlet_uniform(int n);

private:
    std::mt19937_64 engine_;
};

}  // namespace pso

#endif
