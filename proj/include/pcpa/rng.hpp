#pragma once

#include <cstdint>
#include <random>

namespace pcpa {

// Derives an independent stream seed from a master seed and a stream index
// (splitmix64 of the offset master).  Trial-parallel code seeds one engine
// per trial index, so results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

// mt19937_64 with explicit output mappings so that streams are reproducible
// bit for bit across platforms (no implementation-defined distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal via Box-Muller, one cached spare per pair
    double gaussian();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pcpa
