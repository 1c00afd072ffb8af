#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vep {

// Deterministic RNG. All randomness in a run flows from named sub-streams of
// one scenario seed so that adding draws in one subsystem cannot shift the
// sequences seen by another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }

private:
    std::mt19937_64 gen_;
};

std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t id = 0);

} // namespace vep
