#include "vep/simnet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vep {

std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t id) {
    // FNV-1a over the label, then splitmix64 finalization.
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : label) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ULL;
    }
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (h ^ (id + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

PeriodDistribution PeriodDistribution::from_points(
    std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw ConfigError("distribution needs at least one point");
    std::map<double, double> merged;
    for (auto& [t, p] : points) {
        if (!(t > 0)) throw ConfigError("period values must be > 0");
        if (p < 0) throw ConfigError("probabilities must be >= 0");
        merged[t] += p;
    }
    PeriodDistribution d;
    double total = 0;
    for (auto& [t, p] : merged) {
        if (p == 0) continue;
        d.values_.push_back(t);
        d.probs_.push_back(p);
        total += p;
        d.cum_.push_back(total);
        d.mean_ += t * p;
        d.second_moment_ += t * t * p;
    }
    if (d.values_.empty() || std::abs(total - 1.0) > 1e-9)
        throw ConfigError("probabilities must sum to 1");
    d.cum_.back() = 1.0;
    return d;
}

PeriodDistribution PeriodDistribution::constant(double period_ms) {
    return from_points({{period_ms, 1.0}});
}

PeriodDistribution PeriodDistribution::mixture(const PeriodDistribution& a,
                                               const PeriodDistribution& b, double weight_a) {
    if (weight_a < 0 || weight_a > 1) throw ConfigError("mixture weight out of range");
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < a.values_.size(); ++i)
        points.emplace_back(a.values_[i], a.probs_[i] * weight_a);
    for (std::size_t i = 0; i < b.values_.size(); ++i)
        points.emplace_back(b.values_[i], b.probs_[i] * (1.0 - weight_a));
    return from_points(std::move(points));
}

double PeriodDistribution::cdf(double t) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), t);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double PeriodDistribution::sample(Rng& rng) const {
    double u = rng.uniform01();
    auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    if (it == cum_.end()) --it;
    return values_[static_cast<std::size_t>(it - cum_.begin())];
}

} // namespace vep
