#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vep/core/errors.hpp"
#include "vep/simnet/rng.hpp"

namespace vep {

// Discrete distribution of the underlying-protocol message period T (ms).
class PeriodDistribution {
public:
    static PeriodDistribution from_points(std::vector<std::pair<double, double>> points);
    static PeriodDistribution constant(double period_ms);
    static PeriodDistribution mixture(const PeriodDistribution& a, const PeriodDistribution& b,
                                      double weight_a);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probs() const { return probs_; }

    double mean() const { return mean_; }
    double second_moment() const { return second_moment_; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

    // P(T <= t), right-continuous step function.
    double cdf(double t) const;

    double sample(Rng& rng) const;

private:
    PeriodDistribution() = default;
    std::vector<double> values_; // ascending, > 0
    std::vector<double> probs_;
    std::vector<double> cum_;
    double mean_ = 0;
    double second_moment_ = 0;
};

} // namespace vep
