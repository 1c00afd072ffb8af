#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vep/simnet/distribution.hpp"

namespace vep::analytics {

// General discrete distribution used for order-statistic composition.
struct DiscreteDist {
    std::vector<double> values; // ascending
    std::vector<double> probs;

    double mean() const;
    double cdf_before(std::size_t i) const; // cumulative mass of values[0..i-1]
};

DiscreteDist to_discrete(const PeriodDistribution& d);

// Residual waiting time W of the renewal process generated by period T.
// E(W) = E(T^2) / 2E(T); the CDF is the normalized integral of the survival
// function, piecewise linear between the support points of T.
struct WaitingTime {
    double mean = 0;
    std::vector<double> x; // breakpoints, starting at 0
    std::vector<double> F; // CDF values at the breakpoints

    double cdf(double w) const;
};

WaitingTime waiting_time(const PeriodDistribution& T);

// E(tau_qj) = E(W) + j E(T) for a VEE entering the queue at position j.
double queued_delay(const PeriodDistribution& T, int j);

// W re-discretized on a uniform grid for order-statistic composition. Cell
// mass sits at the cell midpoint, which is exact for the piecewise-linear CDF
// whenever the support of T lies on the grid.
DiscreteDist discretize_waiting(const PeriodDistribution& T, double step_ms = 1.0);

// g-th smallest of m iid draws of Y. CDF via the binomial tail sum; the mean
// is the expectation of the induced discrete distribution.
struct OrderStat {
    std::vector<double> values;
    std::vector<double> cdf;
    double mean = 0;

    double cdf_at(double t) const;
};

OrderStat order_stat(const DiscreteDist& Y, int m, int g);

enum class RoundKind { RESIDUAL, PERIOD }; // Y = W or Y = T
struct Round {
    int m = 1;
    int g = 1;
    RoundKind kind = RoundKind::RESIDUAL;
};

struct ProcessDelay {
    double mean = 0;
    double lower_bound = 0; // T_min (k-1)
    double upper_bound = 0; // T_max k
};

ProcessDelay process_delay(const PeriodDistribution& T, std::span<const Round> rounds,
                           double step_ms = 1.0);

enum class PbftViewpoint { GLOBAL, PRIMARY };

// E(tau_p) = E(W^1_(1)) + E(W^{n-1}_(2f)) + E(T^n_(2f+1)); the PRIMARY
// viewpoint replaces the commit-stage term with E(T^{n-1}_(2f)) since a node
// counts its own commit the moment it issues it.
double pbft_delay(const PeriodDistribution& T, int n,
                  PbftViewpoint vp = PbftViewpoint::GLOBAL, double step_ms = 1.0);

double retrans_delay(double tau_p_ms, int r, double tau_d_ms);

struct Overhead {
    double per_packet = 0; // O+
    double expected = 0;   // E(O+)
};

Overhead overhead(double len_ext, double len_pkt, double n_extended, double n_total);

struct Ecdf {
    std::vector<double> x; // ascending, unique
    std::vector<double> F;

    double at(double v) const; // right-continuous step
};

Ecdf ecdf(std::vector<double> samples);

double sup_distance(const Ecdf& e, const std::function<double(double)>& cdf);

} // namespace vep::analytics
