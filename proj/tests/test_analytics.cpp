#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "vep/analytics/analytics.hpp"

using namespace vep;
using namespace vep::analytics;

namespace {

PeriodDistribution two_point() {
    return PeriodDistribution::from_points({{100, 0.5}, {300, 0.5}});
}

PeriodDistribution highway() {
    return PeriodDistribution::from_points(
        {{100, 0.04}, {500, 0.12}, {900, 0.2252}, {1000, 0.6148}});
}

PeriodDistribution onramp() {
    return PeriodDistribution::from_points(
        {{100, 0.12}, {300, 0.30}, {600, 0.22695}, {1000, 0.35305}});
}

} // namespace

TEST_CASE("overhead formulas") {
    Overhead o = overhead(50, 400, 1, 10);
    CHECK(o.expected == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(o.per_packet == doctest::Approx(12.5).epsilon(1e-12));
    CHECK(overhead(0, 400, 5, 10).expected == 0.0);
    CHECK_THROWS_AS(overhead(50, 0, 1, 10), DomainError);
    CHECK_THROWS_AS(overhead(50, 400, 11, 10), DomainError);
}

TEST_CASE("waiting time for constant period is uniform") {
    auto d = PeriodDistribution::constant(100);
    WaitingTime w = waiting_time(d);
    CHECK(w.mean == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(w.cdf(0) == 0.0);
    CHECK(w.cdf(25) == doctest::Approx(0.25));
    CHECK(w.cdf(50) == doctest::Approx(0.5));
    CHECK(w.cdf(100) == 1.0);
    CHECK(w.cdf(150) == 1.0);
}

TEST_CASE("waiting time matches renewal-timeline sampling") {
    struct Case {
        PeriodDistribution d;
        double expected_mean;
    };
    Case cases[] = {
        {PeriodDistribution::constant(100), 50.0},
        {two_point(), 50000.0 / 400.0},
        {highway(), highway().second_moment() / (2 * highway().mean())},
        {onramp(), onramp().second_moment() / (2 * onramp().mean())},
    };
    std::uint64_t seed = 11;
    for (const Case& c : cases) {
        WaitingTime w = waiting_time(c.d);
        CHECK(w.mean == doctest::Approx(c.expected_mean).epsilon(1e-9));
        auto samples = oracle::renewal_residuals(c.d, 100000, seed++);
        CHECK(oracle::mean_of(samples) == doctest::Approx(w.mean).epsilon(0.02));
        Ecdf e = ecdf(samples);
        CHECK(sup_distance(e, [&](double t) { return w.cdf(t); }) < 0.01);
    }
}

TEST_CASE("waiting time is at least half the mean period") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<double, double>> pts;
        int n = 1 + static_cast<int>(rng.below(6));
        double rest = 1.0;
        for (int i = 0; i < n; ++i) {
            double p = i + 1 == n ? rest : rng.uniform(0.0, rest);
            rest -= p;
            pts.emplace_back(rng.uniform(1.0, 2000.0), p);
        }
        if (rest > 0) pts.back().second += rest;
        auto d = PeriodDistribution::from_points(pts);
        CHECK(waiting_time(d).mean >= d.mean() / 2.0 - 1e-9);
    }
    // equality holds only for a constant period
    CHECK(waiting_time(PeriodDistribution::constant(77)).mean ==
          doctest::Approx(77.0 / 2).epsilon(1e-12));
    CHECK(waiting_time(two_point()).mean > two_point().mean() / 2.0 + 1.0);
}

TEST_CASE("queued delay adds whole periods") {
    auto d = PeriodDistribution::constant(100);
    CHECK(queued_delay(d, 0) == doctest::Approx(50.0));
    CHECK(queued_delay(d, 3) == doctest::Approx(350.0));
    for (const auto& dist : {two_point(), highway()})
        CHECK(queued_delay(dist, 0) == doctest::Approx(waiting_time(dist).mean));
    CHECK_THROWS_AS(queued_delay(d, -1), DomainError);
}

TEST_CASE("order statistics match exhaustive enumeration") {
    // discrete uniform on {1..10}
    std::vector<double> values, probs;
    for (int i = 1; i <= 10; ++i) {
        values.push_back(i);
        probs.push_back(0.1);
    }
    DiscreteDist y{values, probs};
    for (int m = 1; m <= 4; ++m) {
        for (int g = 1; g <= m; ++g) {
            OrderStat os = order_stat(y, m, g);
            auto brute = oracle::brute_order_stat(values, probs, m, g);
            CHECK(os.mean == doctest::Approx(brute.mean).epsilon(1e-9));
            for (double t : values)
                CHECK(os.cdf_at(t) == doctest::Approx(brute.cdf(t)).epsilon(1e-9));
        }
    }
}

TEST_CASE("order statistics on a 12-point support, non-uniform") {
    std::vector<double> values, probs;
    double total = 0;
    for (int i = 0; i < 12; ++i) {
        values.push_back(10.0 * (i + 1));
        probs.push_back(static_cast<double>(i % 3 + 1));
        total += probs.back();
    }
    for (double& p : probs) p /= total;
    DiscreteDist y{values, probs};
    for (int m = 2; m <= 4; ++m)
        for (int g = 1; g <= m; ++g) {
            auto brute = oracle::brute_order_stat(values, probs, m, g);
            CHECK(order_stat(y, m, g).mean == doctest::Approx(brute.mean).epsilon(1e-9));
        }
}

TEST_CASE("order statistic of a constant is the constant") {
    DiscreteDist y{{42.0}, {1.0}};
    for (int m = 1; m <= 5; ++m)
        for (int g = 1; g <= m; ++g) CHECK(order_stat(y, m, g).mean == doctest::Approx(42.0));
}

TEST_CASE("order statistic mean grows with g") {
    DiscreteDist y = to_discrete(two_point());
    double prev = 0;
    for (int g = 1; g <= 3; ++g) {
        double m = order_stat(y, 3, g).mean;
        CHECK(m >= prev);
        prev = m;
    }
    CHECK_THROWS_AS(order_stat(y, 3, 4), DomainError);
    CHECK_THROWS_AS(order_stat(y, 3, 0), DomainError);
}

TEST_CASE("g = m collapses to the CDF power") {
    for (const auto& d : {two_point(), highway(), onramp()}) {
        DiscreteDist y = to_discrete(d);
        for (int m = 1; m <= 4; ++m) {
            OrderStat os = order_stat(y, m, m);
            double cum = 0;
            for (std::size_t i = 0; i < y.values.size(); ++i) {
                cum += y.probs[i];
                CHECK(os.cdf[i] == doctest::Approx(std::pow(std::min(cum, 1.0), m))
                                       .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("process delay: sub-round presets") {
    auto d = PeriodDistribution::constant(100);

    // one sub-round waiting for both of two residual-delay messages
    Round both{2, 2, RoundKind::RESIDUAL};
    ProcessDelay p = process_delay(d, std::span<const Round>(&both, 1));
    CHECK(p.mean == doctest::Approx(200.0 / 3.0).epsilon(0.001));
    auto samples = oracle::renewal_residuals(d, 100000, 21);
    auto samples2 = oracle::renewal_residuals(d, 100000, 22);
    double mc = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) mc += std::max(samples[i], samples2[i]);
    mc /= static_cast<double>(samples.size());
    CHECK(p.mean == doctest::Approx(mc).epsilon(0.01));

    // k rounds of single full-period exchanges
    std::vector<Round> rounds(3, Round{1, 1, RoundKind::PERIOD});
    ProcessDelay p3 = process_delay(d, rounds);
    CHECK(p3.mean == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(p3.lower_bound == doctest::Approx(200.0));
    CHECK(p3.upper_bound == doctest::Approx(300.0));
}

TEST_CASE("pbft delay for the constant fixture") {
    auto d = PeriodDistribution::constant(100);
    CHECK(pbft_delay(d, 4, PbftViewpoint::GLOBAL) == doctest::Approx(200.0).epsilon(1e-6));
    CHECK(pbft_delay(d, 4, PbftViewpoint::PRIMARY) == doctest::Approx(200.0).epsilon(1e-6));
    CHECK_THROWS_AS(pbft_delay(d, 3), DomainError);
}

TEST_CASE("pbft delay grows with the quorum size") {
    for (const auto& d : {PeriodDistribution::constant(100), two_point(), highway()}) {
        double n4 = pbft_delay(d, 4);
        double n7 = pbft_delay(d, 7);
        double n10 = pbft_delay(d, 10);
        CHECK(n4 < n7);
        CHECK(n7 < n10);
        // bounds from the three-stage structure
        CHECK(n4 >= 2 * d.min());
        CHECK(n4 <= 3 * d.max());
    }
}

TEST_CASE("pbft delay against direct sampling") {
    auto d = two_point();
    double theory = pbft_delay(d, 4, PbftViewpoint::GLOBAL);
    auto w1 = oracle::renewal_residuals(d, 200000, 31);
    auto w2 = oracle::renewal_residuals(d, 200000, 32);
    auto w3 = oracle::renewal_residuals(d, 200000, 33);
    auto w4 = oracle::renewal_residuals(d, 200000, 34);
    Rng rng(35);
    double acc = 0;
    for (std::size_t i = 0; i < w1.size(); ++i) {
        std::array<double, 3> prep{w2[i], w3[i], w4[i]};
        std::sort(prep.begin(), prep.end());
        std::array<double, 4> commits{d.sample(rng), d.sample(rng), d.sample(rng),
                                      d.sample(rng)};
        std::sort(commits.begin(), commits.end());
        acc += w1[i] + prep[1] + commits[2];
    }
    acc /= static_cast<double>(w1.size());
    CHECK(theory == doctest::Approx(acc).epsilon(0.01));
}

TEST_CASE("retransmission delay arithmetic") {
    CHECK(retrans_delay(200, 0, 2200) == doctest::Approx(200.0));
    CHECK(retrans_delay(200, 2, 2200) == doctest::Approx(4600.0));
    CHECK_THROWS_AS(retrans_delay(200, -1, 2200), DomainError);
}

TEST_CASE("ecdf basics") {
    Ecdf single = ecdf({5});
    CHECK(single.x == std::vector<double>{5});
    CHECK(single.F == std::vector<double>{1.0});
    CHECK(single.at(4.9) == 0.0);
    CHECK(single.at(5.0) == 1.0);

    Ecdf e = ecdf({1, 2, 2, 4});
    CHECK(e.x == std::vector<double>{1, 2, 4});
    CHECK(e.F[0] == doctest::Approx(0.25));
    CHECK(e.F[1] == doctest::Approx(0.75));
    CHECK(e.F[2] == doctest::Approx(1.0));
    CHECK(e.at(3) == doctest::Approx(0.75));

    CHECK_THROWS_AS(ecdf({}), DomainError);
}

TEST_CASE("shipped fixture means") {
    CHECK(highway().mean() == doctest::Approx(881.48).epsilon(1e-9));
    CHECK(onramp().mean() == doctest::Approx(591.22).epsilon(1e-9));
    auto both = PeriodDistribution::mixture(highway(), onramp(), 0.5);
    CHECK(both.mean() == doctest::Approx(736.35).epsilon(1e-9));
}

TEST_CASE("period sampling converges to the distribution mean") {
    Rng rng(7);
    auto d = two_point();
    double acc = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) acc += d.sample(rng);
    CHECK(acc / n == doctest::Approx(200.0).epsilon(0.01));

    auto hw = highway();
    acc = 0;
    for (int i = 0; i < n; ++i) acc += hw.sample(rng);
    CHECK(acc / n == doctest::Approx(881.48).epsilon(0.01));

    auto c = PeriodDistribution::constant(100);
    for (int i = 0; i < 100; ++i) CHECK(c.sample(rng) == 100.0);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(PeriodDistribution::from_points({{100, 0.5}, {300, 0.6}}), ConfigError);
    CHECK_THROWS_AS(PeriodDistribution::from_points({{0, 1.0}}), ConfigError);
    CHECK_THROWS_AS(PeriodDistribution::from_points({{-5, 1.0}}), ConfigError);
    CHECK_THROWS_AS(PeriodDistribution::from_points({}), ConfigError);
}
