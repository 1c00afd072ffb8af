#include "vep/analytics/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace vep::analytics {

double DiscreteDist::mean() const {
    double m = 0;
    for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
    return m;
}

double DiscreteDist::cdf_before(std::size_t i) const {
    double c = 0;
    for (std::size_t k = 0; k < i && k < probs.size(); ++k) c += probs[k];
    return c;
}

DiscreteDist to_discrete(const PeriodDistribution& d) {
    return DiscreteDist{d.values(), d.probs()};
}

double WaitingTime::cdf(double w) const {
    if (w <= x.front()) return 0.0;
    if (w >= x.back()) return 1.0;
    auto it = std::upper_bound(x.begin(), x.end(), w);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    double x0 = x[i - 1], x1 = x[i];
    double f0 = F[i - 1], f1 = F[i];
    return f0 + (f1 - f0) * (w - x0) / (x1 - x0);
}

WaitingTime waiting_time(const PeriodDistribution& T) {
    WaitingTime w;
    w.mean = T.second_moment() / (2.0 * T.mean());
    w.x.push_back(0.0);
    w.F.push_back(0.0);
    double acc = 0;
    double prev = 0;
    double survival = 1.0; // P(T > t) on [prev, t_i)
    for (std::size_t i = 0; i < T.values().size(); ++i) {
        double t = T.values()[i];
        acc += survival * (t - prev);
        w.x.push_back(t);
        w.F.push_back(acc / T.mean());
        survival -= T.probs()[i];
        prev = t;
    }
    w.F.back() = 1.0;
    return w;
}

double queued_delay(const PeriodDistribution& T, int j) {
    if (j < 0) throw DomainError("queue position must be >= 0");
    return waiting_time(T).mean + j * T.mean();
}

DiscreteDist discretize_waiting(const PeriodDistribution& T, double step_ms) {
    if (!(step_ms > 0)) throw DomainError("step must be > 0");
    WaitingTime w = waiting_time(T);
    std::size_t cells = static_cast<std::size_t>(std::ceil(T.max() / step_ms - 1e-12));
    DiscreteDist d;
    d.values.reserve(cells);
    d.probs.reserve(cells);
    double prev_cdf = 0;
    for (std::size_t k = 1; k <= cells; ++k) {
        double hi = std::min(k * step_ms, T.max());
        double cdf = w.cdf(hi);
        d.values.push_back((k - 0.5) * step_ms);
        d.probs.push_back(cdf - prev_cdf);
        prev_cdf = cdf;
    }
    return d;
}

double OrderStat::cdf_at(double t) const {
    auto it = std::upper_bound(values.begin(), values.end(), t);
    if (it == values.begin()) return 0.0;
    return cdf[static_cast<std::size_t>(it - values.begin()) - 1];
}

OrderStat order_stat(const DiscreteDist& Y, int m, int g) {
    if (g < 1 || g > m) throw DomainError("need 1 <= g <= m");
    // C(m, j) for j = 0..m
    std::vector<double> binom(static_cast<std::size_t>(m) + 1, 1.0);
    for (int j = 1; j <= m; ++j)
        binom[static_cast<std::size_t>(j)] =
            binom[static_cast<std::size_t>(j) - 1] * (m - j + 1) / j;

    OrderStat os;
    os.values = Y.values;
    os.cdf.resize(Y.values.size());
    double cum = 0;
    double prev = 0;
    for (std::size_t i = 0; i < Y.values.size(); ++i) {
        cum += Y.probs[i];
        double fy = std::min(cum, 1.0);
        double fg = 0;
        for (int j = g; j <= m; ++j)
            fg += binom[static_cast<std::size_t>(j)] * std::pow(fy, j) *
                  std::pow(1.0 - fy, m - j);
        fg = std::min(fg, 1.0);
        os.cdf[i] = fg;
        os.mean += (fg - prev) * Y.values[i];
        prev = fg;
    }
    if (!os.cdf.empty()) os.cdf.back() = 1.0;
    return os;
}

ProcessDelay process_delay(const PeriodDistribution& T, std::span<const Round> rounds,
                           double step_ms) {
    if (rounds.empty()) throw DomainError("need at least one round");
    DiscreteDist wgrid = discretize_waiting(T, step_ms);
    DiscreteDist tdist = to_discrete(T);
    ProcessDelay out;
    for (const Round& r : rounds) {
        const DiscreteDist& y = r.kind == RoundKind::RESIDUAL ? wgrid : tdist;
        out.mean += order_stat(y, r.m, r.g).mean;
    }
    double k = static_cast<double>(rounds.size());
    out.lower_bound = T.min() * (k - 1);
    out.upper_bound = T.max() * k;
    return out;
}

double pbft_delay(const PeriodDistribution& T, int n, PbftViewpoint vp, double step_ms) {
    if (n < 4) throw DomainError("pbft needs n >= 4");
    int f = (n - 1) / 3;
    DiscreteDist wgrid = discretize_waiting(T, step_ms);
    DiscreteDist tdist = to_discrete(T);
    double total = waiting_time(T).mean; // E(W^1_(1))
    total += order_stat(wgrid, n - 1, 2 * f).mean;
    if (vp == PbftViewpoint::PRIMARY)
        total += order_stat(tdist, n - 1, 2 * f).mean;
    else
        total += order_stat(tdist, n, 2 * f + 1).mean;
    return total;
}

double retrans_delay(double tau_p_ms, int r, double tau_d_ms) {
    if (r < 0) throw DomainError("retransmission count must be >= 0");
    return tau_p_ms + r * tau_d_ms;
}

Overhead overhead(double len_ext, double len_pkt, double n_extended, double n_total) {
    if (!(len_pkt > 0)) throw DomainError("packet length must be > 0");
    if (len_ext < 0) throw DomainError("extension length must be >= 0");
    if (n_extended < 0 || n_total < n_extended)
        throw DomainError("need n_total >= n_extended >= 0");
    Overhead o;
    o.per_packet = len_ext / len_pkt * 100.0;
    o.expected = n_total > 0 ? len_ext * n_extended / (len_pkt * n_total) * 100.0 : 0.0;
    return o;
}

double Ecdf::at(double v) const {
    auto it = std::upper_bound(x.begin(), x.end(), v);
    if (it == x.begin()) return 0.0;
    return F[static_cast<std::size_t>(it - x.begin()) - 1];
}

Ecdf ecdf(std::vector<double> samples) {
    if (samples.empty()) throw DomainError("ecdf needs at least one sample");
    std::sort(samples.begin(), samples.end());
    Ecdf e;
    std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && samples[i + 1] == samples[i]) continue;
        e.x.push_back(samples[i]);
        e.F.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
    }
    return e;
}

double sup_distance(const Ecdf& e, const std::function<double(double)>& cdf) {
    // For a right-continuous step eCDF the supremum against a continuous CDF
    // is attained at the jump points (from above or below).
    double sup = 0;
    double prev = 0;
    for (std::size_t i = 0; i < e.x.size(); ++i) {
        double c = cdf(e.x[i]);
        sup = std::max(sup, std::abs(e.F[i] - c));
        sup = std::max(sup, std::abs(prev - c));
        prev = e.F[i];
    }
    return sup;
}

} // namespace vep::analytics
