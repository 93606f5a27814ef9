#include "simbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "simbench/rng.hpp"

namespace simbench {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                    Rng& rng) {
    if (count > n) throw std::invalid_argument("sample size exceeds population");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // Partial Fisher-Yates: only the first `count` positions are settled.
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace simbench

namespace simbench::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty range");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample variance needs >= 2 values");
    double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

double sample_stddev(std::span<const double> xs) {
    return std::sqrt(sample_variance(xs));
}

std::vector<double> standardize(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("standardize needs >= 2 values");
    double m = mean(values);
    double sd = sample_stddev(values);
    std::vector<double> out(values.size(), 0.0);
    if (sd == 0.0) return out;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - m) / sd;
    return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("pearson needs two equal-length ranges of >= 2");
    double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("pearson undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        // Ranks are 1-based; a tie run [i, j] gets the mean rank of the run.
        double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("spearman needs two equal-length ranges of >= 3");
    auto rx = average_ranks(xs);
    auto ry = average_ranks(ys);
    return pearson(rx, ry);
}

OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("ols needs two equal-length ranges of >= 2");
    double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("ols undefined for constant regressor");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += e * e;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

double omega_squared(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("omega_squared needs >= 2 groups");
    std::size_t total_n = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) throw std::invalid_argument("omega_squared: empty group");
        total_n += g.size();
        grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    }
    const double grand_mean = grand_sum / static_cast<double>(total_n);

    double ss_total = 0.0, ss_treat = 0.0;
    for (const auto& g : groups) {
        double gm = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        ss_treat += static_cast<double>(g.size()) * (gm - grand_mean) * (gm - grand_mean);
        for (double v : g) ss_total += (v - grand_mean) * (v - grand_mean);
    }
    const double ss_res = ss_total - ss_treat;
    const double df_treat = static_cast<double>(groups.size() - 1);
    const double df_res = static_cast<double>(total_n - groups.size());

    double ms_res = 0.0;
    if (df_res >= 1.0) {
        ms_res = ss_res / df_res;
    } else if (ss_res > 0.0) {
        throw std::invalid_argument("omega_squared: no residual degrees of freedom");
    }
    const double denom = ss_total + ms_res;
    if (denom == 0.0) return 0.0;  // all observations identical
    return (ss_treat - df_treat * ms_res) / denom;
}

}  // namespace simbench::stats
