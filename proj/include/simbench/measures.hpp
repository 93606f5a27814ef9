#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simbench/ksc.hpp"

namespace simbench {

// Quality measures for one metric, mirroring the report layout
// (CSV column order: metric, A, A_w, T, rho, omega2, R2, S, I).
struct MeasureReport {
    std::string metric;
    std::optional<double> accuracy;             // A
    std::optional<double> weighted_accuracy;    // A^w
    std::optional<double> time_t;               // T, hundreds of evals per second
    std::optional<double> monotonicity;         // rho
    std::optional<double> separability;         // omega^2
    std::optional<double> linearity;            // R^2
    std::optional<double> size_robustness;      // S
    std::optional<double> imbalance_robustness; // I
    std::size_t repetitions = 0;
    std::string config_snapshot;                // serialized run parameters
    std::string error;                          // non-empty when the metric failed
};

// Spearman rank correlation of z against the separation level, pooled over
// all entries and repetitions.
double monotonicity(const DistanceTable& table);

// One-way ANOVA omega-squared of z grouped by separation level.
double separability(const DistanceTable& table);

// R^2 of the OLS fit of z on the separation level.
double linearity(const DistanceTable& table);

// Rate of judgements d(c_q,c_r) <= d(c_i,c_j) on raw distances, averaged
// over repetitions. Throws if the table is missing a judged pair.
double accuracy(const DistanceTable& table, const JudgementSet& js);

// Hardness-weighted rate: sum of weights of correct judgements over the
// total weight, averaged over repetitions.
double weighted_accuracy(const DistanceTable& table, const JudgementSet& js);

// Weighted rate from explicit per-judgement correctness flags.
double weighted_accuracy_from(const std::vector<bool>& correct,
                              const std::vector<double>& weights);

// Distance evaluation at explicit sample sizes; implementations draw their
// own seeded subsamples. Used by both robustness sweeps so tests can inject
// synthetic metrics.
using SizedDistanceFn =
    std::function<double(std::size_t size_a, std::size_t size_b, std::uint64_t seed)>;

struct RobustnessOptions {
    std::vector<std::size_t> grid;      // sample sizes s
    std::size_t repetitions = 10;
    std::size_t asymptote_size = 600;
    std::size_t asymptote_reps = 10;
    std::uint64_t seed = 0;
};

struct SweepPoint {
    std::size_t size = 0;   // the varied sample size s
    double distance = 0.0;
};

struct RobustnessRun {
    double score = 0.0;
    double asymptote = 0.0;
    std::vector<SweepPoint> points;  // grid order, repetitions inner
};

// S = 1 - mean over (s, rep) of |d(a_s,b_s) - d_hat| / d_hat, where d_hat is
// the mean of asymptote_reps evaluations at the asymptote size (balanced).
// Throws when the asymptotic distance is zero.
RobustnessRun size_robustness_run(const SizedDistanceFn& distance,
                                  const RobustnessOptions& opt);
double size_robustness(const SizedDistanceFn& distance, const RobustnessOptions& opt);

// Same error statistic with |a_s| = s and |b_s| = total_n - s.
RobustnessRun imbalance_robustness_run(const SizedDistanceFn& distance,
                                       std::size_t total_n, const RobustnessOptions& opt);
double imbalance_robustness(const SizedDistanceFn& distance, std::size_t total_n,
                            const RobustnessOptions& opt);

// Paper-scale robustness defaults: grid {50, 250, ..., 2850}, N = 2900,
// asymptote 3000; scaled proportionally when the asymptote shrinks.
std::vector<std::size_t> default_robustness_grid(std::size_t asymptote_size);
std::size_t default_imbalance_total(std::size_t asymptote_size);

struct TimingResult {
    double t_per_100ops = 0.0;  // (ops/100) / elapsed seconds
    std::size_t ops = 0;
    double elapsed_s = 0.0;
};

// Times repeated distance evaluations; n_ops doubles until the elapsed time
// is measurable (>= 10 ms). Requires n_ops >= 100.
TimingResult time_efficiency(const std::function<void()>& evaluate_once,
                             std::size_t n_ops = 100);

}  // namespace simbench
