#include "simbench/measures.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "simbench/error.hpp"
#include "simbench/rng.hpp"
#include "simbench/stats.hpp"

namespace simbench {
namespace {

std::pair<std::vector<double>, std::vector<double>> level_and_z(const DistanceTable& t) {
    std::vector<double> levels, zs;
    levels.reserve(t.entries.size());
    zs.reserve(t.entries.size());
    for (const auto& e : t.entries) {
        levels.push_back(static_cast<double>(e.level));
        zs.push_back(e.z);
    }
    return {std::move(levels), std::move(zs)};
}

// raw distances keyed by (i, j), one map per repetition
std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> raw_by_rep(
    const DistanceTable& t) {
    std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> maps;
    for (const auto& e : t.entries) {
        if (e.repetition >= maps.size()) maps.resize(e.repetition + 1);
        maps[e.repetition][{e.i, e.j}] = e.raw;
    }
    return maps;
}

double lookup(const std::map<std::pair<std::size_t, std::size_t>, double>& m,
              std::size_t i, std::size_t j, const std::string& metric) {
    auto it = m.find({i, j});
    if (it == m.end())
        throw data_error("distance table for " + metric + " is missing pair (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
}

}  // namespace

double monotonicity(const DistanceTable& table) {
    auto [levels, zs] = level_and_z(table);
    return stats::spearman(levels, zs);
}

double separability(const DistanceTable& table) {
    std::map<std::size_t, std::vector<double>> by_level;
    for (const auto& e : table.entries) by_level[e.level].push_back(e.z);
    std::vector<std::vector<double>> groups;
    groups.reserve(by_level.size());
    for (auto& [_, g] : by_level) groups.push_back(std::move(g));
    return stats::omega_squared(groups);
}

double linearity(const DistanceTable& table) {
    auto [levels, zs] = level_and_z(table);
    return stats::ols_fit(levels, zs).r_squared;
}

double accuracy(const DistanceTable& table, const JudgementSet& js) {
    auto reps = raw_by_rep(table);
    if (reps.empty() || js.judgements.empty())
        throw std::invalid_argument("accuracy: empty table or judgement set");
    double total = 0.0;
    for (const auto& rep : reps) {
        std::size_t correct = 0;
        for (const auto& jm : js.judgements) {
            double inner = lookup(rep, jm.q, jm.r, table.metric);
            double outer = lookup(rep, jm.i, jm.j, table.metric);
            if (inner <= outer) ++correct;
        }
        total += static_cast<double>(correct) / static_cast<double>(js.judgements.size());
    }
    return total / static_cast<double>(reps.size());
}

double weighted_accuracy_from(const std::vector<bool>& correct,
                              const std::vector<double>& weights) {
    if (correct.size() != weights.size() || correct.empty())
        throw std::invalid_argument("weighted_accuracy_from: size mismatch");
    double won = 0.0, total = 0.0;
    for (std::size_t idx = 0; idx < correct.size(); ++idx) {
        total += weights[idx];
        if (correct[idx]) won += weights[idx];
    }
    return won / total;
}

double weighted_accuracy(const DistanceTable& table, const JudgementSet& js) {
    auto reps = raw_by_rep(table);
    if (reps.empty() || js.judgements.empty())
        throw std::invalid_argument("weighted_accuracy: empty table or judgement set");
    std::vector<double> weights;
    weights.reserve(js.judgements.size());
    for (const auto& jm : js.judgements) weights.push_back(jm.weight());

    double total = 0.0;
    std::vector<bool> correct(js.judgements.size());
    for (const auto& rep : reps) {
        for (std::size_t idx = 0; idx < js.judgements.size(); ++idx) {
            const auto& jm = js.judgements[idx];
            correct[idx] = lookup(rep, jm.q, jm.r, table.metric) <=
                           lookup(rep, jm.i, jm.j, table.metric);
        }
        total += weighted_accuracy_from(correct, weights);
    }
    return total / static_cast<double>(reps.size());
}

namespace {

RobustnessRun robustness_core(
    const SizedDistanceFn& distance,
    const std::function<std::pair<std::size_t, std::size_t>(std::size_t)>& sizes_for,
    const RobustnessOptions& opt) {
    if (opt.grid.empty() || opt.repetitions == 0 || opt.asymptote_reps == 0)
        throw config_error("robustness sweep needs a grid and repetitions");

    RobustnessRun run;
    for (std::size_t r = 0; r < opt.asymptote_reps; ++r)
        run.asymptote += distance(opt.asymptote_size, opt.asymptote_size,
                                  derive_seed(opt.seed, "robust-asymptote", r));
    run.asymptote /= static_cast<double>(opt.asymptote_reps);
    if (run.asymptote == 0.0)
        throw data_error("robustness sweep: asymptotic distance is zero");

    double err = 0.0;
    for (std::size_t gi = 0; gi < opt.grid.size(); ++gi) {
        auto [sa, sb] = sizes_for(opt.grid[gi]);
        for (std::size_t r = 0; r < opt.repetitions; ++r) {
            double d = distance(sa, sb,
                                derive_seed(opt.seed, "robust-grid", gi * 1000003ULL + r));
            err += std::abs(d - run.asymptote) / std::abs(run.asymptote);
            run.points.push_back({opt.grid[gi], d});
        }
    }
    run.score = 1.0 - err / static_cast<double>(run.points.size());
    return run;
}

}  // namespace

RobustnessRun size_robustness_run(const SizedDistanceFn& distance,
                                  const RobustnessOptions& opt) {
    return robustness_core(
        distance, [](std::size_t s) { return std::pair{s, s}; }, opt);
}

double size_robustness(const SizedDistanceFn& distance, const RobustnessOptions& opt) {
    return size_robustness_run(distance, opt).score;
}

RobustnessRun imbalance_robustness_run(const SizedDistanceFn& distance,
                                       std::size_t total_n, const RobustnessOptions& opt) {
    for (std::size_t s : opt.grid)
        if (s >= total_n)
            throw config_error("imbalance grid size " + std::to_string(s) +
                               " must be below N = " + std::to_string(total_n));
    return robustness_core(
        distance, [total_n](std::size_t s) { return std::pair{s, total_n - s}; }, opt);
}

double imbalance_robustness(const SizedDistanceFn& distance, std::size_t total_n,
                            const RobustnessOptions& opt) {
    return imbalance_robustness_run(distance, total_n, opt).score;
}

std::vector<std::size_t> default_robustness_grid(std::size_t asymptote_size) {
    // Paper scale: asymptote 3000, grid 50 + 200*m for m = 0..14.
    std::vector<std::size_t> grid;
    for (std::size_t m = 0; m < 15; ++m) {
        double s = (50.0 + 200.0 * static_cast<double>(m)) *
                   static_cast<double>(asymptote_size) / 3000.0;
        grid.push_back(std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(s))));
    }
    return grid;
}

std::size_t default_imbalance_total(std::size_t asymptote_size) {
    return std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(2900.0 * asymptote_size / 3000.0)));
}

TimingResult time_efficiency(const std::function<void()>& evaluate_once,
                             std::size_t n_ops) {
    if (n_ops < 100) throw config_error("time_efficiency requires n_ops >= 100");
    using clock = std::chrono::steady_clock;
    for (;;) {
        auto start = clock::now();
        for (std::size_t i = 0; i < n_ops; ++i) evaluate_once();
        double elapsed = std::chrono::duration<double>(clock::now() - start).count();
        if (elapsed >= 0.01) {
            TimingResult res;
            res.ops = n_ops;
            res.elapsed_s = elapsed;
            res.t_per_100ops = (static_cast<double>(n_ops) / 100.0) / elapsed;
            return res;
        }
        n_ops *= 2;  // timer resolution too coarse; try a longer run
    }
}

}  // namespace simbench
