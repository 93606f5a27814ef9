#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "simbench/error.hpp"
#include "simbench/metrics.hpp"
#include "simbench/rng.hpp"

// Two-sample classifier distance: a linear max-margin classifier trained by
// stochastic subgradient descent on the hinge loss with L2 regularization
// (Pegasos-style schedule), evaluated on a held-out stratified split.

namespace simbench {
namespace {

constexpr double kLambda = 1e-4;

// Test accuracy maps to a distance through
//   (1 - beta) * max(0, 2*acc - 1) + beta * acc.
// The pure clamped ramp would put a point mass at 0 for every chance-level
// comparison; because tied judgements count as correct, that mass would bias
// judgement accuracy on indistinguishable corpora well above 1/2. The small
// linear term keeps the map strictly increasing while chance-level runs stay
// near zero.
constexpr double kBlend = 0.1;

struct Split {
    std::vector<std::size_t> train, test;  // pooled row ids
};

Split stratified_split(std::size_t n_p, std::size_t n_q, double split_fraction,
                       Rng& rng) {
    Split s;
    auto add = [&](std::size_t count, std::size_t offset) {
        std::vector<std::size_t> idx(count);
        std::iota(idx.begin(), idx.end(), offset);
        rng.shuffle(idx);
        std::size_t n_train = static_cast<std::size_t>(
            std::floor(split_fraction * static_cast<double>(count)));
        for (std::size_t i = 0; i < count; ++i)
            (i < n_train ? s.train : s.test).push_back(idx[i]);
    };
    add(n_p, 0);
    add(n_q, n_p);
    return s;
}

}  // namespace

double classifier_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                           const MetricConfig& cfg) {
    if (p.dim != q.dim) throw data_error("classifier_distance: dimension mismatch");
    if (p.rows < 10 || q.rows < 10)
        throw data_error("classifier_distance requires >= 10 rows per side");
    if (cfg.classifier_split <= 0.0 || cfg.classifier_split >= 1.0)
        throw config_error("classifier_split must be in (0,1)");

    const std::size_t dim = p.dim;
    auto row_of = [&](std::size_t pooled) {
        return pooled < p.rows ? p.row(pooled) : q.row(pooled - p.rows);
    };
    auto label_of = [&](std::size_t pooled) { return pooled < p.rows ? -1.0 : 1.0; };

    Rng rng(derive_seed(cfg.seed, "classifier"));
    Split split = stratified_split(p.rows, q.rows, cfg.classifier_split, rng);

    std::size_t test_p = 0, test_q = 0;
    for (std::size_t id : split.test) (id < p.rows ? test_p : test_q)++;
    if (test_p < 2 || test_q < 2)
        throw data_error("classifier_distance: a class has fewer than 2 test samples");

    std::vector<double> w(dim, 0.0);
    double bias = 0.0;
    std::size_t step = 0;
    std::vector<std::size_t> order = split.train;
    for (std::size_t epoch = 0; epoch < std::max<std::size_t>(1, cfg.classifier_epochs);
         ++epoch) {
        rng.shuffle(order);
        for (std::size_t id : order) {
            ++step;
            const double eta = 1.0 / (kLambda * static_cast<double>(step));
            const float* x = row_of(id);
            const double y = label_of(id);
            double margin = bias;
            for (std::size_t d = 0; d < dim; ++d) margin += w[d] * x[d];
            const double shrink = 1.0 - eta * kLambda;
            for (double& wd : w) wd *= shrink;
            if (y * margin < 1.0) {
                for (std::size_t d = 0; d < dim; ++d) w[d] += eta * y * x[d];
                bias += eta * y;  // bias unregularized
            }
        }
    }

    std::size_t correct = 0;
    for (std::size_t id : split.test) {
        double score = bias;
        const float* x = row_of(id);
        for (std::size_t d = 0; d < dim; ++d) score += w[d] * x[d];
        if ((score >= 0.0 ? 1.0 : -1.0) == label_of(id)) ++correct;
    }
    const double acc = static_cast<double>(correct) / static_cast<double>(split.test.size());
    return (1.0 - kBlend) * std::max(0.0, 2.0 * acc - 1.0) + kBlend * acc;
}

}  // namespace simbench
