#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "simbench/error.hpp"
#include "simbench/metrics.hpp"

// k-NN manifold metrics (PR, DC) and the retrieval-style IRPR metric.

namespace simbench {
namespace {

double sq_dist(const float* a, const float* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double diff = static_cast<double>(a[d]) - static_cast<double>(b[d]);
        s += diff * diff;
    }
    return s;
}

double f1(double precision, double recall) {
    double s = precision + recall;
    return s == 0.0 ? 0.0 : 2.0 * precision * recall / s;
}

void check_pair(const EmbeddedCorpus& p, const EmbeddedCorpus& q) {
    if (p.dim != q.dim) throw data_error("embedding dimension mismatch");
    if (p.rows == 0 || q.rows == 0) throw data_error("empty embedded corpus");
}

// Fraction of `points` rows lying inside at least one k-NN ball of `manifold`.
double manifold_coverage(const EmbeddedCorpus& manifold, const std::vector<double>& radii,
                         const EmbeddedCorpus& points) {
    std::size_t inside = 0;
    for (std::size_t qi = 0; qi < points.rows; ++qi) {
        for (std::size_t pi = 0; pi < manifold.rows; ++pi) {
            if (sq_dist(points.row(qi), manifold.row(pi), points.dim) <=
                radii[pi] * radii[pi]) {
                ++inside;
                break;
            }
        }
    }
    return static_cast<double>(inside) / static_cast<double>(points.rows);
}

}  // namespace

std::vector<double> knn_radius(const EmbeddedCorpus& ec, std::size_t k) {
    if (k < 1 || k >= ec.rows)
        throw data_error("knn_radius requires 1 <= k < N (k=" + std::to_string(k) +
                         ", N=" + std::to_string(ec.rows) + ")");
    std::vector<double> radii(ec.rows);
    std::vector<std::pair<double, std::size_t>> dists;
    dists.reserve(ec.rows - 1);
    for (std::size_t i = 0; i < ec.rows; ++i) {
        dists.clear();
        for (std::size_t j = 0; j < ec.rows; ++j) {
            if (j == i) continue;
            dists.emplace_back(sq_dist(ec.row(i), ec.row(j), ec.dim), j);
        }
        // Ties resolved by row index so the radius is reproducible.
        std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
        radii[i] = std::sqrt(dists[k - 1].first);
    }
    return radii;
}

double pr_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                   const MetricConfig& cfg) {
    check_pair(p, q);
    if (cfg.knn_k >= std::min(p.rows, q.rows))
        throw data_error("pr_distance requires knn_k < min corpus size");
    auto radii_p = knn_radius(p, cfg.knn_k);
    auto radii_q = knn_radius(q, cfg.knn_k);
    double precision = manifold_coverage(p, radii_p, q);
    double recall = manifold_coverage(q, radii_q, p);
    return 1.0 - f1(precision, recall);
}

double dc_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                   const MetricConfig& cfg) {
    check_pair(p, q);
    if (cfg.knn_k >= std::min(p.rows, q.rows))
        throw data_error("dc_distance requires knn_k < min corpus size");
    auto radii_p = knn_radius(p, cfg.knn_k);

    std::size_t memberships = 0;
    for (std::size_t qi = 0; qi < q.rows; ++qi)
        for (std::size_t pi = 0; pi < p.rows; ++pi)
            if (sq_dist(q.row(qi), p.row(pi), q.dim) <= radii_p[pi] * radii_p[pi])
                ++memberships;
    double density = static_cast<double>(memberships) /
                     (static_cast<double>(cfg.knn_k) * static_cast<double>(q.rows));
    density = std::min(density, 1.0);

    std::size_t covered = 0;
    for (std::size_t pi = 0; pi < p.rows; ++pi) {
        for (std::size_t qi = 0; qi < q.rows; ++qi) {
            if (sq_dist(q.row(qi), p.row(pi), q.dim) <= radii_p[pi] * radii_p[pi]) {
                ++covered;
                break;
            }
        }
    }
    double coverage = static_cast<double>(covered) / static_cast<double>(p.rows);
    return 1.0 - f1(density, coverage);
}

double irpr_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q) {
    check_pair(p, q);
    auto norms = [](const EmbeddedCorpus& ec) {
        std::vector<double> out(ec.rows);
        for (std::size_t i = 0; i < ec.rows; ++i) {
            double s = 0.0;
            const float* r = ec.row(i);
            for (std::size_t d = 0; d < ec.dim; ++d)
                s += static_cast<double>(r[d]) * static_cast<double>(r[d]);
            out[i] = std::sqrt(s);
        }
        return out;
    };
    std::vector<double> norm_p = norms(p), norm_q = norms(q);
    for (double n : norm_p)
        if (n == 0.0) throw data_error("irpr_distance: zero-norm row in reference");
    for (double n : norm_q)
        if (n == 0.0) throw data_error("irpr_distance: zero-norm row in target");

    auto best_sim = [&](const float* x, double xn, const EmbeddedCorpus& ys,
                        const std::vector<double>& yn) {
        double best = -1.0;
        for (std::size_t i = 0; i < ys.rows; ++i) {
            double dot = 0.0;
            const float* y = ys.row(i);
            for (std::size_t d = 0; d < ys.dim; ++d)
                dot += static_cast<double>(x[d]) * static_cast<double>(y[d]);
            best = std::max(best, dot / (xn * yn[i]));
        }
        return 0.5 * (1.0 + best);  // cosine in [-1,1] -> similarity in [0,1]
    };

    double precision = 0.0;
    for (std::size_t i = 0; i < q.rows; ++i)
        precision += best_sim(q.row(i), norm_q[i], p, norm_p);
    precision /= static_cast<double>(q.rows);

    double recall = 0.0;
    for (std::size_t i = 0; i < p.rows; ++i)
        recall += best_sim(p.row(i), norm_p[i], q, norm_q);
    recall /= static_cast<double>(p.rows);

    return 1.0 - f1(precision, recall);
}

}  // namespace simbench
