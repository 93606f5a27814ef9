#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "simbench/error.hpp"
#include "simbench/metrics.hpp"
#include "simbench/rng.hpp"

// MAUVE-style distance: k-means quantization of the pooled embeddings,
// cluster histograms, and the area under the divergence frontier.

namespace simbench {
namespace {

constexpr double kSmoothEps = 1e-6;

double sq_dist(const float* a, const double* c, std::size_t dim) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double diff = static_cast<double>(a[d]) - c[d];
        s += diff * diff;
    }
    return s;
}

double kl_divergence(const std::vector<double>& a, const std::vector<double>& b) {
    double kl = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0.0) continue;
        if (b[i] <= 0.0) return std::numeric_limits<double>::infinity();
        kl += a[i] * std::log(a[i] / b[i]);
    }
    return std::max(0.0, kl);
}

std::vector<double> smoothed_histogram(const std::vector<std::size_t>& assign,
                                       std::size_t begin, std::size_t end,
                                       std::size_t clusters) {
    std::vector<double> h(clusters, kSmoothEps);
    for (std::size_t i = begin; i < end; ++i) h[assign[i]] += 1.0;
    double total = 0.0;
    for (double v : h) total += v;
    for (double& v : h) v /= total;
    return h;
}

}  // namespace

std::vector<std::size_t> kmeans_assign(const std::vector<const float*>& rows,
                                       std::size_t dim, std::size_t k,
                                       std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = rows.size();
    if (k < 1 || n == 0) throw std::invalid_argument("kmeans_assign: bad arguments");
    k = std::min(k, n);
    Rng rng(derive_seed(seed, "kmeans"));

    // k-means++ seeding.
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    std::vector<double> first(dim);
    const float* r0 = rows[rng.next_below(n)];
    for (std::size_t d = 0; d < dim; ++d) first[d] = r0[d];
    centroids.push_back(std::move(first));

    std::vector<double> min_d(n);
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& cent : centroids)
                best = std::min(best, sq_dist(rows[i], cent.data(), dim));
            min_d[i] = best;
            total += best;
        }
        std::size_t pick;
        if (total <= 0.0) {
            pick = rng.next_below(n);  // all points coincide with a centroid
        } else {
            double target = rng.next_double() * total;
            pick = n - 1;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += min_d[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        }
        std::vector<double> cent(dim);
        for (std::size_t d = 0; d < dim; ++d) cent[d] = rows[pick][d];
        centroids.push_back(std::move(cent));
    }

    std::vector<std::size_t> assign(n, 0), prev(n, k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            std::size_t arg = 0;
            for (std::size_t c = 0; c < centroids.size(); ++c) {
                double d2 = sq_dist(rows[i], centroids[c].data(), dim);
                if (d2 < best) {
                    best = d2;
                    arg = c;
                }
            }
            assign[i] = arg;
        }
        if (assign == prev) break;
        prev = assign;

        std::vector<std::size_t> counts(centroids.size(), 0);
        std::vector<std::vector<double>> sums(centroids.size(),
                                              std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
            for (std::size_t d = 0; d < dim; ++d) sums[assign[i]][d] += rows[i][d];
        }
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            for (std::size_t d = 0; d < dim; ++d)
                centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
        }
    }
    return assign;
}

double frontier_auc(const std::vector<double>& p, const std::vector<double>& q,
                    double scale_c, std::size_t grid_size) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("frontier_auc: histogram size mismatch");
    if (scale_c <= 0.0 || grid_size < 1)
        throw std::invalid_argument("frontier_auc: bad scale or grid");

    struct Point {
        double x, y;
    };
    std::vector<Point> pts;
    pts.reserve(grid_size + 2);
    pts.push_back({0.0, 1.0});  // lambda -> 1 limit, extended onto the axis
    std::vector<double> mix(p.size());
    for (std::size_t t = 1; t <= grid_size; ++t) {
        double lambda = static_cast<double>(t) / static_cast<double>(grid_size + 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            mix[i] = lambda * p[i] + (1.0 - lambda) * q[i];
        pts.push_back({std::exp(-scale_c * kl_divergence(q, mix)),
                       std::exp(-scale_c * kl_divergence(p, mix))});
    }
    pts.push_back({1.0, 0.0});  // lambda -> 0 limit

    std::stable_sort(pts.begin(), pts.end(),
                     [](const Point& a, const Point& b) { return a.x < b.x; });
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        area += 0.5 * (pts[i].y + pts[i - 1].y) * (pts[i].x - pts[i - 1].x);
    return area;
}

double mauve_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                      const MetricConfig& cfg) {
    if (p.dim != q.dim) throw data_error("mauve_distance: dimension mismatch");
    if (p.rows == 0 || q.rows == 0) throw data_error("mauve_distance: empty corpus");

    const std::size_t total = p.rows + q.rows;
    std::size_t clusters = cfg.mauve_num_clusters > 0 ? cfg.mauve_num_clusters
                                                      : std::max<std::size_t>(2, total / 20);
    if (total < 2 * clusters)
        throw data_error("mauve_distance: need N_P + N_Q >= 2 * clusters");

    std::vector<const float*> rows;
    rows.reserve(total);
    for (std::size_t i = 0; i < p.rows; ++i) rows.push_back(p.row(i));
    for (std::size_t i = 0; i < q.rows; ++i) rows.push_back(q.row(i));

    auto assign = kmeans_assign(rows, p.dim, clusters, cfg.seed);
    auto hist_p = smoothed_histogram(assign, 0, p.rows, clusters);
    auto hist_q = smoothed_histogram(assign, p.rows, total, clusters);

    double auc = frontier_auc(hist_p, hist_q, cfg.mauve_scale_c, cfg.mauve_grid_size);
    return std::min(1.0, std::max(0.0, 1.0 - auc));
}

}  // namespace simbench
