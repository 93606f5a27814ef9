#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simbench/corpus.hpp"
#include "simbench/embedding.hpp"

namespace simbench {

enum class MetricId { CHI, ZIPF, FID, PR, DC, MAUVE, CLASSIFIER, IRPR };

constexpr MetricId kAllMetrics[] = {MetricId::CHI,   MetricId::ZIPF,
                                    MetricId::FID,   MetricId::PR,
                                    MetricId::DC,    MetricId::MAUVE,
                                    MetricId::CLASSIFIER, MetricId::IRPR};

std::string metric_name(MetricId id);
MetricId metric_from_string(const std::string& name);  // case-insensitive
bool metric_needs_embeddings(MetricId id);

struct MetricConfig {
    std::size_t top_n_tokens = 5000;       // CHI / ZIPF
    std::size_t knn_k = 5;                 // PR / DC
    std::size_t mauve_num_clusters = 0;    // 0 = auto: max(2, (N_P+N_Q)/20)
    double mauve_scale_c = 5.0;
    std::size_t mauve_grid_size = 100;
    double classifier_split = 0.7;         // train fraction
    std::size_t classifier_epochs = 5;
    std::uint64_t seed = 0;
};

struct GaussianMoments {
    std::vector<double> mean;              // D
    std::vector<double> covariance;        // D*D row-major, symmetric
    std::size_t dim = 0;
};

// Sample mean and covariance (denominator N-1). Requires >= 2 rows.
GaussianMoments gaussian_moments(const EmbeddedCorpus& ec);

// --- Surface metrics -------------------------------------------------------

// Kilgarriff-style chi-squared comparison over the top-n tokens of the
// combined vocabulary, counts rescaled to a common total; returned as the
// bounded transform X^2 / (X^2 + T) where T is the total compared count.
double chi_distance(const Corpus& p, const Corpus& q, const MetricConfig& cfg);

// Absolute difference of per-corpus Zipfian coefficients, fitted by OLS on
// (log rank, log frequency) over each corpus's top-n tokens.
double zipf_distance(const Corpus& p, const Corpus& q, const MetricConfig& cfg);

// Per-corpus Zipf coefficient (positive for natural rank-frequency decay).
double zipf_coefficient(const Corpus& c, std::size_t top_n);

// --- Embedding metrics ------------------------------------------------------

// Frechet distance between Gaussian fits:
// ||mu_P - mu_Q||^2 + Tr(S_P + S_Q - 2 (S_P S_Q)^{1/2}).
double fid(const EmbeddedCorpus& p, const EmbeddedCorpus& q);

// Euclidean distance from each row to its k-th nearest other row; exact,
// ties broken by row index. Requires k < N.
std::vector<double> knn_radius(const EmbeddedCorpus& ec, std::size_t k);

// 1 - F1(precision, recall) over k-NN manifold membership.
double pr_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                   const MetricConfig& cfg);

// 1 - F1(density, coverage); density counts ball memberships (clamped to 1).
double dc_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                   const MetricConfig& cfg);

// 1 - area under the divergence frontier of k-means-quantized histograms.
double mauve_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                      const MetricConfig& cfg);

// Area under {(exp(-c KL(q||R)), exp(-c KL(p||R))) : R = l*p+(1-l)*q} for l
// on a uniform grid in (0,1), endpoints (0,1) and (1,0) appended, trapezoid
// over the x-sorted points. Inputs must be probability vectors of equal size.
double frontier_auc(const std::vector<double>& p, const std::vector<double>& q,
                    double scale_c, std::size_t grid_size);

// max(0, 2*acc - 1) blended with a small linear accuracy term (see
// implementation note); a seeded linear hinge-loss classifier supplies acc.
double classifier_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q,
                           const MetricConfig& cfg);

// 1 - F1 of mean best cosine similarities mapped through (1+cos)/2.
double irpr_distance(const EmbeddedCorpus& p, const EmbeddedCorpus& q);

// Dispatch by MetricId; surface metrics read the corpora, embedding metrics
// the matrices.
double metric_distance(MetricId id, const Corpus& p, const EmbeddedCorpus& ep,
                       const Corpus& q, const EmbeddedCorpus& eq,
                       const MetricConfig& cfg);

// Seeded k-means (k-means++ init, Lloyd iterations until stable or max_iter).
// Returns per-row cluster assignments in [0, k).
std::vector<std::size_t> kmeans_assign(const std::vector<const float*>& rows,
                                       std::size_t dim, std::size_t k,
                                       std::uint64_t seed, std::size_t max_iter = 100);

}  // namespace simbench
