#include <Eigen/Dense>

#include "simbench/error.hpp"
#include "simbench/metrics.hpp"

namespace simbench {
namespace {

Eigen::MatrixXd to_matrix(const EmbeddedCorpus& ec) {
    Eigen::MatrixXd m(ec.rows, ec.dim);
    for (std::size_t r = 0; r < ec.rows; ++r)
        for (std::size_t d = 0; d < ec.dim; ++d)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) =
                static_cast<double>(ec.row(r)[d]);
    return m;
}

// Eigenvalues below 1e-10 * lambda_max are treated as zero so the square
// root stays real under rounding noise.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    Eigen::VectorXd vals = eig.eigenvalues();
    const double floor_at = 1e-10 * std::max(0.0, vals.maxCoeff());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        vals(i) = vals(i) > floor_at ? std::sqrt(vals(i)) : 0.0;
    return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

GaussianMoments gaussian_moments(const EmbeddedCorpus& ec) {
    if (ec.rows < 2) throw data_error("gaussian_moments requires >= 2 rows");
    Eigen::MatrixXd x = to_matrix(ec);
    Eigen::RowVectorXd mu = x.colwise().mean();
    Eigen::MatrixXd centered = x.rowwise() - mu;
    Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(ec.rows - 1);
    cov = 0.5 * (cov + cov.transpose());

    GaussianMoments gm;
    gm.dim = ec.dim;
    gm.mean.assign(mu.data(), mu.data() + mu.size());
    gm.covariance.resize(ec.dim * ec.dim);
    for (std::size_t r = 0; r < ec.dim; ++r)
        for (std::size_t c = 0; c < ec.dim; ++c)
            gm.covariance[r * ec.dim + c] =
                cov(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return gm;
}

double fid(const EmbeddedCorpus& p, const EmbeddedCorpus& q) {
    if (p.dim != q.dim) throw data_error("fid: embedding dimension mismatch");
    if (p.rows < 2 || q.rows < 2) throw data_error("fid requires >= 2 rows per side");

    const auto d = static_cast<Eigen::Index>(p.dim);
    GaussianMoments mp = gaussian_moments(p);
    GaussianMoments mq = gaussian_moments(q);
    Eigen::Map<const Eigen::VectorXd> mu_p(mp.mean.data(), d);
    Eigen::Map<const Eigen::VectorXd> mu_q(mq.mean.data(), d);
    Eigen::Map<const Eigen::MatrixXd> sp(mp.covariance.data(), d, d);
    Eigen::Map<const Eigen::MatrixXd> sq(mq.covariance.data(), d, d);

    // Tr((Sp Sq)^{1/2}) computed symmetrically as Tr((Sp^{1/2} Sq Sp^{1/2})^{1/2}).
    Eigen::MatrixXd sp_half = psd_sqrt(sp);
    Eigen::MatrixXd inner = sp_half * sq * sp_half;
    inner = 0.5 * (inner + inner.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(inner);
    Eigen::VectorXd vals = eig.eigenvalues();
    const double floor_at = 1e-10 * std::max(0.0, vals.maxCoeff());
    double trace_sqrt = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) > floor_at) trace_sqrt += std::sqrt(vals(i));

    double mean_term = (mu_p - mu_q).squaredNorm();
    double value = mean_term + sp.trace() + sq.trace() - 2.0 * trace_sqrt;
    return std::max(0.0, value);
}

}  // namespace simbench
