#ifndef TSGEVAL_LINALG_HPP_
#define TSGEVAL_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "tsgeval/error.hpp"

namespace tsgeval {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Mean and covariance of a feature cloud.
struct GaussianSummary {
  VectorXd mean;
  MatrixXd cov;
  std::size_t n_points = 0;

  Eigen::Index dim() const noexcept { return mean.size(); }
};

namespace linalg_detail {

inline double symmetry_defect(const MatrixXd& m) {
  const double scale = std::max(m.norm(), 1e-300);
  return (m - m.transpose()).norm() / scale;
}

inline std::string diagnostics(const MatrixXd& m) {
  std::ostringstream os;
  os << "dim=" << m.rows() << " frobenius=" << m.norm();
  if (m.size() > 0) {
    os << " diag_min=" << m.diagonal().minCoeff() << " diag_max=" << m.diagonal().maxCoeff();
  }
  return os.str();
}

}  // namespace linalg_detail

// Builds a summary from an explicit mean and covariance. The covariance is
// symmetrized as (C + C^T) / 2.
inline GaussianSummary make_summary(VectorXd mean, const MatrixXd& cov, std::size_t n_points) {
  if (n_points < 2) throw InputError("a covariance needs at least 2 points, got " + std::to_string(n_points));
  if (cov.rows() != cov.cols() || cov.rows() != mean.size()) {
    throw InputError("summary dimension mismatch: mean " + std::to_string(mean.size()) + ", cov " +
                     std::to_string(cov.rows()) + "x" + std::to_string(cov.cols()));
  }
  if (mean.size() < 1) throw InputError("summary dimension must be at least 1");
  if (linalg_detail::symmetry_defect(cov) > 1e-9) throw InputError("covariance is not symmetric");
  MatrixXd sym = 0.5 * (cov + cov.transpose());
  return {std::move(mean), std::move(sym), n_points};
}

// Column means and the unbiased (n - 1) covariance of an n x D point matrix.
template <typename Derived>
GaussianSummary summarize(const Eigen::MatrixBase<Derived>& points) {
  const auto n = points.rows();
  if (n < 2) throw InputError("summarize needs at least 2 points, got " + std::to_string(n));
  if (points.cols() < 1) throw InputError("summarize needs at least one feature column");
  VectorXd mean = points.colwise().mean().transpose();
  MatrixXd centered = points.rowwise() - mean.transpose();
  MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose());
  return {std::move(mean), std::move(cov), static_cast<std::size_t>(n)};
}

// Principal square root of a symmetric positive semidefinite matrix via its
// eigendecomposition. Eigenvalues in [-1e-8 * lambda_max, 0) are treated as
// roundoff and clamped to zero; anything more negative is an error.
inline MatrixXd psd_sqrt(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("psd_sqrt needs a square matrix");
  if (m.size() == 0) return m;
  if (!m.allFinite()) throw NumericalError("psd_sqrt: non-finite entries; " + linalg_detail::diagnostics(m));
  if (linalg_detail::symmetry_defect(m) > 1e-9) throw InputError("psd_sqrt: matrix is not symmetric");
  const MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("psd_sqrt: eigendecomposition did not converge; " + linalg_detail::diagnostics(m));
  }
  VectorXd lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -1e-8 * scale) {
      std::ostringstream os;
      os << "psd_sqrt: matrix is indefinite (eigenvalue " << lambda(i) << ", largest " << scale
         << "); " << linalg_detail::diagnostics(m);
      throw NumericalError(os.str());
    }
    lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
  }
  const MatrixXd& v = eig.eigenvectors();
  MatrixXd root = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (root + root.transpose());
}

// If the covariance has an eigenvalue below 1e-10 * lambda_max, adds
// eps * I with eps = 1e-6 * mean(diag). Returns true when a shift was added.
inline bool regularize(GaussianSummary& s) {
  if (s.cov.size() == 0) return false;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s.cov, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("regularize: eigendecomposition did not converge; " +
                         linalg_detail::diagnostics(s.cov));
  }
  const VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (lambda.minCoeff() >= 1e-10 * top && top > 0.0) return false;
  const double eps = 1e-6 * s.cov.diagonal().mean();
  if (!(eps > 0.0)) return false;
  s.cov.diagonal().array() += eps;
  return true;
}

// Squared Frechet (2-Wasserstein) distance between N(mu_r, S_r) and
// N(mu_g, S_g):
//   |mu_r - mu_g|^2 + tr(S_r) + tr(S_g) - 2 tr((S_r S_g)^(1/2))
// The cross term uses sqrt(sqrt(S_r) S_g sqrt(S_r)), which is symmetric PSD
// and has the same trace.
inline double frechet_gaussian_distance(const GaussianSummary& r, const GaussianSummary& g) {
  if (r.dim() != g.dim()) {
    throw InputError("frechet distance: dimension mismatch (" + std::to_string(r.dim()) + " vs " +
                     std::to_string(g.dim()) + ")");
  }
  const double mean_term = (r.mean - g.mean).squaredNorm();
  const MatrixXd root_r = psd_sqrt(r.cov);
  MatrixXd inner = root_r * g.cov * root_r;
  inner = 0.5 * (inner + inner.transpose());
  const MatrixXd cross = psd_sqrt(inner);
  const double d = mean_term + r.cov.trace() + g.cov.trace() - 2.0 * cross.trace();
  if (!std::isfinite(d)) throw NumericalError("frechet distance is not finite");
  if (d < 0.0) {
    if (d < -1e-6) {
      std::ostringstream os;
      os << "frechet distance is negative beyond roundoff: " << d;
      throw NumericalError(os.str());
    }
    return 0.0;
  }
  return d;
}

}  // namespace tsgeval

#endif  // TSGEVAL_LINALG_HPP_
