#include "artfeat/hedonic/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "artfeat/error.hpp"

namespace artfeat::hedonic {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<std::size_t> dependent_from_qr(const Eigen::HouseholderQR<MatrixXd>& qr,
                                           const MatrixXd& X) {
  std::vector<std::size_t> out;
  const MatrixXd& packed = qr.matrixQR();
  for (Index j = 0; j < X.cols(); ++j) {
    const double norm = X.col(j).norm();
    if (norm == 0.0 || std::abs(packed(j, j)) <= kRankTolerance * norm) {
      out.push_back(static_cast<std::size_t>(j));
    }
  }
  return out;
}

MatrixXd upper_r_inverse(const Eigen::HouseholderQR<MatrixXd>& qr, Index k) {
  const MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return R.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(k, k));
}

RobustCovariance sandwich(const Eigen::HouseholderQR<MatrixXd>& qr, const MatrixXd& X,
                          const VectorXd& residuals, RobustKind kind) {
  const Index n = X.rows();
  const Index k = X.cols();
  if (residuals.size() != n) throw std::invalid_argument("residual length does not match X");

  // With X = QR, (X'X)^-1 = R^-1 R^-T and the meat X' diag(e^2) X becomes
  // R' (Q' diag(e^2) Q) R, so the sandwich is R^-1 (B'B) R^-T for B = diag(e) X R^-1.
  const MatrixXd r_inv = upper_r_inverse(qr, k);
  const MatrixXd B = residuals.asDiagonal() * (X * r_inv);
  MatrixXd cov = r_inv * (B.transpose() * B) * r_inv.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();

  if (kind == RobustKind::HC1) {
    const double scale = static_cast<double>(n) / static_cast<double>(n - k);
    cov *= scale;
  }
  RobustCovariance out;
  out.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  out.covariance = std::move(cov);
  return out;
}

}  // namespace

std::optional<std::size_t> FitResult::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

namespace {
std::size_t require_index(const FitResult& f, std::string_view name) {
  const auto idx = f.index_of(name);
  if (!idx) throw std::out_of_range("no column named '" + std::string(name) + "'");
  return *idx;
}
}  // namespace

double FitResult::coefficient(std::string_view name) const {
  return coefficients(static_cast<Index>(require_index(*this, name)));
}
double FitResult::se(std::string_view name) const {
  return robust_se(static_cast<Index>(require_index(*this, name)));
}
double FitResult::p_value(std::string_view name) const {
  return p_values(static_cast<Index>(require_index(*this, name)));
}

std::vector<std::size_t> dependent_columns(const MatrixXd& X) {
  if (X.cols() == 0) return {};
  Eigen::HouseholderQR<MatrixXd> qr(X);
  return dependent_from_qr(qr, X);
}

RobustCovariance robust_covariance(const MatrixXd& X, const VectorXd& residuals, RobustKind kind) {
  if (X.rows() <= X.cols()) {
    throw InsufficientData(static_cast<std::size_t>(X.rows()), static_cast<std::size_t>(X.cols()));
  }
  Eigen::HouseholderQR<MatrixXd> qr(X);
  return sandwich(qr, X, residuals, kind);
}

double two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

Inference inference(const VectorXd& coefficients, const VectorXd& se, double df) {
  Inference out;
  out.t_stats.resize(coefficients.size());
  out.p_values.resize(coefficients.size());
  for (Index j = 0; j < coefficients.size(); ++j) {
    const double b = coefficients(j);
    const double s = se(j);
    if (s == 0.0) {
      if (b == 0.0) {
        out.t_stats(j) = 0.0;
        out.p_values(j) = 1.0;
      } else {
        out.t_stats(j) = std::copysign(std::numeric_limits<double>::infinity(), b);
        out.p_values(j) = 0.0;
      }
      continue;
    }
    out.t_stats(j) = b / s;
    out.p_values(j) = two_sided_p(out.t_stats(j), df);
  }
  return out;
}

std::string_view significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

FitResult ols_fit(const DesignMatrix& design, RobustKind kind) {
  const MatrixXd& X = design.X;
  const VectorXd& y = design.y;
  const Index n = X.rows();
  const Index k = X.cols();
  if (n <= k || k == 0) throw InsufficientData(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  if (y.size() != n) throw std::invalid_argument("response length does not match X");

  Eigen::HouseholderQR<MatrixXd> qr(X);
  if (const auto dep = dependent_from_qr(qr, X); !dep.empty()) {
    const std::size_t j = dep.front();
    throw RankDeficient(j < design.names.size() ? design.names[j] : "column " + std::to_string(j));
  }

  FitResult fit;
  fit.names = design.names;
  fit.blocks = design.blocks;
  if (fit.names.size() != static_cast<std::size_t>(k)) {
    fit.names.resize(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
      if (fit.names[j].empty()) fit.names[j] = "x" + std::to_string(j);
    }
  }
  fit.blocks.resize(static_cast<std::size_t>(k));
  fit.notes = design.notes;
  fit.n = static_cast<std::size_t>(n);
  fit.k = static_cast<std::size_t>(k);
  fit.robust_kind = kind;

  fit.coefficients = qr.solve(y);
  fit.fitted = X * fit.coefficients;
  fit.residuals = y - fit.fitted;

  const double ssr = fit.residuals.squaredNorm();
  const double sst = (y.array() - y.mean()).matrix().squaredNorm();
  if (k == 1) {
    fit.r_squared = 0.0;
  } else if (sst == 0.0) {
    fit.r_squared = ssr == 0.0 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ssr / sst, 0.0, 1.0);
  }
  fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) /
                                static_cast<double>(n - k);

  const MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<MatrixXd> svd(R);
  const auto& sv = svd.singularValues();
  fit.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                  : std::numeric_limits<double>::infinity();

  RobustCovariance cov = sandwich(qr, X, fit.residuals, kind);
  fit.covariance = std::move(cov.covariance);
  fit.robust_se = std::move(cov.se);

  Inference inf = inference(fit.coefficients, fit.robust_se, static_cast<double>(n - k));
  fit.t_stats = std::move(inf.t_stats);
  fit.p_values = std::move(inf.p_values);
  return fit;
}

}  // namespace artfeat::hedonic
