#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "artfeat/hedonic/design.hpp"
#include "artfeat/hedonic/model_spec.hpp"

namespace artfeat::hedonic {

// Relative tolerance on |R_jj| / ||x_j|| below which column j counts as a
// linear combination of the columns before it.
inline constexpr double kRankTolerance = 1e-10;

struct FitResult {
  std::vector<std::string> names;
  std::vector<std::optional<DummyBlock>> blocks;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd robust_se;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  Eigen::MatrixXd covariance;
  RobustKind robust_kind{RobustKind::HC1};
  double r_squared{0.0};
  double adj_r_squared{0.0};
  double condition_number{0.0};
  std::size_t n{0};
  std::size_t k{0};
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted;
  std::vector<std::string> notes;

  // Index of a named column; std::nullopt if absent.
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws std::out_of_range for an unknown name.
  double coefficient(std::string_view name) const;
  double se(std::string_view name) const;
  double p_value(std::string_view name) const;
};

struct RobustCovariance {
  Eigen::MatrixXd covariance;
  Eigen::VectorXd se;
};

struct Inference {
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
};

// Columns whose QR diagonal falls below kRankTolerance relative to the
// column norm, in column order.
std::vector<std::size_t> dependent_columns(const Eigen::MatrixXd& X);

/// Sandwich (X'X)^-1 (sum e_i^2 x_i x_i') (X'X)^-1; HC1 scales it by n/(n-k).
RobustCovariance robust_covariance(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                                   RobustKind kind);

/// Two-sided p-value of t under Student-t with df degrees of freedom.
double two_sided_p(double t, double df);

/// t = beta / se (se == 0 gives +-inf with p = 0, or t = 0, p = 1 when beta
/// is also 0).
Inference inference(const Eigen::VectorXd& coefficients, const Eigen::VectorXd& se, double df);

/// "***" for p < 0.01, "**" for p < 0.05, "*" for p < 0.1, else "".
std::string_view significance_stars(double p);

/// Least squares by Householder QR (no normal equations). Throws
/// RankDeficient naming the first dependent column.
FitResult ols_fit(const DesignMatrix& design, RobustKind kind = RobustKind::HC1);

}  // namespace artfeat::hedonic
