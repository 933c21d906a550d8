#ifndef FAVAR_FACTORS_HPP
#define FAVAR_FACTORS_HPP

#include <Eigen/Core>
#include <string>
#include <tuple>
#include <vector>

#include "favar/panel.hpp"

namespace favar {

// Static principal-components factor model over a standardized panel.
struct FactorModel {
  Eigen::MatrixXd factors;       // T x r, unit variance, mutually orthogonal
  Eigen::MatrixXd loadings;      // N x r
  Eigen::VectorXd eigenvalues;   // length min(T,N), non-increasing
  int r = 0;
  Eigen::VectorXd explained_share;  // length r

  Eigen::MatrixXd reconstruction() const { return factors * loadings.transpose(); }
};

// First r principal components of a standardized panel, scaled to unit
// variance. Loadings are the least-squares reconstruction weights; the sign
// of each component is canonicalized so the largest-magnitude loading entry
// is positive.
FactorModel extract_factors(const SeriesPanel& panel, int r);

struct ScreeRow {
  int index;  // 1-based component index
  double eigenvalue;
  double explained_share;
};

std::vector<ScreeRow> scree(const FactorModel& model);

// Factor series as a panel so they can be appended to a VAR input panel.
SeriesPanel factors_as_panel(const FactorModel& model,
                             const std::vector<int>& time_index,
                             const std::vector<std::string>& factor_ids);

}  // namespace favar

#endif
