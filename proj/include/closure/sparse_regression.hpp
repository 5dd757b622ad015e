#pragma once

// Lasso coordinate descent, regularization-path sweeps, Pareto model
// selection, OLS, and the support-recovery feasibility bound.
//
// Objective, matching the data-count normalization of the training problem:
//   f(w) = (1/n) ||z - Phi w||^2 + lambda ||w||_1
// so lambda is comparable across sample counts and the all-zero solution is
// optimal exactly when lambda >= lambda_max = (2/n) max_i |Phi^T z|_i.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "closure/features.hpp"
#include "closure/types.hpp"

namespace closure {

struct LassoResult {
  Vector w;
  bool converged = false;
  int sweeps = 0;
};

inline double lasso_objective(const Matrix& phi, const Vector& z, const Vector& w,
                              double lambda) {
  const double n = static_cast<double>(phi.rows());
  return (z - phi * w).squaredNorm() / n + lambda * w.lpNorm<1>();
}

inline double lasso_lambda_max(const Matrix& phi, const Vector& z) {
  const double n = static_cast<double>(phi.rows());
  return (2.0 / n) * (phi.transpose() * z).cwiseAbs().maxCoeff();
}

// Cyclic coordinate descent with soft-thresholding. Columns with zero norm are
// degenerate and their coefficients are forced to zero. Converged when the
// largest coordinate change in a sweep drops below tol; otherwise the best
// iterate is returned with converged = false.
inline LassoResult lasso_fit(const Matrix& phi, const Vector& z, double lambda,
                             double tol = 1e-10, int max_iter = 100000,
                             const Vector* warm_start = nullptr) {
  const Index n = phi.rows();
  const Index l = phi.cols();
  if (n < 1) throw InvalidArgument("lasso_fit: empty feature matrix");
  if (lambda < 0.0) throw InvalidArgument("lasso_fit: lambda must be non-negative");

  LassoResult res;
  res.w = warm_start && warm_start->size() == l ? *warm_start : Vector::Zero(l);

  const double inv_n2 = 2.0 / static_cast<double>(n);
  Vector col_scale(l);  // a_j = (2/n) ||phi_j||^2
  for (Index j = 0; j < l; ++j) col_scale[j] = inv_n2 * phi.col(j).squaredNorm();

  Vector residual = z - phi * res.w;
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    double max_change = 0.0;
    for (Index j = 0; j < l; ++j) {
      if (col_scale[j] == 0.0) {
        if (res.w[j] != 0.0) {
          residual += phi.col(j) * res.w[j];
          res.w[j] = 0.0;
        }
        continue;
      }
      const double w_old = res.w[j];
      const double rho = inv_n2 * phi.col(j).dot(residual) + col_scale[j] * w_old;
      const double mag = std::abs(rho) - lambda;
      const double w_new = mag > 0.0 ? std::copysign(mag, rho) / col_scale[j] : 0.0;
      if (w_new != w_old) {
        residual -= phi.col(j) * (w_new - w_old);
        res.w[j] = w_new;
        max_change = std::max(max_change, std::abs(w_new - w_old));
      }
    }
    res.sweeps = sweep + 1;
    if (max_change < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

struct LassoPathEntry {
  double lambda = 0.0;
  Vector w;
  double train_mse = 0.0;
  double val_mse = 0.0;
  int nonzeros = 0;
  bool converged = false;
};

struct LassoPath {
  std::vector<LassoPathEntry> entries;  // lambda strictly decreasing
};

inline int count_nonzeros(const Vector& w, double threshold = kNonzeroThreshold) {
  return static_cast<int>((w.cwiseAbs().array() > threshold).count());
}

inline std::vector<double> default_lambda_grid(const Matrix& phi, const Vector& z,
                                               int points = 60, double lambda_min = 1e-14) {
  const double lmax = std::max(lasso_lambda_max(phi, z), lambda_min * 10.0);
  std::vector<double> grid(static_cast<size_t>(points));
  const double step = std::log(lambda_min / lmax) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    grid[static_cast<size_t>(i)] = lmax * std::exp(step * static_cast<double>(i));
  return grid;
}

// Warm-started fits over a descending lambda grid. Rows are split in time:
// the first val_split fraction trains, the tail validates.
inline LassoPath lasso_path(const Matrix& phi, const Vector& z,
                            const std::vector<double>& lambda_grid, double val_split = 0.8,
                            double tol = 1e-10, int max_iter = 100000) {
  if (lambda_grid.empty()) throw InvalidArgument("lasso_path: empty lambda grid");
  for (size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] < lambda_grid[i - 1]))
      throw InvalidArgument("lasso_path: grid must be strictly decreasing");
  const Index n = phi.rows();
  const Index n_train = std::max<Index>(1, static_cast<Index>(
      std::floor(val_split * static_cast<double>(n))));
  if (n_train >= n) throw InvalidArgument("lasso_path: no validation rows");

  const Matrix phi_tr = phi.topRows(n_train);
  const Vector z_tr = z.head(n_train);
  const Matrix phi_val = phi.bottomRows(n - n_train);
  const Vector z_val = z.tail(n - n_train);

  LassoPath path;
  Vector warm = Vector::Zero(phi.cols());
  for (double lambda : lambda_grid) {
    LassoResult fit = lasso_fit(phi_tr, z_tr, lambda, tol, max_iter, &warm);
    warm = fit.w;
    LassoPathEntry e;
    e.lambda = lambda;
    e.w = fit.w;
    e.converged = fit.converged;
    e.train_mse = (z_tr - phi_tr * fit.w).squaredNorm() / static_cast<double>(n_train);
    e.val_mse = (z_val - phi_val * fit.w).squaredNorm() / static_cast<double>(n - n_train);
    e.nonzeros = count_nonzeros(fit.w);
    path.entries.push_back(std::move(e));
  }
  return path;
}

// Among lambdas whose validation MSE is within (1+eps) of the best, pick the
// sparsest; ties break toward larger lambda (entries are descending).
inline double select_pareto(const LassoPath& path, double eps_sel = 0.05) {
  if (path.entries.empty()) throw InvalidArgument("select_pareto: empty path");
  double best_mse = path.entries.front().val_mse;
  for (const auto& e : path.entries) best_mse = std::min(best_mse, e.val_mse);
  const double cap = (1.0 + eps_sel) * best_mse;
  const LassoPathEntry* pick = nullptr;
  for (const auto& e : path.entries) {
    if (e.val_mse > cap) continue;
    if (!pick || e.nonzeros < pick->nonzeros) pick = &e;
  }
  return pick->lambda;
}

struct SupportRecoveryCheck {
  bool feasible = false;
  double bound = 0.0;  // (n_samples/n_features) / (2 ln n_features)
};

inline SupportRecoveryCheck support_recovery_check(int n_true, int n_features,
                                                   int n_samples) {
  if (n_features < 2 || n_samples < 1)
    throw InvalidArgument("support_recovery_check: need n_features >= 2, n_samples >= 1");
  SupportRecoveryCheck out;
  out.bound = (static_cast<double>(n_samples) / n_features) /
              (2.0 * std::log(static_cast<double>(n_features)));
  out.feasible = static_cast<double>(n_true) / n_features <= out.bound;
  return out;
}

struct OlsResult {
  Vector w;
  bool rank_deficient = false;
  Index rank = 0;
};

// Minimum-norm least squares via complete orthogonal decomposition.
inline OlsResult ols_fit(const Matrix& phi, const Vector& z) {
  if (phi.rows() < phi.cols())
    throw InvalidArgument("ols_fit: need at least as many samples as features");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(phi);
  OlsResult out;
  out.w = cod.solve(z);
  out.rank = cod.rank();
  out.rank_deficient = out.rank < phi.cols();
  return out;
}

// Fitted sparse polynomial closure: column q of W maps the expanded feature
// row to the q-th closure-rate component.
struct SparsePolyModel {
  Matrix W;  // L x Q
  int q = 0;
  int p = 0;
  int k = 0;
  bool reduced = false;  // reduced multi-time layout instead of full expansion
  double lambda = 0.0;
  std::vector<int> nonzero_count;       // per column, at kNonzeroThreshold
  std::vector<std::string> term_names;  // length L

  Index n_terms() const { return W.rows(); }

  // delay_row is in Full layout [x^j..x^{j-p}, d^j..d^{j-p}].
  Vector expand_row(const Vector& delay_row) const {
    if (reduced) return expand_reduced_multitime(delay_row, q, p, k);
    const MonomialLibrary lib = make_monomial_library(2 * (1 + p) * q, k);
    return expand(lib, delay_row);
  }

  Vector predict(const Vector& delay_row) const {
    return W.transpose() * expand_row(delay_row);
  }
};

inline void refresh_nonzero_counts(SparsePolyModel& model) {
  model.nonzero_count.clear();
  for (Index c = 0; c < model.W.cols(); ++c)
    model.nonzero_count.push_back(count_nonzeros(model.W.col(c)));
}

}  // namespace closure
