#pragma once

// Closure snapshot extraction and delay-indexed train/test dataset assembly.
//
// Index conventions: a trajectory with M rows yields M' = M-1 rows of forward
// differences and closure snapshots. Row j of the target needs Delta[j+1], so
// the last closure row has no target; callers evaluating targets must stay
// below M'-1.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "closure/systems.hpp"
#include "closure/types.hpp"

namespace closure {

enum class FeatureLayout { Full, Economic };

struct ClosureDataset {
  Matrix X;      // M x Q resolved snapshots
  Matrix dX;     // (M-1) x Q forward differences
  Matrix Delta;  // (M-1) x Q closure snapshots
  double dt = 0.0;
  int p = 0;
  std::vector<Index> train_idx;
  std::vector<Index> test_idx;

  Index closure_rows() const { return Delta.rows(); }
  Index q() const { return X.cols(); }
};

// Delta[j] = dX[j] - F_hat(X[j], 0) with dX the first-order forward difference.
inline ClosureDataset extract_closure(const Matrix& resolved_snapshots,
                                      const std::function<Vector(const Vector&)>& resolved_rhs,
                                      double dt) {
  const Index m = resolved_snapshots.rows();
  const Index q = resolved_snapshots.cols();
  if (m < 2) throw InvalidArgument("need at least two snapshots");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");

  ClosureDataset ds;
  ds.X = resolved_snapshots;
  ds.dt = dt;
  ds.dX.resize(m - 1, q);
  ds.Delta.resize(m - 1, q);
  for (Index j = 0; j < m - 1; ++j) {
    ds.dX.row(j) = (resolved_snapshots.row(j + 1) - resolved_snapshots.row(j)) / dt;
    Vector fhat = resolved_rhs(resolved_snapshots.row(j).transpose());
    if (fhat.size() != q) throw InvalidArgument("resolved_rhs output has wrong dimension");
    ds.Delta.row(j) = ds.dX.row(j) - fhat.transpose();
  }
  return ds;
}

inline ClosureDataset extract_closure(const StateTrajectory& traj, const PartitionSpec& part,
                                      const std::function<Vector(const Vector&)>& resolved_rhs,
                                      double dt) {
  part.validate(traj.dim());
  Matrix resolved(traj.rows(), static_cast<Index>(part.resolved_indices.size()));
  for (size_t c = 0; c < part.resolved_indices.size(); ++c)
    resolved.col(static_cast<Index>(c)) = traj.snapshots.col(part.resolved_indices[c]);
  return extract_closure(resolved, resolved_rhs, dt);
}

// Temporal split of I^p = {j : p <= j <= n_rows-1}: train gets j <= floor(f * n_rows),
// test the rest. No shuffling.
inline std::pair<std::vector<Index>, std::vector<Index>> split_indices(Index n_rows, int p,
                                                                       double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("train_fraction must be in (0,1)");
  if (p < 0) throw InvalidArgument("delay count must be non-negative");
  const Index cutoff = static_cast<Index>(
      std::floor(train_fraction * static_cast<double>(n_rows)));
  std::vector<Index> train, test;
  for (Index j = p; j < n_rows; ++j)
    (j <= cutoff ? train : test).push_back(j);
  if (train.empty() || test.empty()) throw EmptySplit("train/test split is empty");
  return {train, test};
}

inline void assign_split(ClosureDataset& ds, int p, double train_fraction) {
  ds.p = p;
  auto [train, test] = split_indices(ds.closure_rows(), p, train_fraction);
  ds.train_idx = std::move(train);
  ds.test_idx = std::move(test);
}

inline Index feature_width(FeatureLayout layout, Index q, int p) {
  return layout == FeatureLayout::Full ? 2 * (1 + p) * q : (2 + p) * q;
}

// Row j: Full   -> [x^j, ..., x^{j-p}, d^j, ..., d^{j-p}]
//        Economic -> [x^j, ..., x^{j-p}, d^j]
inline Matrix build_features(const ClosureDataset& ds, const std::vector<Index>& idx,
                             FeatureLayout layout) {
  const Index q = ds.q();
  const int p = ds.p;
  Matrix out(static_cast<Index>(idx.size()), feature_width(layout, q, p));
  for (size_t r = 0; r < idx.size(); ++r) {
    const Index j = idx[r];
    if (j - p < 0) throw IndexUnderflow("delayed feature precedes data start");
    if (j >= ds.closure_rows()) throw IndexOverflow("feature index beyond closure rows");
    Index c = 0;
    for (int i = 0; i <= p; ++i, c += q)
      out.block(static_cast<Index>(r), c, 1, q) = ds.X.row(j - i);
    const int d_terms = layout == FeatureLayout::Full ? p : 0;
    for (int i = 0; i <= d_terms; ++i, c += q)
      out.block(static_cast<Index>(r), c, 1, q) = ds.Delta.row(j - i);
  }
  return out;
}

// Row j: (Delta[j+1] - Delta[j]) / dt.
inline Matrix build_target(const ClosureDataset& ds, const std::vector<Index>& idx) {
  Matrix out(static_cast<Index>(idx.size()), ds.q());
  for (size_t r = 0; r < idx.size(); ++r) {
    const Index j = idx[r];
    if (j + 1 >= ds.closure_rows())
      throw IndexOverflow("target undefined at trajectory end");
    out.row(static_cast<Index>(r)) = (ds.Delta.row(j + 1) - ds.Delta.row(j)) / ds.dt;
  }
  return out;
}

// Indices from idx whose target row exists; the final closure row is dropped.
inline std::vector<Index> target_valid(const ClosureDataset& ds, const std::vector<Index>& idx) {
  std::vector<Index> out;
  out.reserve(idx.size());
  for (Index j : idx)
    if (j + 1 < ds.closure_rows()) out.push_back(j);
  return out;
}

}  // namespace closure
