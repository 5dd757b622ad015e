#pragma once

// Full-order simulators for the benchmark systems and the generic partition
// into resolved/unresolved components. All ODE systems are integrated with
// first-order forward Euler; the Duffing map is the same update with dt = 1.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "closure/types.hpp"

namespace closure {

enum class SystemKind { Linear3D, VanDerPol, DuffingMap, Lorenz, BurgersSpectral };

struct SystemSpec {
  SystemKind kind;
  int state_dim = 0;     // N
  int resolved_dim = 0;  // Q
  std::map<std::string, double> params;

  double param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw InvalidArgument("missing system parameter: " + name);
    return it->second;
  }
};

struct StateTrajectory {
  Matrix snapshots;  // rows = time steps, cols = state components
  double dt = 0.0;
  double t0 = 0.0;

  Index rows() const { return snapshots.rows(); }
  Index dim() const { return snapshots.cols(); }
  double time_at(Index j) const { return t0 + static_cast<double>(j) * dt; }
};

struct PartitionSpec {
  std::vector<Index> resolved_indices;  // distinct, ordered, within [0, N)

  void validate(Index state_dim) const {
    if (resolved_indices.empty() ||
        static_cast<Index>(resolved_indices.size()) >= state_dim)
      throw InvalidArgument("partition must satisfy 0 < Q < N");
    std::vector<bool> seen(static_cast<size_t>(state_dim), false);
    for (Index i : resolved_indices) {
      if (i < 0 || i >= state_dim || seen[static_cast<size_t>(i)])
        throw InvalidArgument("resolved indices must be distinct and in range");
      seen[static_cast<size_t>(i)] = true;
    }
  }

  std::vector<Index> unresolved_indices(Index state_dim) const {
    std::vector<bool> res(static_cast<size_t>(state_dim), false);
    for (Index i : resolved_indices) res[static_cast<size_t>(i)] = true;
    std::vector<Index> out;
    for (Index i = 0; i < state_dim; ++i)
      if (!res[static_cast<size_t>(i)]) out.push_back(i);
    return out;
  }
};

inline SystemSpec make_linear3d() {
  return {SystemKind::Linear3D, 3, 1, {}};
}

inline SystemSpec make_van_der_pol(double mu = 2.0) {
  return {SystemKind::VanDerPol, 2, 1, {{"mu", mu}}};
}

inline SystemSpec make_duffing_map(double a = 2.75, double b = 0.2) {
  return {SystemKind::DuffingMap, 2, 1, {{"a", a}, {"b", b}}};
}

inline SystemSpec make_lorenz(double rho, double sigma = 10.0, double beta = 8.0 / 3.0) {
  return {SystemKind::Lorenz, 3, 1, {{"rho", rho}, {"sigma", sigma}, {"beta", beta}}};
}

inline SystemSpec make_burgers_spectral(double nu = 0.02, int n_grid = 1024) {
  return {SystemKind::BurgersSpectral, n_grid, 12, {{"nu", nu}}};
}

inline Vector system_rhs(const SystemSpec& spec, const Vector& x) {
  switch (spec.kind) {
    case SystemKind::Linear3D: {
      if (x.size() != 3) throw InvalidArgument("Linear3D state must have dim 3");
      Matrix A(3, 3);
      A << 0.0, -1.0, -1.0,
           0.5, -1.1, 1.5,
           1.0, -3.0, 0.5;
      return A * x;
    }
    case SystemKind::VanDerPol: {
      if (x.size() != 2) throw InvalidArgument("VanDerPol state must have dim 2");
      const double mu = spec.param("mu");
      Vector r(2);
      r << x[1], mu * (1.0 - x[0] * x[0]) * x[1] - x[0];
      return r;
    }
    case SystemKind::DuffingMap: {
      if (x.size() != 2) throw InvalidArgument("DuffingMap state must have dim 2");
      const double a = spec.param("a");
      const double b = spec.param("b");
      Vector r(2);
      r << x[1] - x[0], -b * x[0] + (a - 1.0) * x[1] - x[1] * x[1] * x[1];
      return r;
    }
    case SystemKind::Lorenz: {
      if (x.size() != 3) throw InvalidArgument("Lorenz state must have dim 3");
      const double sigma = spec.param("sigma");
      const double beta = spec.param("beta");
      const double rho = spec.param("rho");
      Vector r(3);
      r << sigma * (x[1] - x[0]),
           x[0] * (rho - x[2]) - x[1],
           x[0] * x[1] - beta * x[2];
      return r;
    }
    case SystemKind::BurgersSpectral:
      throw InvalidArgument("BurgersSpectral evolves complex spectral state; use simulate_burgers");
  }
  throw InvalidArgument("unknown system kind");
}

template <typename Rhs>
Vector step_forward_euler(Rhs&& rhs, const Vector& state, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  Vector next = state + dt * rhs(state);
  if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kBlowupLimit)
    throw NonFiniteState("forward Euler step produced non-finite state", 0);
  return next;
}

inline StateTrajectory simulate(const SystemSpec& spec, const Vector& x0, double dt,
                                Index n_steps) {
  if (spec.kind == SystemKind::BurgersSpectral)
    throw InvalidArgument("BurgersSpectral evolves complex spectral state; use simulate_burgers");
  if (x0.size() != spec.state_dim)
    throw InvalidArgument("initial condition has wrong dimension");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (spec.kind == SystemKind::DuffingMap && dt != 1.0)
    throw InvalidArgument("DuffingMap requires dt = 1");

  StateTrajectory traj;
  traj.dt = dt;
  traj.t0 = 0.0;
  traj.snapshots.resize(n_steps + 1, spec.state_dim);
  traj.snapshots.row(0) = x0;
  Vector x = x0;
  for (Index step = 0; step < n_steps; ++step) {
    x = x + dt * system_rhs(spec, x);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kBlowupLimit)
      throw NonFiniteState("simulation blew up", step + 1);
    traj.snapshots.row(step + 1) = x;
  }
  return traj;
}

// F_hat(x_hat, 0): full-order right-hand side with the unresolved components
// zeroed, restricted to the resolved components. This is the resolved-only
// model every closure is measured against.
inline std::function<Vector(const Vector&)> resolved_rhs_zero_unresolved(
    const SystemSpec& spec, const PartitionSpec& part) {
  part.validate(spec.state_dim);
  return [spec, part](const Vector& x_hat) {
    Vector full = Vector::Zero(spec.state_dim);
    for (size_t i = 0; i < part.resolved_indices.size(); ++i)
      full[part.resolved_indices[i]] = x_hat[static_cast<Index>(i)];
    Vector rate = system_rhs(spec, full);
    Vector out(static_cast<Index>(part.resolved_indices.size()));
    for (size_t i = 0; i < part.resolved_indices.size(); ++i)
      out[static_cast<Index>(i)] = rate[part.resolved_indices[i]];
    return out;
  };
}

// System whose unresolved block is affine (x_tilde' = H(x_hat) + A22 x_tilde)
// and whose closure is the linear observation delta = A12 x_tilde.
struct DualLinearSystem {
  std::function<Vector(const Vector&)> F_hat;  // resolved-rate contribution of x_hat
  std::function<Vector(const Vector&)> H;      // unresolved-rate contribution of x_hat
  Matrix A12;  // Q x (N-Q)
  Matrix A22;  // (N-Q) x (N-Q)

  Index resolved_dim() const { return A12.rows(); }
  Index unresolved_dim() const { return A22.rows(); }

  void validate() const {
    if (A12.cols() != A22.rows() || A22.rows() != A22.cols())
      throw InvalidArgument("DualLinearSystem blocks have inconsistent dimensions");
  }
};

inline StateTrajectory simulate_dual_linear(const DualLinearSystem& sys,
                                            const Vector& x0, double dt,
                                            Index n_steps) {
  sys.validate();
  const Index q = sys.resolved_dim();
  const Index nq = sys.unresolved_dim();
  if (x0.size() != q + nq) throw InvalidArgument("initial condition has wrong dimension");

  StateTrajectory traj;
  traj.dt = dt;
  traj.snapshots.resize(n_steps + 1, q + nq);
  traj.snapshots.row(0) = x0;
  Vector x = x0;
  for (Index step = 0; step < n_steps; ++step) {
    Vector xh = x.head(q), xt = x.tail(nq);
    Vector rate(q + nq);
    rate.head(q) = sys.F_hat(xh) + sys.A12 * xt;
    rate.tail(nq) = sys.H(xh) + sys.A22 * xt;
    x = x + dt * rate;
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kBlowupLimit)
      throw NonFiniteState("dual-linear simulation blew up", step + 1);
    traj.snapshots.row(step + 1) = x;
  }
  return traj;
}

}  // namespace closure
