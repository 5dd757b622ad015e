#pragma once

// Pseudo-spectral solver for the 1D viscous Burgers equation on [0, 2*pi]
// with two-thirds dealiasing and SSP-RK3 time stepping, plus the resolved-mode
// spectral truncation used by the closure pipeline.
//
// Spectral state follows the fft.hpp convention: u_hat[bin] are Fourier-series
// coefficients in standard FFT bin order. For u(x,0) = sin(x) this means
// u_hat[+1] = -0.5i and u_hat[-1] = +0.5i and the field stays odd-symmetric,
// so the physically meaningful training channels are the imaginary parts of
// the negative resolved modes.

#include <cmath>
#include <numbers>

#include "closure/fft.hpp"
#include "closure/types.hpp"

namespace closure {

struct SpectralTrajectory {
  ComplexMatrix snapshots;  // rows = snapshots of u_hat (FFT bin order)
  double dt = 0.0;          // snapshot spacing, not the integrator step
  double t0 = 0.0;

  Index rows() const { return snapshots.rows(); }
  Index n_grid() const { return snapshots.cols(); }
};

namespace detail {

inline void dealias_two_thirds(ComplexVector& u_hat) {
  const Index n = u_hat.size();
  const Index cut = n / 3;
  for (Index i = 0; i < n; ++i)
    if (std::abs(fft_wavenumber(i, n)) > cut) u_hat[i] = Complex{0.0, 0.0};
}

}  // namespace detail

// d/dt u_hat_k = -nu k^2 u_hat_k - (i k / 2) (u*u)_hat_k, with modes above
// n/3 zeroed both before and after the pseudo-spectral product.
inline ComplexVector burgers_spectral_rhs(const ComplexVector& u_hat, double nu) {
  const Index n = u_hat.size();
  ComplexVector dealiased = u_hat;
  detail::dealias_two_thirds(dealiased);
  ComplexVector u = fft_inverse(dealiased);
  ComplexVector w = u.array().square();
  ComplexVector w_hat = fft_forward(w);
  detail::dealias_two_thirds(w_hat);

  ComplexVector rate(n);
  for (Index i = 0; i < n; ++i) {
    const double k = static_cast<double>(fft_wavenumber(i, n));
    rate[i] = -nu * k * k * u_hat[i] - Complex{0.0, 0.5 * k} * w_hat[i];
  }
  return rate;
}

// snapshot_count snapshots at t = 0, h, 2h, ... with h = t_final/snapshot_count.
// The integrator step is shrunk to the nearest exact divisor of h so snapshots
// land on the uniform grid.
inline SpectralTrajectory simulate_burgers(double nu, Index n_grid, double dt,
                                           double t_final, Index snapshot_count) {
  if (!is_power_of_two(n_grid)) throw InvalidGrid("n_grid must be a power of two");
  if (!(dt > 0.0) || !(t_final > 0.0) || snapshot_count < 2)
    throw InvalidArgument("simulate_burgers: bad time parameters");

  const double interval = t_final / static_cast<double>(snapshot_count);
  const Index steps_per = std::max<Index>(1, static_cast<Index>(std::ceil(interval / dt)));
  const double h = interval / static_cast<double>(steps_per);

  ComplexVector u(n_grid);
  for (Index j = 0; j < n_grid; ++j) {
    double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_grid);
    u[j] = Complex{std::sin(x), 0.0};
  }
  ComplexVector u_hat = fft_forward(u);

  SpectralTrajectory traj;
  traj.dt = interval;
  traj.t0 = 0.0;
  traj.snapshots.resize(snapshot_count, n_grid);
  traj.snapshots.row(0) = u_hat;

  for (Index snap = 1; snap < snapshot_count; ++snap) {
    for (Index s = 0; s < steps_per; ++s) {
      ComplexVector k1 = u_hat + h * burgers_spectral_rhs(u_hat, nu);
      ComplexVector k2 = 0.75 * u_hat + 0.25 * (k1 + h * burgers_spectral_rhs(k1, nu));
      u_hat = (1.0 / 3.0) * u_hat + (2.0 / 3.0) * (k2 + h * burgers_spectral_rhs(k2, nu));
    }
    if (!u_hat.allFinite() || u_hat.cwiseAbs().maxCoeff() > kBlowupLimit)
      throw NonFiniteState("Burgers simulation blew up", snap);
    traj.snapshots.row(snap) = u_hat;
  }
  return traj;
}

// Resolved-only right-hand side F_hat(x_hat, 0) in spectral form: for each
// k in F = {-Q/2, ..., Q/2-1},
//   -nu k^2 u_hat_k - (i k / 2) sum_{p+q=k, p,q in F} u_hat_p u_hat_q.
// Input/output are indexed by k ascending over F.
inline ComplexVector spectral_closure_rhs(const ComplexVector& u_hat_resolved, double nu) {
  const Index qm = u_hat_resolved.size();
  if (qm % 2 != 0) throw InvalidArgument("resolved mode set must be symmetric");
  const int kmin = -static_cast<int>(qm / 2);
  const int kmax = static_cast<int>(qm / 2) - 1;
  auto at = [&](int k) { return u_hat_resolved[static_cast<Index>(k - kmin)]; };

  ComplexVector rate(qm);
  for (int k = kmin; k <= kmax; ++k) {
    Complex conv{0.0, 0.0};
    for (int p = kmin; p <= kmax; ++p) {
      const int q = k - p;
      if (q < kmin || q > kmax) continue;
      conv += at(p) * at(q);
    }
    const double kd = static_cast<double>(k);
    rate[static_cast<Index>(k - kmin)] =
        -nu * kd * kd * at(k) - Complex{0.0, 0.5 * kd} * conv;
  }
  return rate;
}

// Columns k = -q_modes/2 .. q_modes/2 - 1 pulled out of the full spectral state.
inline ComplexMatrix extract_resolved_modes(const SpectralTrajectory& traj, Index q_modes) {
  const Index n = traj.n_grid();
  ComplexMatrix out(traj.rows(), q_modes);
  const int kmin = -static_cast<int>(q_modes / 2);
  for (Index c = 0; c < q_modes; ++c) {
    const Index bin = fft_bin(kmin + static_cast<int>(c), n);
    out.col(c) = traj.snapshots.col(bin);
  }
  return out;
}

// Training channels: Im(u_hat_k) for k = -q_channels .. -1, channel c <-> k = c - q_channels.
inline Matrix burgers_imag_channels(const ComplexMatrix& resolved_modes, Index q_channels) {
  if (resolved_modes.cols() < q_channels)
    throw InvalidArgument("not enough resolved modes for requested channels");
  Matrix out(resolved_modes.rows(), q_channels);
  for (Index c = 0; c < q_channels; ++c)
    out.col(c) = resolved_modes.col(c).imag();
  return out;
}

// F_hat(x_hat, 0) for the imaginary-part channels. The odd symmetry of the
// sine-initialized solution fixes u_hat_{-k} = i m, u_hat_{k} = -i m, u_hat_0 = 0,
// which closes the resolved convolution in terms of the channels alone.
inline Vector burgers_channel_rhs(const Vector& channels, double nu) {
  const Index qc = channels.size();
  const Index qm = 2 * qc;
  const int kmin = -static_cast<int>(qc);
  ComplexVector u_res(qm);
  for (int k = kmin; k < static_cast<int>(qc); ++k) {
    Index idx = static_cast<Index>(k - kmin);
    if (k < 0)
      u_res[idx] = Complex{0.0, channels[static_cast<Index>(k + qc)]};
    else if (k == 0)
      u_res[idx] = Complex{0.0, 0.0};
    else
      u_res[idx] = Complex{0.0, -channels[static_cast<Index>(qc - k)]};
  }
  ComplexVector rate = spectral_closure_rhs(u_res, nu);
  Vector out(qc);
  for (Index c = 0; c < qc; ++c) out[c] = rate[c].imag();
  return out;
}

}  // namespace closure
