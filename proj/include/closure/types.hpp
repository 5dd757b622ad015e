#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace closure {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Any state component beyond this magnitude is treated as a blow-up; free
// runs of extrapolating polynomial closures can and do diverge.
inline constexpr double kBlowupLimit = 1e8;

// Coefficients below this magnitude do not count toward model support.
inline constexpr double kNonzeroThreshold = 1e-12;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFiniteState : public Error {
 public:
  NonFiniteState(const std::string& what, Index step)
      : Error(what + " (step " + std::to_string(step) + ")"), step(step) {}
  Index step;
};

class NonFiniteLoss : public Error {
 public:
  NonFiniteLoss(const std::string& what, int epoch)
      : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch(epoch) {}
  int epoch;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class EmptySplit : public Error {
 public:
  using Error::Error;
};

class IndexUnderflow : public Error {
 public:
  using Error::Error;
};

class IndexOverflow : public Error {
 public:
  using Error::Error;
};

class RankDeficientGamma : public Error {
 public:
  using Error::Error;
};

class InsufficientNeighbors : public Error {
 public:
  using Error::Error;
};

class DegenerateScaling : public Error {
 public:
  using Error::Error;
};

class TooFewVectors : public Error {
 public:
  using Error::Error;
};

}  // namespace closure
