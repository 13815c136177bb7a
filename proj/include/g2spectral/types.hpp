#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace g2spectral {

using cplx = std::complex<double>;

using Mat7  = Eigen::Matrix<cplx, 7, 7>;
using Vec7  = Eigen::Matrix<cplx, 7, 1>;
using Mat6  = Eigen::Matrix<cplx, 6, 6>;
using Vec6  = Eigen::Matrix<cplx, 6, 1>;
using Mat7r = Eigen::Matrix<double, 7, 7>;
using Vec7r = Eigen::Matrix<double, 7, 1>;
using MatX  = Eigen::MatrixXcd;
using VecX  = Eigen::VectorXcd;
using MatXr = Eigen::MatrixXd;

enum class ErrorKind {
  precondition,
  numerical_rank,
  degenerate_orbit,
  split_degenerate,
  pole,
  gauge_failure,
  not_g2_field,
  tau_symmetry_violation,
  interpolation,
  branch_proximity,
  kernel_degenerate,
  stiffness,
  degenerate_input,
  malformed_file,
  schema,
  reality_violation,
  io,
  usage,
  check_failed,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg, double value = 0.0, int index = 0)
      : std::runtime_error(msg), kind(kind), value(value), index(index) {}
  ErrorKind kind;
  double value;  // offending residual / inner product / condition number
  int index;     // offending coefficient index where applicable
};

inline constexpr double kMembershipTol = 1e-9;  // absolute, unit-scaled inputs

}  // namespace g2spectral
