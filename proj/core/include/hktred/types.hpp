#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hktred {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the domain where a field or chart is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arguments have incompatible shapes, degrees or symmetry.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace hktred
