#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bellcert {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Error types for the named failure modes of the library surface.
struct NotPsdError : std::runtime_error {
  explicit NotPsdError(const std::string& msg) : std::runtime_error(msg) {}
};
struct SingularStateError : std::runtime_error {
  explicit SingularStateError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoBracketingError : std::runtime_error {
  explicit NoBracketingError(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnknownNameError : std::invalid_argument {
  explicit UnknownNameError(const std::string& msg) : std::invalid_argument(msg) {}
};
struct ArityError : std::invalid_argument {
  explicit ArityError(const std::string& msg) : std::invalid_argument(msg) {}
};
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};
struct ModelError : std::logic_error {
  explicit ModelError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace bellcert
