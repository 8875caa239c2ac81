#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace reso {

/// A matching denominator of the logarithmic-derivative chain vanished.
/// These points are removable in the full product but must be reported.
class ChainSingularity : public std::runtime_error {
 public:
  ChainSingularity(int stage, std::complex<double> k)
      : std::runtime_error("logarithmic-derivative chain singular at stage " +
                           std::to_string(stage)),
        stage_(stage),
        k_(k) {}
  int stage() const { return stage_; }
  std::complex<double> wave_number() const { return k_; }

 private:
  int stage_;
  std::complex<double> k_;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Newton iteration did not reach the zero criterion.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(std::string what, std::complex<double> last, double residual)
      : std::runtime_error(std::move(what)), last_(last), residual_(residual) {}
  std::complex<double> last_iterate() const { return last_; }
  double residual() const { return residual_; }

 private:
  std::complex<double> last_;
  double residual_;
};

/// |f'| is negligible against |f''|: the iterate sits near a double zero
/// and plain Newton is ill-conditioned there.
class DerivativeVanishes : public std::runtime_error {
 public:
  explicit DerivativeVanishes(std::complex<double> k)
      : std::runtime_error("Jost derivative vanishes; near-double zero"), k_(k) {}
  std::complex<double> wave_number() const { return k_; }

 private:
  std::complex<double> k_;
};

class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleOnAxis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reso
