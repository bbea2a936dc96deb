#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace polykernel {

using cplx = std::complex<double>;

// Invalid parameters, unparseable weight strings, unmet preconditions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation whose inputs were valid but whose numerics broke down
// (Cholesky failure, vanishing b, degenerate Berezin center).
class NumericalDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The rejection sampler stalled.
class SamplerError : public NumericalDegeneracyError {
 public:
  using NumericalDegeneracyError::NumericalDegeneracyError;
};

// Writes "warning: <msg>" to stderr. Thread-safe.
void warn(const std::string& msg);

}  // namespace polykernel
