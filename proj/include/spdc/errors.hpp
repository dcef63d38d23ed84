#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spdc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfValidityRange : public Error {
 public:
  OutOfValidityRange(double wavelength_um, double lo_um, double hi_um);
  double wavelength_um() const { return wavelength_um_; }

 private:
  double wavelength_um_;
};

class UnknownPolarizationAxis : public Error {
 public:
  using Error::Error;
};

// The finite-difference stencil for k' would leave the Sellmeier validity range.
class StencilOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoRootInBracket : public Error {
 public:
  using Error::Error;
};

class MultipleRoots : public Error {
 public:
  MultipleRoots(const std::string& what, std::vector<double> wavelengths_m)
      : Error(what), wavelengths_(std::move(wavelengths_m)) {}
  const std::vector<double>& wavelengths() const { return wavelengths_; }

 private:
  std::vector<double> wavelengths_;
};

// tau_ps == tau_pi: the Gaussian model has a singular quadratic form.
class DegenerateGroupVelocities : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

class SvdFailure : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-invalid scenario / crystal documents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdc
