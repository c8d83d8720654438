#pragma once

#include <stdexcept>
#include <string>

namespace conc {

/// Non-finite or otherwise malformed argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of the function (e.g. phi_inv(1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enlargement reached the edge of the grid window; rerun with a larger half-width.
class WindowOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two grid sets with different GridSpecs were combined.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gaussian mass is 0 or 1 within tolerance, so no equal-mass half-space exists.
class DegenerateMass : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A scenario family cannot be realised with the requested perturbation and mass.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |E| differs from |K| by more than the volume error bound.
class VolumeMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conc
