#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lspc {

/// Invalid configuration or parameters (bad config file, sample count too small, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operating point cannot be reached (load beyond the
/// admissible region, SIC recursion denominator collapsing, ...).
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to converge; carries the last residual.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Iterative power control hit its iteration cap; carries the per-user
/// relative SINR residuals of the unsaturated users at the last iterate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double max_residual,
                   std::vector<double> residual_profile)
      : NumericalError(what, max_residual),
        residual_profile_(std::move(residual_profile)) {}
  const std::vector<double>& residual_profile() const { return residual_profile_; }

 private:
  std::vector<double> residual_profile_;
};

}  // namespace lspc
