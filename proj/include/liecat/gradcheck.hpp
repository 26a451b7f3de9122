#pragma once

// Finite-difference diagnostics for riem_grad and the Hessian, used by the
// `gradcheck` subcommand.

#include <cstdint>

#include "liecat/algebra.hpp"

namespace liecat {

struct GradCheckReport {
  Field field = Field::Quaternion;
  std::size_t n = 1;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_grad_rel_error = 0;
  double max_tangency_residual = 0;
  double max_hessian_rel_error = 0;
  double max_hessian_asymmetry = 0;

  /// Thresholds: gradient 1e-6, tangency 1e-12, Hessian 1e-4, asymmetry 1e-8.
  bool pass() const;
};

/// Gradient: random X and Haar A, central difference along a random unit
/// tangent Y at t = 1e-5, error relative to ||grad|| ||Y||.
/// Hessian: random diagonal X and constructed critical A, second central
/// difference at t = 1e-3, error relative to max(|q|, ||X|| ||Y||^2).
GradCheckReport gradcheck(Field field, std::size_t n, int trials, std::uint64_t seed);

/// Gaussian matrix over the field (every real component standard normal).
Matrix gaussian_matrix(Field field, std::size_t n, std::uint64_t seed);

}  // namespace liecat
