#pragma once

// Height functions h_X(A) = Re Tr(X* A) on a compact matrix group, with their
// Riemannian gradient and Hessian.

#include <functional>
#include <string_view>
#include <vector>

#include "liecat/algebra.hpp"
#include "liecat/group.hpp"

namespace liecat {

/// Receives non-fatal diagnostics (currently: unnormalized X). The default
/// handler writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;
/// Installs `handler` (nullptr restores the default) and returns the
/// previous one.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Replaces the warning handler for the lifetime of the object.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler h) : prev_(set_warning_handler(std::move(h))) {}
  ~ScopedWarningHandler() { set_warning_handler(std::move(prev_)); }
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler prev_;
};

class HeightSpec {
 public:
  /// Throws DimensionError/FieldError if X does not match the group. Emits a
  /// warning if |X| != 1 (the critical set does not depend on the scale).
  HeightSpec(Matrix x, GroupSpec group);

  const Matrix& x() const { return x_; }
  const GroupSpec& group() const { return group_; }

 private:
  Matrix x_;
  GroupSpec group_;
};

double value(const HeightSpec& h, const Matrix& a);

/// Metric projection of X onto T_A G: (X - A X* A)/2.
Matrix riem_grad(const HeightSpec& h, const Matrix& a);

/// -(A X Y + Y X A)/2. Throws PreconditionError if Y is not tangent at A
/// (residual above 1e-8).
Matrix hessian_apply(const HeightSpec& h, const Matrix& a, const Matrix& y);

struct TangentBasis {
  Matrix base_point;
  std::vector<Matrix> vectors;
};

/// {A E_b} for the canonical orthonormal basis E_b of skew-Hermitian matrices.
TangentBasis tangent_basis(const Matrix& a);

struct HessianMatrix {
  std::vector<double> entries;  // symmetrized, row-major, dim x dim
  std::size_t dim = 0;
  double asymmetry = 0;         // ||M - M^T|| before symmetrization
  double grad_norm = 0;

  double operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  /// Eigenvalues, ascending.
  std::vector<double> eigenvalues() const;
};

/// Gradient-norm threshold below which a point is treated as critical for
/// Hessian purposes.
inline constexpr double kCriticalGradTol = 1e-8;

/// Hessian in the tangent_basis at A. Throws std::logic_error if the
/// asymmetry exceeds 1e-6 at a point with ||grad|| < 1e-8.
HessianMatrix hessian_matrix(const HeightSpec& h, const Matrix& a);

/// ||grad h_X(A) - V grad h_D(V* A U) U*|| for the SVD X = U D V*. The
/// identity holds for Hermitian X.
double equivariance_residual(const HeightSpec& h, const Matrix& a);

/// ||grad h_X(A) - U grad h_D(U* A V) V*||; holds for every X.
double equivariance_residual_general(const HeightSpec& h, const Matrix& a);

}  // namespace liecat
