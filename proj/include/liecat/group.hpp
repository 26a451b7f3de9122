#pragma once

// The compact groups O(n,K) = {A : AA* = I} for K = R, C, H, and the spectral
// machinery (Hermitian Jacobi eigensolver, SVD) behind them. All spectral work
// goes through the complex adjoint.

#include <cstdint>
#include <vector>

#include "liecat/algebra.hpp"

namespace liecat {

struct GroupSpec {
  Field field = Field::Real;
  std::size_t n = 1;

  /// Dimension of the Lie algebra: n(n-1)/2, n^2 or n(2n+1).
  std::size_t dim() const;
  std::string name() const;
};

/// dim O(m,K) as a real manifold.
std::size_t group_dim(Field field, std::size_t m);

/// Membership tolerance used when operations check their group-member
/// preconditions.
inline constexpr double kMemberTol = 1e-8;

bool is_member(const Matrix& a, double tol);
/// Throws PreconditionError naming `who` if a is not a member at kMemberTol.
void require_member(const Matrix& a, const char* who);

/// splitmix64 mix of (seed, index); used to give every trial of a batch its
/// own reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Gram-Schmidt orthonormalization of a matrix with i.i.d. standard normal
/// components in every scalar slot. Deterministic in the seed.
Matrix haar_sample(const GroupSpec& spec, std::uint64_t seed);

/// Orthogonal projection of W onto the tangent space at A: (W - A W* A)/2.
Matrix tangent_project(const Matrix& a, const Matrix& w);
/// ||Y A* + A Y*||; zero iff Y is tangent at A.
double tangency_residual(const Matrix& a, const Matrix& y);

/// Polar factor of A + V by Newton-Schulz iteration. Throws ConvergenceError
/// after 60 iterations without reaching ||Z*Z - I|| < 1e-14.
Matrix retract(const Matrix& a, const Matrix& v);

/// Product of the singular values (for H: square root of the Study
/// determinant det chi(A)).
double abs_det(const Matrix& a);

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // complex, columns are eigenvectors
};

/// Cyclic complex Jacobi. `m` must be complex-tagged (or real) and Hermitian;
/// iterates until the off-diagonal Frobenius mass is below tol * ||m||.
EigResult hermitian_eig(const Matrix& m, double tol);

struct SvdResult {
  Matrix u, v;
  std::vector<double> singular_values;  // ascending, zeros first

  Matrix d() const;
};

/// X = U D V* with U, V in the group of X's field and D ascending.
SvdResult svd(const Matrix& x, double tol = 1e-15);

}  // namespace liecat
