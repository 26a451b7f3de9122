#pragma once

// The open sets Omega_G(A) = {X in G : det(A + X) != 0} and a Monte-Carlo
// check that Omega(+-I), Omega(+-P), P = diag(-1, 1), cover Sp(2).

#include <array>
#include <cstdint>

#include "liecat/algebra.hpp"

namespace liecat {

/// Default membership threshold on |det|.
inline constexpr double kOmegaTol = 1e-9;

struct OmegaMembership {
  bool member = false;
  double margin = 0;  // abs_det(A_ref + X)
};

OmegaMembership omega_member(const Matrix& a_ref, const Matrix& x, double tol = kOmegaTol);

struct CoverReport {
  int trials = 0;
  int uncovered_count = 0;
  double min_margin = 0;  // min over samples of the best of the four margins
  double tol = kOmegaTol;
  std::uint64_t seed = 0;
  std::array<int, 4> per_set_hit_counts{};  // Omega(I), Omega(-I), Omega(P), Omega(-P)

  bool pass() const { return trials > 0 && uncovered_count == 0 && min_margin > tol; }
};

/// The four reference matrices I, -I, P, -P of Sp(2), in report order.
std::array<Matrix, 4> sp2_cover_centers();

/// Sample k uses haar_sample(Sp(2), derive_seed(seed, k)).
CoverReport sp2_cover_check(int trials, std::uint64_t seed, double tol = kOmegaTol);

/// abs_det(A - iI) > tol, i the complex (or quaternion) unit. Throws
/// FieldError on real matrices.
bool omega_i_member(const Matrix& a, double tol = kOmegaTol);
double omega_i_margin(const Matrix& a);

struct OrbitReport {
  int trials = 0;
  bool all_members = false;
  double min_margin = 0;
};

/// Q diag(1, -1) Q* for Haar Q in U(2), tested against Omega_G(i).
OrbitReport orbit_in_omega_i(int trials, std::uint64_t seed, double tol = kOmegaTol);

}  // namespace liecat
