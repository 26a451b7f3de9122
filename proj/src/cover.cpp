#include "liecat/cover.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "liecat/error.hpp"
#include "liecat/group.hpp"

namespace liecat {

OmegaMembership omega_member(const Matrix& a_ref, const Matrix& x, double tol) {
  if (a_ref.rows() != x.rows() || a_ref.cols() != x.cols()) throw DimensionError("omega_member: size mismatch");
  if (a_ref.field() != x.field()) throw FieldError("omega_member: field mismatch");
  const double margin = abs_det(a_ref + x);
  return {margin > tol, margin};
}

std::array<Matrix, 4> sp2_cover_centers() {
  const Field h = Field::Quaternion;
  const Matrix id = Matrix::identity(h, 2);
  const std::vector<double> p{-1.0, 1.0};
  const Matrix pm = Matrix::diagonal(h, p);
  return {id, -id, pm, -pm};
}

CoverReport sp2_cover_check(int trials, std::uint64_t seed, double tol) {
  if (trials <= 0) throw std::invalid_argument("sp2_cover_check: trials must be positive");
  const auto centers = sp2_cover_centers();
  CoverReport rep;
  rep.trials = trials;
  rep.tol = tol;
  rep.seed = seed;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Matrix x = haar_sample({Field::Quaternion, 2}, derive_seed(seed, static_cast<std::uint64_t>(k)));
    double best = 0;
    bool covered = false;
    for (std::size_t s = 0; s < centers.size(); ++s) {
      const OmegaMembership m = omega_member(centers[s], x, tol);
      best = std::max(best, m.margin);
      if (m.member) {
        covered = true;
        ++rep.per_set_hit_counts[s];
      }
    }
    if (!covered) ++rep.uncovered_count;
    rep.min_margin = std::min(rep.min_margin, best);
  }
  return rep;
}

double omega_i_margin(const Matrix& a) {
  if (a.field() == Field::Real) throw FieldError("omega_i_member: i is not defined over R");
  if (!a.square()) throw DimensionError("omega_i_member: matrix is not square");
  Matrix shifted = a;
  for (std::size_t d = 0; d < a.rows(); ++d) shifted.set(d, d, a(d, d) - Quat::i());
  return abs_det(shifted);
}

bool omega_i_member(const Matrix& a, double tol) { return omega_i_margin(a) > tol; }

OrbitReport orbit_in_omega_i(int trials, std::uint64_t seed, double tol) {
  if (trials <= 0) throw std::invalid_argument("orbit_in_omega_i: trials must be positive");
  const std::vector<double> signs{1.0, -1.0};
  const Matrix rep_point = Matrix::diagonal(Field::Complex, signs);
  OrbitReport rep;
  rep.trials = trials;
  rep.all_members = true;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Matrix q = haar_sample({Field::Complex, 2}, derive_seed(seed, static_cast<std::uint64_t>(k)));
    const Matrix a = q * rep_point * conj_transpose(q);
    const double margin = omega_i_margin(a);
    rep.min_margin = std::min(rep.min_margin, margin);
    if (!(margin > tol)) rep.all_members = false;
  }
  return rep;
}

}  // namespace liecat
