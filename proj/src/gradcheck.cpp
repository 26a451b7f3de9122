#include "liecat/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "liecat/critical.hpp"
#include "liecat/flow.hpp"
#include "liecat/group.hpp"
#include "liecat/height.hpp"

namespace liecat {

namespace {

Matrix unit_tangent(const Matrix& a, std::uint64_t seed) {
  Matrix y = tangent_project(a, gaussian_matrix(a.field(), a.rows(), seed));
  return y * (1.0 / y.frobenius_norm());
}

// Random diagonal data of size n: some zeros, then integer singular values
// with random multiplicities.
SingularData random_singular_data(Field field, std::size_t n, std::mt19937_64& rng) {
  SingularData sd;
  sd.field = field;
  sd.n0 = std::uniform_int_distribution<int>(0, static_cast<int>(n) - 1)(rng);
  int left = static_cast<int>(n) - sd.n0;
  long long t = 0;
  while (left > 0) {
    const int m = std::uniform_int_distribution<int>(1, left)(rng);
    t += std::uniform_int_distribution<int>(1, 3)(rng);
    sd.blocks.push_back({Number::exact(Rational(t)), m});
    left -= m;
  }
  return sd;
}

}  // namespace

bool GradCheckReport::pass() const {
  return trials > 0 && max_grad_rel_error < 1e-6 && max_tangency_residual < 1e-12 &&
         max_hessian_rel_error < 1e-4 && max_hessian_asymmetry < 1e-8;
}

Matrix gaussian_matrix(Field field, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(field, n, n);
  const int d = real_dim(field);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double comp[4] = {0, 0, 0, 0};
      for (int k = 0; k < d; ++k) comp[k] = g(rng);
      m.set(r, c, Quat(comp[0], comp[1], comp[2], comp[3]));
    }
  }
  return m;
}

GradCheckReport gradcheck(Field field, std::size_t n, int trials, std::uint64_t seed) {
  GradCheckReport rep;
  rep.field = field;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  const GroupSpec spec{field, n};
  std::mt19937_64 rng(seed);

  // Random directions are not normalized; the warning is noise here.
  const ScopedWarningHandler quiet([](std::string_view) {});
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(k));
    {
      const HeightSpec h(gaussian_matrix(field, n, derive_seed(s, 1)), spec);
      const Matrix a = haar_sample(spec, derive_seed(s, 2));
      rep.max_tangency_residual = std::max(rep.max_tangency_residual, tangency_residual(a, riem_grad(h, a)));
      // O(1,R) is discrete: no directions to differentiate along.
      if (spec.dim() == 0) continue;
      const Matrix y = unit_tangent(a, derive_seed(s, 3));
      const Matrix g = riem_grad(h, a);
      const double t = 1e-5;
      const double fd = (value(h, retract(a, y * t)) - value(h, retract(a, y * -t))) / (2 * t);
      const double an = inner(g, y);
      const double scale = std::max(std::abs(an), g.frobenius_norm() * y.frobenius_norm());
      if (scale > 0) rep.max_grad_rel_error = std::max(rep.max_grad_rel_error, std::abs(fd - an) / scale);
    }
    {
      const SingularData sd = random_singular_data(field, n, rng);
      std::vector<int> idx;
      for (const auto& b : sd.blocks) idx.push_back(std::uniform_int_distribution<int>(0, b.mult)(rng));
      const HeightSpec h(sd.diagonal_matrix(), spec);
      const Matrix a = constructed_critical_point(sd, idx, derive_seed(s, 4));
      const Matrix y = unit_tangent(a, derive_seed(s, 5));
      const double q = inner(y, hessian_apply(h, a, y));
      const double t = 1e-3;
      const double fd2 =
          (value(h, retract(a, y * t)) - 2 * value(h, a) + value(h, retract(a, y * -t))) / (t * t);
      const double scale = std::max(std::abs(q), h.x().frobenius_norm());
      rep.max_hessian_rel_error = std::max(rep.max_hessian_rel_error, std::abs(fd2 - q) / scale);
      rep.max_hessian_asymmetry = std::max(rep.max_hessian_asymmetry, hessian_matrix(h, a).asymmetry);
    }
  }
  return rep;
}

}  // namespace liecat
