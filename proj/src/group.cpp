#include "liecat/group.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "liecat/error.hpp"

namespace liecat {

namespace {

using cplx = std::complex<double>;

// Dense complex square matrix used inside the eigensolver and the LU.
struct CMat {
  std::size_t n = 0;
  std::vector<cplx> a;
  cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

CMat to_cmat(const Matrix& m) {
  CMat out{m.rows(), std::vector<cplx>(m.rows() * m.rows())};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = {m(r, c).w, m(r, c).x};
  return out;
}


Quat col_dot(const Matrix& a, const Matrix& b) {
  // a* b for column vectors.
  Quat s;
  for (std::size_t r = 0; r < a.rows(); ++r) s += a(r, 0).conj() * b(r, 0);
  return s;
}

// x - sum_c v_c (v_c* x), applied twice for stability.
Matrix orthogonalize(Matrix x, const std::vector<Matrix>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& v : basis) {
      Quat coef = col_dot(v, x);
      for (std::size_t r = 0; r < x.rows(); ++r) x.set(r, 0, x(r, 0) - v(r, 0) * coef);
    }
  }
  return x;
}

Matrix normalized(Matrix x) {
  double nrm = x.frobenius_norm();
  return x * (1.0 / nrm);
}

Matrix from_columns(Field f, const std::vector<Matrix>& cols) {
  Matrix m(f, cols.front().rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_block(0, j, cols[j].projected(f));
  return m;
}

// Complex eigenvector of chi(H) (length n or 2n) to a column over `f`.
Matrix field_vector(Field f, std::size_t n, const Matrix& evecs, std::size_t col) {
  Matrix x(f, n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    if (f == Field::Quaternion) {
      const Quat& alpha = evecs(2 * r, col);
      const Quat& lower = evecs(2 * r + 1, col);  // -conj(beta)
      x.set(r, 0, {alpha.w, alpha.x, -lower.w, lower.x});
    } else if (f == Field::Complex) {
      x.set(r, 0, {evecs(r, col).w, evecs(r, col).x});
    } else {
      x.set(r, 0, {evecs(r, col).w});
    }
  }
  return x;
}

}  // namespace

std::size_t group_dim(Field field, std::size_t m) {
  switch (field) {
    case Field::Real: return m * (m - (m > 0 ? 1 : 0)) / 2;
    case Field::Complex: return m * m;
    case Field::Quaternion: return m * (2 * m + 1);
  }
  return 0;
}

std::size_t GroupSpec::dim() const { return group_dim(field, n); }

std::string GroupSpec::name() const {
  switch (field) {
    case Field::Real: return "O(" + std::to_string(n) + ",R)";
    case Field::Complex: return "U(" + std::to_string(n) + ")";
    case Field::Quaternion: return "Sp(" + std::to_string(n) + ")";
  }
  return "?";
}

bool is_member(const Matrix& a, double tol) {
  if (!a.square()) throw DimensionError("is_member: matrix is not square");
  Matrix r = mat_mul(a, conj_transpose(a)) - Matrix::identity(a.field(), a.rows());
  return r.frobenius_norm() <= tol;
}

void require_member(const Matrix& a, const char* who) {
  if (!a.square() || !is_member(a, kMemberTol)) {
    throw PreconditionError(std::string(who) + ": matrix is not a group member");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix haar_sample(const GroupSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = real_dim(spec.field);

  auto draw = [&]() {
    double c[4] = {0, 0, 0, 0};
    for (int k = 0; k < d; ++k) c[k] = gauss(rng);
    return Quat(c[0], c[1], c[2], c[3]);
  };

  Matrix a(spec.field, n, n);
  for (std::size_t b = 0; b < n; ++b) {
    for (;;) {
      std::vector<Quat> row(n);
      for (auto& q : row) q = draw();
      // Rows are orthogonalized with left scalars: r_b <- r_b - (r_b r_a*) r_a.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < b; ++prev) {
          Quat mu;
          for (std::size_t c = 0; c < n; ++c) mu += row[c] * a(prev, c).conj();
          for (std::size_t c = 0; c < n; ++c) row[c] -= mu * a(prev, c);
        }
      }
      double nrm = 0;
      for (const auto& q : row) nrm += q.norm2();
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) continue;  // numerically rank deficient draw
      for (std::size_t c = 0; c < n; ++c) a.set(b, c, row[c] * (1.0 / nrm));
      break;
    }
  }
  return a;
}

Matrix tangent_project(const Matrix& a, const Matrix& w) {
  require_member(a, "tangent_project");
  if (w.rows() != a.rows() || w.cols() != a.cols()) throw DimensionError("tangent_project: shape");
  return (w - a * conj_transpose(w) * a) * 0.5;
}

double tangency_residual(const Matrix& a, const Matrix& y) {
  return (y * conj_transpose(a) + a * conj_transpose(y)).frobenius_norm();
}

Matrix retract(const Matrix& a, const Matrix& v) {
  Matrix z = a + v;
  const std::size_t n = z.rows();
  const double scale = z.frobenius_norm();  // upper bound for the spectral norm
  if (scale == 0) throw ConvergenceError("retract: A + V is zero");
  z *= 1.0 / scale;
  const Matrix three = Matrix::identity(z.field(), n) * 3.0;
  const Matrix id = Matrix::identity(z.field(), n);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    Matrix ztz = conj_transpose(z) * z;
    double res = (ztz - id).frobenius_norm();
    if (res < 1e-14) return z;
    // Round-off floor for larger n.
    if (res < 1e-12 && res >= prev) return z;
    prev = res;
    z = z * (three - ztz) * 0.5;
  }
  throw ConvergenceError("retract: Newton-Schulz did not converge in 60 iterations");
}

double abs_det(const Matrix& a) {
  if (!a.square()) throw DimensionError("abs_det: matrix is not square");
  CMat m = to_cmat(complex_adjoint(a));
  const std::size_t n = m.n;
  double log_det = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(m(r, k)) > best) {
        best = std::abs(m(r, k));
        piv = r;
      }
    }
    if (best == 0) return 0.0;
    if (piv != k)
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
    log_det += std::log(best);
    for (std::size_t r = k + 1; r < n; ++r) {
      cplx l = m(r, k) / m(k, k);
      if (l == cplx{}) continue;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= l * m(k, c);
    }
  }
  if (a.field() == Field::Quaternion) log_det *= 0.5;
  return std::exp(log_det);
}

EigResult hermitian_eig(const Matrix& input, double tol) {
  if (!input.square()) throw DimensionError("hermitian_eig: matrix is not square");
  if (input.field() == Field::Quaternion) {
    throw FieldError("hermitian_eig: expects complex entries (apply complex_adjoint first)");
  }
  const Matrix m = input.promoted(Field::Complex);
  const double mnorm = m.frobenius_norm();
  const double herm_tol = std::max(tol, 1e-10) * std::max(1.0, mnorm);
  if ((m - conj_transpose(m)).frobenius_norm() > herm_tol) {
    throw PreconditionError("hermitian_eig: matrix is not Hermitian");
  }

  const std::size_t n = m.rows();
  CMat a = to_cmat(m);
  // Symmetrize away round-off.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = {a(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < n; ++c) {
      cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  CMat q{n, std::vector<cplx>(n * n)};
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;

  auto off_mass = [&]() {
    double s = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };

  const double target = tol * mnorm;
  int sweep = 0;
  for (; sweep < 100; ++sweep) {
    if (off_mass() <= target) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const cplx apq = a(p, r);
        const double mag = std::abs(apq);
        if (mag == 0) continue;
        rotated = true;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(r, r).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = [[c, s], [-s conj(phase), c conj(phase)]] acting on columns p, r.
        const cplx upp = c, upq = s, uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, r);
          a(k, p) = akp * upp + akq * uqp;
          a(k, r) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(r, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(r, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, r) = 0;
        a(r, p) = 0;
        a(p, p) = app - t * mag;
        a(r, r) = aqq + t * mag;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx qkp = q(k, p), qkq = q(k, r);
          q(k, p) = qkp * upp + qkq * uqp;
          q(k, r) = qkp * upq + qkq * uqq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == 100 && off_mass() > std::max(target, 1e-12 * mnorm)) {
    throw ConvergenceError("hermitian_eig: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigResult out{std::vector<double>(n), Matrix(Field::Complex, n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) {
      const cplx v = q(r, order[k]);
      out.eigenvectors.set(r, k, {v.real(), v.imag()});
    }
  }
  return out;
}

Matrix SvdResult::d() const { return Matrix::diagonal(u.field(), singular_values); }

SvdResult svd(const Matrix& x, double tol) {
  if (!x.square()) throw DimensionError("svd: matrix is not square");
  const Field f = x.field();
  const std::size_t n = x.rows();
  const Matrix chi = complex_adjoint(x);
  const EigResult eig = hermitian_eig(conj_transpose(chi) * chi, tol);

  // Every eigenvector of chi(X*X) maps to an eigenvector of X*X over the
  // field. For H the eigenvalues come in pairs; a greedy pick of the
  // candidate with the largest residual against the chosen span yields n
  // orthonormal field vectors.
  const std::size_t m = eig.eigenvalues.size();
  std::vector<Matrix> candidates;
  candidates.reserve(m);
  for (std::size_t k = 0; k < m; ++k) candidates.push_back(field_vector(f, n, eig.eigenvectors, k));

  std::vector<Matrix> vcols;
  std::vector<bool> used(m, false);
  while (vcols.size() < n) {
    double best = -1;
    std::size_t pick = 0;
    Matrix best_res;
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k]) continue;
      Matrix res = orthogonalize(candidates[k], vcols);
      double nrm = res.frobenius_norm();
      if (nrm > best) {
        best = nrm;
        pick = k;
        best_res = std::move(res);
      }
    }
    used[pick] = true;
    vcols.push_back(normalized(std::move(best_res)));
  }

  std::vector<double> sigma(n);
  for (std::size_t c = 0; c < n; ++c) sigma[c] = (x * vcols[c]).frobenius_norm();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] < sigma[j]; });

  std::vector<Matrix> vsorted(n), usorted(n);
  std::vector<double> ssorted(n);
  for (std::size_t k = 0; k < n; ++k) {
    vsorted[k] = vcols[order[k]];
    ssorted[k] = sigma[order[k]];
  }

  // Left vectors from the largest singular value down; null directions are
  // completed from the standard basis.
  const double smax = ssorted.empty() ? 0.0 : ssorted.back();
  const double zero_thresh = std::max(tol, 1e-13) * smax;
  std::vector<Matrix> ubuilt;
  std::vector<std::size_t> slot;
  for (std::size_t k = n; k-- > 0;) {
    if (ssorted[k] > zero_thresh && ssorted[k] > 0) {
      Matrix u = orthogonalize((x * vsorted[k]) * (1.0 / ssorted[k]), ubuilt);
      ubuilt.push_back(normalized(std::move(u)));
    } else {
      double best = -1;
      Matrix best_res;
      for (std::size_t e = 0; e < n; ++e) {
        Matrix unit(f, n, 1);
        unit.set(e, 0, Quat(1));
        Matrix res = orthogonalize(unit, ubuilt);
        if (res.frobenius_norm() > best) {
          best = res.frobenius_norm();
          best_res = std::move(res);
        }
      }
      ubuilt.push_back(normalized(std::move(best_res)));
    }
    slot.push_back(k);
  }
  for (std::size_t i = 0; i < n; ++i) usorted[slot[i]] = ubuilt[i];

  return SvdResult{from_columns(f, usorted), from_columns(f, vsorted), ssorted};
}

}  // namespace liecat
