#include "liecat/height.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "liecat/error.hpp"

namespace liecat {

namespace {

std::mutex g_warn_mutex;

// Prints each distinct message once per process.
void default_warning(std::string_view msg) {
  static std::set<std::string, std::less<>> seen;
  if (seen.insert(std::string(msg)).second) std::cerr << "warning: " << msg << "\n";
}

WarningHandler& handler_slot() {
  static WarningHandler h = default_warning;
  return h;
}

void check_shape(const HeightSpec& h, const Matrix& a, const char* who) {
  if (a.rows() != h.group().n || a.cols() != h.group().n) {
    throw DimensionError(std::string(who) + ": point size does not match the group");
  }
  if (a.field() != h.group().field) {
    throw FieldError(std::string(who) + ": point field does not match the group");
  }
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(g_warn_mutex);
  WarningHandler prev = std::move(handler_slot());
  handler_slot() = handler ? std::move(handler) : WarningHandler(default_warning);
  return prev;
}

void warn(std::string_view message) {
  std::lock_guard lock(g_warn_mutex);
  handler_slot()(message);
}

HeightSpec::HeightSpec(Matrix x, GroupSpec group) : x_(std::move(x)), group_(group) {
  if (x_.rows() != group_.n || x_.cols() != group_.n) {
    throw DimensionError("HeightSpec: X must be " + std::to_string(group_.n) + "x" +
                         std::to_string(group_.n));
  }
  if (x_.field() != group_.field) throw FieldError("HeightSpec: X field does not match the group");
  const double nrm = x_.frobenius_norm();
  if (std::abs(nrm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "height direction has |X| = " << nrm
       << "; critical values scale with |X| (the critical set does not)";
    warn(os.str());
  }
}

double value(const HeightSpec& h, const Matrix& a) {
  check_shape(h, a, "value");
  require_member(a, "value");
  return inner(h.x(), a);
}

Matrix riem_grad(const HeightSpec& h, const Matrix& a) {
  check_shape(h, a, "riem_grad");
  return tangent_project(a, h.x());
}

Matrix hessian_apply(const HeightSpec& h, const Matrix& a, const Matrix& y) {
  check_shape(h, a, "hessian_apply");
  require_member(a, "hessian_apply");
  if (tangency_residual(a, y) > 1e-8) throw PreconditionError("hessian_apply: Y is not tangent at A");
  const Matrix& x = h.x();
  return (a * x * y + y * x * a) * -0.5;
}

TangentBasis tangent_basis(const Matrix& a) {
  require_member(a, "tangent_basis");
  const Field f = a.field();
  const std::size_t n = a.rows();
  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<Matrix> skew;

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      Matrix e(f, n, n);
      e.set(p, q, Quat(r2));
      e.set(q, p, Quat(-r2));
      skew.push_back(std::move(e));
    }
  }
  std::vector<Quat> units;
  if (f != Field::Real) units.push_back(Quat::i());
  if (f == Field::Quaternion) {
    units.push_back(Quat::j());
    units.push_back(Quat::k());
  }
  for (const Quat& u : units) {
    for (std::size_t p = 0; p < n; ++p) {
      Matrix e(f, n, n);
      e.set(p, p, u);
      skew.push_back(std::move(e));
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Matrix e(f, n, n);
        e.set(p, q, u * r2);
        e.set(q, p, u * r2);
        skew.push_back(std::move(e));
      }
    }
  }

  TangentBasis out{a, {}};
  out.vectors.reserve(skew.size());
  for (const auto& e : skew) out.vectors.push_back(a * e);
  return out;
}

std::vector<double> HessianMatrix::eigenvalues() const {
  std::vector<Quat> q(entries.begin(), entries.end());
  Matrix m(Field::Real, dim, dim, std::move(q));
  return hermitian_eig(m, 1e-15).eigenvalues;
}

HessianMatrix hessian_matrix(const HeightSpec& h, const Matrix& a) {
  const TangentBasis basis = tangent_basis(a);
  const std::size_t dim = basis.vectors.size();
  HessianMatrix out;
  out.dim = dim;
  out.entries.assign(dim * dim, 0.0);
  out.grad_norm = riem_grad(h, a).frobenius_norm();

  std::vector<double> raw(dim * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const Matrix hy = hessian_apply(h, a, basis.vectors[c]);
    for (std::size_t b = 0; b < dim; ++b) raw[b * dim + c] = inner(basis.vectors[b], hy);
  }
  double asym = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = raw[b * dim + c] - raw[c * dim + b];
      asym += d * d;
      out.entries[b * dim + c] = 0.5 * (raw[b * dim + c] + raw[c * dim + b]);
    }
  }
  out.asymmetry = std::sqrt(asym);
  if (out.grad_norm < kCriticalGradTol && out.asymmetry > 1e-6) {
    throw std::logic_error("hessian_matrix: asymmetric Hessian at a critical point");
  }
  return out;
}

double equivariance_residual(const HeightSpec& h, const Matrix& a) {
  const SvdResult s = svd(h.x());
  const HeightSpec hd(s.d(), h.group());
  const Matrix moved = conj_transpose(s.v) * a * s.u;
  const Matrix rhs = s.v * riem_grad(hd, moved) * conj_transpose(s.u);
  return distance(riem_grad(h, a), rhs);
}

double equivariance_residual_general(const HeightSpec& h, const Matrix& a) {
  const SvdResult s = svd(h.x());
  const HeightSpec hd(s.d(), h.group());
  const Matrix moved = conj_transpose(s.u) * a * s.v;
  const Matrix rhs = s.u * riem_grad(hd, moved) * conj_transpose(s.v);
  return distance(riem_grad(h, a), rhs);
}

}  // namespace liecat
