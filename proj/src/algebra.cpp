#include "liecat/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "liecat/error.hpp"

namespace liecat {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw DimensionError(os.str());
  }
}

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (a.field() != b.field()) {
    throw FieldError(std::string(op) + ": field mismatch " + to_string(a.field()) + " vs " +
                     to_string(b.field()));
  }
}

bool wider_or_equal(Field wide, Field narrow) { return real_dim(wide) >= real_dim(narrow); }

Quat project_quat(const Quat& q, Field f) {
  switch (f) {
    case Field::Real: return {q.w};
    case Field::Complex: return {q.w, q.x};
    case Field::Quaternion: return q;
  }
  return q;
}

}  // namespace

std::string to_string(Field f) {
  switch (f) {
    case Field::Real: return "R";
    case Field::Complex: return "C";
    case Field::Quaternion: return "H";
  }
  return "?";
}

Field parse_field(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "R") return Field::Real;
  if (u == "C") return Field::Complex;
  if (u == "H") return Field::Quaternion;
  throw FieldError("unknown field '" + s + "' (expected R, C or H)");
}

std::ostream& operator<<(std::ostream& os, const Quat& q) {
  return os << "(" << q.w << " " << q.x << "i " << q.y << "j " << q.z << "k)";
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Quat> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("Matrix: entry count does not match shape");
  for (const auto& q : data_) {
    if (!q.in_field(field_)) {
      throw FieldError("Matrix: entry outside field " + to_string(field_));
    }
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Quat(1);
  return m;
}

Matrix Matrix::diagonal(Field field, std::span<const double> values) {
  Matrix m(field, values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.at(i, i) = Quat(values[i]);
  return m;
}

Matrix Matrix::diagonal(Field field, std::span<const Quat> values) {
  Matrix m(field, values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.set(i, i, values[i]);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Quat& q) {
  if (!q.in_field(field_)) throw FieldError("Matrix::set: entry outside field " + to_string(field_));
  at(r, c) = q;
}

Matrix Matrix::promoted(Field wider) const {
  if (!wider_or_equal(wider, field_)) {
    throw FieldError("promoted: " + to_string(wider) + " is narrower than " + to_string(field_));
  }
  Matrix m = *this;
  m.field_ = wider;
  return m;
}

Matrix Matrix::projected(Field narrower) const {
  Matrix m(narrower, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = project_quat(data_[i], narrower);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block: out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b.at(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block: out of range");
  if (!wider_or_equal(field_, b.field())) throw FieldError("set_block: block field is wider");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) at(r0 + r, c0 + c) = b(r, c);
}

double Matrix::frobenius_norm() const {
  double s = 0;
  for (const auto& q : data_) s += q.norm2();
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "operator+");
  require_same_field(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "operator-");
  require_same_field(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[" << to_string(m.field()) << " " << m.rows() << "x" << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << " " << m(r, c);
    os << "\n";
  }
  return os << "]";
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("mat_mul: inner dimensions differ");
  require_same_field(a, b, "mat_mul");
  Matrix out(a.field(), a.rows(), b.cols());
  std::vector<Quat> row(b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::fill(row.begin(), row.end(), Quat{});
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quat& ark = a(r, k);
      if (ark == Quat{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) row[c] += ark * b(k, c);
    }
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, c, row[c]);
  }
  return out;
}

Matrix conj_transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(c, r) = a(r, c).conj();
  return out;
}

double inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "inner");
  require_same_field(a, b, "inner");
  // Re(conj(p) q) is the Euclidean dot product of the components.
  double s = 0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    s += ea[i].w * eb[i].w + ea[i].x * eb[i].x + ea[i].y * eb[i].y + ea[i].z * eb[i].z;
  }
  return s;
}

Matrix complex_adjoint(const Matrix& a) {
  if (a.field() != Field::Quaternion) return a.promoted(Field::Complex);
  Matrix out(Field::Complex, 2 * a.rows(), 2 * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Quat& q = a(r, c);
      // q = alpha + beta j with alpha = w + xi, beta = y + zi.
      out.set(2 * r, 2 * c, {q.w, q.x});
      out.set(2 * r, 2 * c + 1, {q.y, q.z});
      out.set(2 * r + 1, 2 * c, {-q.y, q.z});
      out.set(2 * r + 1, 2 * c + 1, {q.w, -q.x});
    }
  }
  return out;
}

Matrix from_complex_adjoint(const Matrix& c) {
  if (c.field() != Field::Complex || c.rows() % 2 != 0 || c.cols() % 2 != 0) {
    throw DimensionError("from_complex_adjoint: expected a complex matrix of even shape");
  }
  Matrix out(Field::Quaternion, c.rows() / 2, c.cols() / 2);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t k = 0; k < out.cols(); ++k) {
      const Quat& alpha = c(2 * r, 2 * k);
      const Quat& beta = c(2 * r, 2 * k + 1);
      out.set(r, k, {alpha.w, alpha.x, beta.w, beta.x});
    }
  }
  return out;
}

double distance(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "distance");
  double s = 0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) s += (ea[i] - eb[i]).norm2();
  return std::sqrt(s);
}

}  // namespace liecat
