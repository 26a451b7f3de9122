#pragma once

// Field-generic dense matrices over R, C and H.
//
// Every scalar is stored as a quaternion w + xi + yj + zk. The field tag of a
// matrix restricts which components may be nonzero (Real: x=y=z=0, Complex:
// y=z=0), so one code path serves all three fields.

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace liecat {

enum class Field { Real, Complex, Quaternion };

/// Dimension of the field as a real vector space: 1, 2 or 4.
constexpr int real_dim(Field f) {
  switch (f) {
    case Field::Real: return 1;
    case Field::Complex: return 2;
    case Field::Quaternion: return 4;
  }
  return 0;
}

std::string to_string(Field f);
/// Parses "R", "C" or "H" (case-insensitive). Throws FieldError otherwise.
Field parse_field(const std::string& s);

struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_ = 0, double y_ = 0, double z_ = 0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quat i() { return {0, 1, 0, 0}; }
  static constexpr Quat j() { return {0, 0, 1, 0}; }
  static constexpr Quat k() { return {0, 0, 0, 1}; }

  constexpr Quat conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double abs() const { return std::sqrt(norm2()); }

  /// True iff the nonzero components fit in the given field.
  constexpr bool in_field(Field f) const {
    switch (f) {
      case Field::Real: return x == 0 && y == 0 && z == 0;
      case Field::Complex: return y == 0 && z == 0;
      case Field::Quaternion: return true;
    }
    return false;
  }

  constexpr Quat& operator+=(const Quat& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quat& operator-=(const Quat& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quat& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quat operator+(Quat a, const Quat& b) { return a += b; }
  friend constexpr Quat operator-(Quat a, const Quat& b) { return a -= b; }
  friend constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quat operator*(Quat a, double s) { return a *= s; }
  friend constexpr Quat operator*(double s, Quat a) { return a *= s; }
  friend constexpr Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr bool operator==(const Quat&, const Quat&) = default;
};

std::ostream& operator<<(std::ostream& os, const Quat& q);

/// Dense row-major matrix of quaternions tagged with a field.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(Field field, std::size_t rows, std::size_t cols);
  /// Throws FieldError if an entry leaves the field's sub-algebra and
  /// DimensionError if the entry count does not match.
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Quat> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix diagonal(Field field, std::span<const double> values);
  static Matrix diagonal(Field field, std::span<const Quat> values);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::span<const Quat> entries() const { return data_; }

  const Quat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Checked write; throws FieldError if q is outside the field.
  void set(std::size_t r, std::size_t c, const Quat& q);

  /// Same entries under a wider field tag (Real -> Complex -> Quaternion).
  Matrix promoted(Field wider) const;
  /// Drops the components that the narrower field does not carry. Only
  /// meant for removing round-off from results known to lie in the field.
  Matrix projected(Field narrower) const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Quat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Field field_ = Field::Real;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Quat> data_;

  friend Matrix conj_transpose(const Matrix& a);
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix conj_transpose(const Matrix& a);
/// Re Tr(A* B), accumulated entrywise without forming the product.
double inner(const Matrix& a, const Matrix& b);
/// Complex matrix of doubled size with the 2x2 block [[a, b], [-conj b, conj a]]
/// for each quaternion a + bj. Real and complex inputs map to themselves
/// (retagged Complex).
Matrix complex_adjoint(const Matrix& a);
/// Left inverse of complex_adjoint on its image.
Matrix from_complex_adjoint(const Matrix& c);

/// Frobenius distance ||a - b||.
double distance(const Matrix& a, const Matrix& b);

}  // namespace liecat
