#pragma once

// Exact combinatorial model of the critical set of h_X.
//
// For X with singular values 0 (multiplicity n0) < t_1 < ... < t_k
// (multiplicities n_1..n_k) the critical components are
//   Sigma[n0; i_1..i_k] = O(n0) x Gr(i_1, n_1) x ... x Gr(i_k, n_k),
// 0 <= i_q <= n_q, with critical value sum_q t_q (n_q - 2 i_q).

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liecat/algebra.hpp"

namespace liecat {

using Rational = boost::multiprecision::cpp_rational;

/// A value that is either an exact rational or a double.
class Number {
 public:
  Number() = default;
  static Number exact(Rational r);
  static Number real(double d);
  /// "3", "-1/2" parse exactly; anything else parses as a double.
  /// Throws std::invalid_argument on malformed text.
  static Number parse(const std::string& text);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& rational() const { return *exact_; }
  double to_double() const { return approx_; }
  /// Exact text ("7/2") for rationals, round-trip decimal otherwise.
  std::string str() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator*(const Number& a, long long k);
  friend Number operator-(const Number& a);

 private:
  std::optional<Rational> exact_;
  double approx_ = 0;
};

struct SvBlock {
  Number t;
  int mult = 1;
};

struct SingularData {
  int n0 = 0;
  std::vector<SvBlock> blocks;  // strictly increasing t
  Field field = Field::Quaternion;

  /// Throws std::invalid_argument unless 0 < t_1 < ... < t_k and every
  /// multiplicity is positive.
  void validate() const;
  int n() const;
  bool all_exact() const;
  /// n0 == 0 and every n_q == 1: h_X is a Morse function.
  bool is_morse() const;
  std::size_t component_count() const;
  /// Diagonal X = diag(0,..,0, t_1,..,t_1, ..., t_k,..) over the field.
  Matrix diagonal_matrix() const;
};

/// Convenience: exact data with integer singular values.
SingularData make_singular_data(Field field, int n0, std::vector<std::pair<long long, int>> blocks);

struct CriticalComponent {
  std::vector<int> indices;  // i_1..i_k
  Number value;
  int dim = 0;
  std::optional<int> user_cat;
};

struct Level {
  Number value;
  std::vector<CriticalComponent> components;
};

struct LevelTable {
  std::vector<Level> levels;  // ascending values
  int level_count = 0;
};

/// Clusters the singular values of X: values below cluster_tol*|X| count
/// towards n0, neighbours closer than that merge into one block. Throws
/// AmbiguityError if a gap lies within [0.5, 2] times the threshold.
SingularData singular_data(const Matrix& x, double cluster_tol);

std::vector<CriticalComponent> enumerate_components(const SingularData& sd);

/// sum_q t_q (n_q - 2 i_q). Throws std::out_of_range on a bad index vector.
Number critical_value(const SingularData& sd, std::span<const int> indices);

/// dim O(n0,K) + sum_q d * i_q (n_q - i_q).
int component_dim(Field field, const SingularData& sd, std::span<const int> indices);

/// Relative merge tolerance for inexact critical values.
inline constexpr double kLevelMergeTol = 1e-9;

/// Groups components by critical value (exactly, or within
/// kLevelMergeTol * max|value|). Throws AmbiguityError on a near-tie and
/// std::logic_error if the value set is not symmetric under c -> -c.
LevelTable level_table(const SingularData& sd);

/// Thrown by level_count_bound when the hypotheses of the level-count bound
/// fail (critical points not isolated, or a disconnected group).
class BoundHypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Upper bound p - 1 for cat G, p the number of critical levels. Needs
/// isolated critical points (Morse data) on a connected group.
int level_count_bound(const SingularData& sd);

/// C = n(n+1)/2 from X = diag(1..n) on Sp(n), after checking that the
/// critical values are exactly {-C, -C+2, ..., C}.
int sp_category_bound(int n);

/// sum_c (cat_c + 1) - 1 over all components, in enumerate_components order.
/// Throws std::invalid_argument if some annotation is missing or negative.
int comps_bound(const SingularData& sd, std::span<const std::optional<int>> cats);
int comps_bound(std::span<const CriticalComponent> annotated);

/// min(q, n - q) for q = 0..n: the conjectured relative categories of the
/// conjugacy-class Grassmannians in Sp(n).
std::vector<std::optional<int>> conjectured_grassmannian_cats(int n);

/// floor((n + 2)^2 / 4) - 1.
int conjectured_sp_bound(int n);

/// n(n+1)/2.
constexpr long long triangular(long long n) { return n * (n + 1) / 2; }

}  // namespace liecat
