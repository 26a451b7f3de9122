#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "liecat/error.hpp"
#include "liecat/gradcheck.hpp"
#include "liecat/group.hpp"
#include "oracles.hpp"

using namespace liecat;

namespace {

constexpr Field kFields[] = {Field::Real, Field::Complex, Field::Quaternion};

class PerField : public ::testing::TestWithParam<Field> {};

}  // namespace

TEST(GroupSpec, DimensionsAndNames) {
  EXPECT_EQ(group_dim(Field::Real, 4), 6u);
  EXPECT_EQ(group_dim(Field::Complex, 3), 9u);
  EXPECT_EQ(group_dim(Field::Quaternion, 2), 10u);
  EXPECT_EQ((GroupSpec{Field::Real, 3}).name(), "O(3,R)");
  EXPECT_EQ((GroupSpec{Field::Complex, 2}).name(), "U(2)");
  EXPECT_EQ((GroupSpec{Field::Quaternion, 2}).name(), "Sp(2)");
  for (Field f : kFields)
    for (std::size_t m = 1; m <= 5; ++m)
      EXPECT_EQ(group_dim(f, m), static_cast<std::size_t>(oracle::component_dim(f, static_cast<int>(m), {}, {})));
}

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

TEST_P(PerField, HaarSamplesAreMembersAndReproducible) {
  const Field f = GetParam();
  for (std::size_t n = 1; n <= 5; ++n) {
    const GroupSpec spec{f, n};
    const Matrix a = haar_sample(spec, 10 + n);
    EXPECT_TRUE(is_member(a, 1e-12)) << spec.name();
    EXPECT_EQ(a, haar_sample(spec, 10 + n));
    if (spec.dim() > 0) EXPECT_GT(distance(a, haar_sample(spec, 20 + n)), 1e-6);
  }
}

TEST_P(PerField, HaarFirstMomentVanishes) {
  // E[A] = 0 for Haar measure on these groups (n >= 2), and E|A_00|^2 = 1/n.
  const Field f = GetParam();
  const GroupSpec spec{f, 3};
  Matrix mean(f, 3, 3);
  double second = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const Matrix a = haar_sample(spec, derive_seed(77, t));
    mean += a;
    second += a(0, 0).norm2();
  }
  mean *= 1.0 / trials;
  EXPECT_LT(mean.frobenius_norm(), 0.1);
  EXPECT_NEAR(second / trials, 1.0 / 3, 0.03);
}

TEST_P(PerField, TangentProjectionIsOrthogonalProjection) {
  const Field f = GetParam();
  const GroupSpec spec{f, 4};
  const Matrix a = haar_sample(spec, 3);
  const Matrix w = gaussian_matrix(f, 4, 4);
  const Matrix p = tangent_project(a, w);
  EXPECT_LT(tangency_residual(a, p), 1e-13);
  EXPECT_LT(distance(tangent_project(a, p), p), 1e-13);
  EXPECT_NEAR(inner(w - p, p), 0.0, 1e-12);
}

TEST_P(PerField, RetractionIsFirstOrder) {
  const Field f = GetParam();
  const GroupSpec spec{f, 3};
  const Matrix a = haar_sample(spec, 5);
  Matrix y = tangent_project(a, gaussian_matrix(f, 3, 6));
  y *= 1.0 / y.frobenius_norm();
  EXPECT_LT(distance(retract(a, y * 0.0), a), 1e-14);
  const double e1 = distance(retract(a, y * 1e-2), a + y * 1e-2);
  const double e2 = distance(retract(a, y * 1e-3), a + y * 1e-3);
  EXPECT_LT(e2, e1 / 50);  // quadratic error
  for (double t : {0.1, 1.0, 3.0}) EXPECT_TRUE(is_member(retract(a, y * t), 1e-12));
}

TEST_P(PerField, AbsDetAgreesWithOracle) {
  const Field f = GetParam();
  for (std::size_t n = 1; n <= 5; ++n) {
    const Matrix x = gaussian_matrix(f, n, 40 + n);
    const double ref = oracle::abs_det(x);
    EXPECT_NEAR(abs_det(x), ref, 1e-11 * ref);
    EXPECT_NEAR(abs_det(haar_sample({f, n}, n)), 1.0, 1e-12);
  }
  EXPECT_EQ(abs_det(Matrix(f, 2, 2)), 0.0);
}

TEST_P(PerField, SvdMatchesOracle) {
  const Field f = GetParam();
  for (std::size_t n = 1; n <= 5; ++n) {
    const Matrix x = gaussian_matrix(f, n, 50 + n);
    const SvdResult s = svd(x);
    const auto ref = oracle::singular_values(x);
    ASSERT_EQ(s.singular_values.size(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s.singular_values[i], ref[i], 1e-11);
    EXPECT_TRUE(is_member(s.u, 1e-11));
    EXPECT_TRUE(is_member(s.v, 1e-11));
    EXPECT_LT(distance(s.u * s.d() * conj_transpose(s.v), x), 1e-11);
  }
}

TEST_P(PerField, SvdReconstructsFiftySamples) {
  const Field f = GetParam();
  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 5;
    const Matrix x = gaussian_matrix(f, n, 900 + k);
    const SvdResult s = svd(x);
    EXPECT_LT(distance(s.u * s.d() * conj_transpose(s.v), x), 1e-9 * x.frobenius_norm());
    for (double v : s.singular_values) EXPECT_GE(v, 0.0);
    EXPECT_TRUE(std::is_sorted(s.singular_values.begin(), s.singular_values.end()));
  }
}

TEST_P(PerField, SvdHandlesRepeatedAndZeroValues) {
  const Field f = GetParam();
  const GroupSpec spec{f, 4};
  const double d[] = {0, 2, 2, 5};
  const Matrix x = haar_sample(spec, 1) * Matrix::diagonal(f, d) * haar_sample(spec, 2);
  const SvdResult s = svd(x);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.singular_values[i], d[i], 1e-11);
  EXPECT_LT(distance(s.u * s.d() * conj_transpose(s.v), x), 1e-11);
  const SvdResult z = svd(Matrix(f, 3, 3));
  for (double v : z.singular_values) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(is_member(z.u, 1e-12));
}

INSTANTIATE_TEST_SUITE_P(Fields, PerField, ::testing::ValuesIn(kFields),
                         [](const auto& info) { return to_string(info.param); });

TEST(AbsDet, Multiplicative) {
  for (Field f : kFields) {
    const Matrix a = gaussian_matrix(f, 4, 1), b = gaussian_matrix(f, 4, 2);
    const double p = abs_det(a) * abs_det(b);
    EXPECT_NEAR(abs_det(a * b), p, 1e-11 * p);
  }
}

TEST(HermitianEig, AgreesWithEigen) {
  const Matrix g = gaussian_matrix(Field::Complex, 5, 9);
  const Matrix h = g + conj_transpose(g);
  const EigResult e = hermitian_eig(h, 1e-15);
  Eigen::SelfAdjointEigenSolver<oracle::CMat> ref(oracle::adjoint(h));
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(e.eigenvalues[i], ref.eigenvalues()(i), 1e-12);
  EXPECT_LT(distance(h * e.eigenvectors,
                     e.eigenvectors * Matrix::diagonal(Field::Complex, std::span<const double>(e.eigenvalues))),
            1e-11);
  EXPECT_THROW(hermitian_eig(g, 1e-15), PreconditionError);
  EXPECT_THROW(hermitian_eig(gaussian_matrix(Field::Quaternion, 2, 1), 1e-15), FieldError);
}

TEST(HermitianEig, TwoByTwoMatchesCharacteristicRoots) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const double a = g(rng), d = g(rng);
    const Quat b(g(rng), g(rng));
    Matrix m(Field::Complex, 2, 2);
    m.set(0, 0, Quat(a));
    m.set(1, 1, Quat(d));
    m.set(0, 1, b);
    m.set(1, 0, b.conj());
    // lambda^2 - (a + d) lambda + (ad - |b|^2) = 0
    const double mid = (a + d) / 2, rad = std::sqrt((a - d) * (a - d) / 4 + b.norm2());
    const EigResult e = hermitian_eig(m, 1e-15);
    EXPECT_NEAR(e.eigenvalues[0], mid - rad, 1e-13);
    EXPECT_NEAR(e.eigenvalues[1], mid + rad, 1e-13);
    const Matrix& q = e.eigenvectors;
    EXPECT_LT(distance(conj_transpose(q) * q, Matrix::identity(Field::Complex, 2)), 1e-13);
  }
}

TEST(Membership, RequireMemberThrows) {
  EXPECT_THROW(require_member(gaussian_matrix(Field::Real, 3, 1), "test"), PreconditionError);
  EXPECT_NO_THROW(require_member(Matrix::identity(Field::Quaternion, 3), "test"));
  EXPECT_THROW(tangent_project(gaussian_matrix(Field::Real, 2, 1), gaussian_matrix(Field::Real, 2, 2)),
               PreconditionError);
}
