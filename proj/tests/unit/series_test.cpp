#include <gtest/gtest.h>

#include <random>

#include "hvl/error.hpp"
#include "hvl/series.hpp"

using namespace hvl;

namespace {

ComplexSeries random_series(std::mt19937_64& rng, std::size_t deg, double c0_floor = 0.0) {
  std::normal_distribution<double> normal;
  std::vector<cplx> c(deg + 1);
  for (auto& x : c) x = cplx(normal(rng), normal(rng));
  if (std::abs(c[0]) < c0_floor) c[0] = c0_floor + std::abs(c[0]);
  return ComplexSeries(std::move(c));
}

}  // namespace

TEST(Series, EmptyInputIsZero) {
  const ComplexSeries f(std::vector<cplx>{});
  EXPECT_EQ(f.degree(), 0u);
  EXPECT_TRUE(f.is_zero());
}

TEST(Series, RejectsNonFinite) {
  try {
    ComplexSeries f{1.0, std::numeric_limits<double>::quiet_NaN()};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Series, EvalExamples) {
  EXPECT_NEAR(std::abs(eval(ComplexSeries{1.0, 1.0}, cplx(0, 1)) - cplx(1, 1)), 0.0, 1e-15);
  EXPECT_EQ(eval(ComplexSeries::monomial(3), 0.0), cplx(0.0));
  const ComplexSeries geo(std::vector<cplx>(11, 1.0));
  EXPECT_NEAR(std::abs(eval(geo, 0.5) - 2.0 * (1.0 - std::pow(2.0, -11))), 0.0, 1e-15);
}

TEST(Series, EvalOutsideDiskIsDomainError) {
  try {
    eval(ComplexSeries{1.0}, 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(Series, DerivativeExamples) {
  EXPECT_EQ(max_coeff_diff(derivative(ComplexSeries::monomial(2)), ComplexSeries{0.0, 2.0}), 0.0);
  EXPECT_TRUE(derivative(ComplexSeries::constant(cplx(3, 1))).is_zero());
  const cplx ab = std::conj(cplx(0.5, 0.0));
  const ComplexSeries f{1.0, 2.0 * ab, 3.0 * ab * ab, 4.0 * ab * ab * ab};
  const ComplexSeries d = derivative(f);
  EXPECT_NEAR(std::abs(d[0] - 2.0 * ab), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d[1] - 6.0 * ab * ab), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d[2] - 12.0 * ab * ab * ab), 0.0, 1e-15);
}

TEST(Series, AntiderivativeExamples) {
  EXPECT_EQ(max_coeff_diff(antiderivative(ComplexSeries{1.0}), ComplexSeries::monomial(1)), 0.0);
  EXPECT_EQ(max_coeff_diff(antiderivative(ComplexSeries{0.0, 2.0}), ComplexSeries::monomial(2)),
            0.0);
}

TEST(Series, DerivativeUndoesAntiderivative) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const ComplexSeries f = random_series(rng, 64);
    EXPECT_LE(max_coeff_diff(derivative(antiderivative(f)), f), 1e-13);
  }
}

TEST(Series, ProductExamples) {
  EXPECT_EQ(max_coeff_diff(product({1.0, 1.0}, {1.0, -1.0}, 2), ComplexSeries{1.0, 0.0, -1.0}),
            0.0);
  std::mt19937_64 rng(5);
  const ComplexSeries f = random_series(rng, 10);
  EXPECT_EQ(max_coeff_diff(product(f, ComplexSeries{1.0}, 10), f), 0.0);
  ComplexSeries cube{1.0};
  for (int i = 0; i < 3; ++i) cube = product(cube, {1.0, 1.0}, 3);
  EXPECT_EQ(max_coeff_diff(cube, ComplexSeries{1.0, 3.0, 3.0, 1.0}), 0.0);
}

TEST(Series, ProductTruncates) {
  const ComplexSeries p = product({1.0, 1.0}, {1.0, 1.0}, 1);
  EXPECT_EQ(p.degree(), 1u);
  EXPECT_EQ(p[1], cplx(2.0));
}

TEST(Series, ReciprocalExamples) {
  const ComplexSeries r = reciprocal({1.0, -1.0}, 5);
  EXPECT_EQ(max_coeff_diff(r, ComplexSeries(std::vector<cplx>(6, 1.0))), 0.0);
  EXPECT_EQ(reciprocal(ComplexSeries{2.0}, 0)[0], cplx(0.5));
}

TEST(Series, ReciprocalRoundTrip) {
  // f zero-free on the closed disk (|f(0)| >= 0.5 dominating the tail), so 1/f has
  // bounded coefficients and the absolute check is meaningful.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 30; ++t) {
    std::vector<cplx> c(33);
    c[0] = std::polar(0.5 + std::abs(normal(rng)), normal(rng));
    for (std::size_t k = 1; k < c.size(); ++k) {
      c[k] = 0.25 * cplx(normal(rng), normal(rng)) / double((k + 1) * (k + 1));
    }
    const ComplexSeries f(c);
    EXPECT_LE(max_coeff_diff(product(f, reciprocal(f, 32), 32), ComplexSeries{1.0}, 32), 1e-12);
  }
}

TEST(Series, ReciprocalRoundTripRelative) {
  // Generic f has zeros in the disk and 1/f grows geometrically; the residual
  // stays at rounding relative to the size of the reciprocal's coefficients.
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const ComplexSeries f = random_series(rng, 32, 0.5);
    const ComplexSeries r = reciprocal(f, 32);
    double scale = 0.0;
    for (cplx x : r.coeffs()) scale = std::max(scale, std::abs(x));
    double fs = 0.0;
    for (cplx x : f.coeffs()) fs += std::abs(x);
    EXPECT_LE(max_coeff_diff(product(f, r, 32), ComplexSeries{1.0}, 32), 1e-13 * scale * fs);
  }
}

TEST(Series, ReciprocalSingularAtOrigin) {
  try {
    reciprocal({1e-14, 1.0}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularAtOrigin);
  }
}

TEST(Series, AccessPastDegreeIsZero) {
  const ComplexSeries f{1.0, 2.0};
  EXPECT_EQ(f[7], cplx(0.0));
  EXPECT_EQ(f.truncated(0).degree(), 0u);
}
