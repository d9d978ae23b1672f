#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hvl/simd.hpp"

using namespace hvl::simd;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(normal(rng), normal(rng));
  return v;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    vec_ = avx2_kernels();
    if (!vec_) GTEST_SKIP() << "no AVX2 kernels on this build/CPU";
  }
  const KernelTable& ref_ = scalar_kernels();
  const KernelTable* vec_ = nullptr;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_P(KernelEquivalence, MaxAbs2) {
  std::mt19937_64 rng(GetParam());
  const auto v = random_vec(rng, GetParam());
  EXPECT_LE(rel(vec_->max_abs2(v.data(), v.size()), ref_.max_abs2(v.data(), v.size())), 1e-15);
}

TEST_P(KernelEquivalence, SumAbsPow) {
  std::mt19937_64 rng(GetParam() + 1);
  const auto v = random_vec(rng, GetParam());
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
    const double a = vec_->sum_abs_pow(v.data(), v.size(), p, 0.7);
    const double b = ref_.sum_abs_pow(v.data(), v.size(), p, 0.7);
    EXPECT_LE(rel(a, b), 1e-13) << "p = " << p;
  }
}

TEST_P(KernelEquivalence, WeightedSumAbsPow) {
  std::mt19937_64 rng(GetParam() + 2);
  const auto v = random_vec(rng, GetParam());
  std::uniform_real_distribution<double> unif;
  std::vector<double> w(v.size());
  for (auto& x : w) x = unif(rng);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const double a = vec_->weighted_sum_abs_pow(v.data(), w.data(), v.size(), p, 1.3);
    const double b = ref_.weighted_sum_abs_pow(v.data(), w.data(), v.size(), p, 1.3);
    EXPECT_LE(rel(a, b), 1e-13) << "p = " << p;
  }
}

TEST_P(KernelEquivalence, Caxpy) {
  std::mt19937_64 rng(GetParam() + 3);
  const auto x = random_vec(rng, GetParam());
  auto y1 = random_vec(rng, GetParam());
  auto y2 = y1;
  const cplx alpha(0.3, -1.7);
  vec_->caxpy(alpha, x.data(), y1.data(), x.size());
  ref_.caxpy(alpha, x.data(), y2.data(), x.size());
  for (std::size_t j = 0; j < x.size(); ++j) EXPECT_LE(std::abs(y1[j] - y2[j]), 1e-14);
}

TEST_P(KernelEquivalence, HornerMany) {
  std::mt19937_64 rng(GetParam() + 4);
  const auto c = random_vec(rng, 37);
  std::vector<cplx> z(GetParam());
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (auto& x : z) x = std::polar(0.95, ang(rng));
  std::vector<cplx> o1(z.size()), o2(z.size());
  vec_->horner_many(c.data(), c.size(), z.data(), o1.data(), z.size());
  ref_.horner_many(c.data(), c.size(), z.data(), o2.data(), z.size());
  for (std::size_t j = 0; j < z.size(); ++j) EXPECT_LE(std::abs(o1[j] - o2[j]), 1e-12);
}

// Lengths straddle the vector width so remainder loops run.
INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence,
                         ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 9, 31, 64, 1001));

TEST(Kernels, ScalarReference) {
  const auto& k = scalar_kernels();
  const std::vector<cplx> v{cplx(3, 4), cplx(0, 1)};
  EXPECT_DOUBLE_EQ(k.max_abs2(v.data(), 2), 25.0);
  EXPECT_DOUBLE_EQ(k.sum_abs_pow(v.data(), 2, 2.0, 1.0), 26.0);
  const std::vector<cplx> c{1.0, 2.0, 3.0};
  const cplx z = 2.0;
  cplx out;
  k.horner_many(c.data(), 3, &z, &out, 1);
  EXPECT_EQ(out, cplx(17.0));
}

TEST(Kernels, ActiveTableIsNamed) { EXPECT_FALSE(kernels().name.empty()); }
