#include "zopt/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

TEST(StreamRngTest, SameSeedAndStreamReproduce) {
  zopt::StreamRng a(123, 7), b(123, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(StreamRngTest, DifferentStreamsDiffer) {
  zopt::StreamRng a(123, 7), b(123, 8), c(124, 7);
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    same_b += x == b();
    same_c += x == c();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(StreamRngTest, UniformIsOpenUnitInterval) {
  zopt::StreamRng rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(StreamRngTest, NormalMomentsMatchStandardGaussian) {
  zopt::StreamRng rng(2024, 3);
  const int count = 200000;
  double sum = 0, sum2 = 0, sum4 = 0;
  for (int i = 0; i < count; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  const double mean = sum / count;
  const double var = sum2 / count - mean * mean;
  // SE of the mean is 1/sqrt(count) ~ 0.0022; of the variance sqrt(2/count) ~ 0.0032.
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(count));
  EXPECT_NEAR(var, 1.0, 5.0 * std::sqrt(2.0 / count));
  EXPECT_NEAR(sum4 / count, 3.0, 0.1);
}

}  // namespace
