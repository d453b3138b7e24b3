/*
 * Copyright 2026 The asplund-morph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "asplund/distance_map.hpp"
#include "test_support.hpp"

namespace asplund {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Frozen from an independent bisection on the defining inequalities.
constexpr double kPairDistance = 1.5725335836855188;
constexpr double kRowLambda = 0.17982103758481222;
constexpr double kRowMu = 0.05748549466076021;
constexpr double kRowDistance = 1.1404294714608745;

const Image kRow(3, 1, {10.0, 20.0, 30.0});
const StructuringFunction kFlatRowProbe = StructuringFunction::flat(FlatDomain::row(-1, 3), 128.0);

TEST(LogRatioTest, ExtendedRealConventions) {
  EXPECT_EQ(log_ratio(0.0, 0.0), 0.0);
  EXPECT_EQ(log_ratio(kInf, kInf), 0.0);
  EXPECT_EQ(log_ratio(2.0, 0.0), kInf);
  EXPECT_EQ(log_ratio(kInf, 3.0), kInf);
  EXPECT_DOUBLE_EQ(log_ratio(std::exp(1.0), 1.0), 1.0);
}

TEST(DiscardedPerSideTest, FloorsAndGuards) {
  EXPECT_EQ(discarded_per_side(0.0, 9), 0u);
  EXPECT_EQ(discarded_per_side(0.3, 10), 3u);
  EXPECT_EQ(discarded_per_side(0.3, 9), 2u);
  EXPECT_THROW(discarded_per_side(0.5, 10), ParameterError);
  EXPECT_THROW(discarded_per_side(-0.1, 10), ParameterError);
  EXPECT_EQ(discarded_per_side(0.49, 2), 0u);
  EXPECT_EQ(discarded_per_side(0.49, 3), 1u);
  EXPECT_EQ(discarded_per_side(0.45, 21), 9u);
}

TEST(AsplundDistanceTest, WorkedValues) {
  const Image f(2, 1, {64.0, 192.0});
  const Image g(2, 1, {128.0, 128.0});
  EXPECT_NEAR(asplund_distance(f, g), kPairDistance, 1e-9);
  EXPECT_EQ(asplund_distance(f, f), 0.0);
  for (double k : {0.3, 1.0, 2.7}) {
    EXPECT_NEAR(asplund_distance(lip_scalar_mul(k, f), f), 0.0, 1e-9);
  }
}

TEST(AsplundDistanceTest, ContractViolations) {
  EXPECT_THROW(asplund_distance(std::span<const double>{}, std::span<const double>{}), ParameterError);
  EXPECT_THROW(asplund_distance(Image(2, 1, 5.0), Image(1, 1, 5.0)), ShapeError);
  EXPECT_THROW(asplund_distance(Image(1, 1, 5.0), Image(1, 1, 0.0)), DomainError);
  EXPECT_THROW(asplund_distance(Image(1, 1, 5.0), Image(1, 1, 256.0)), DomainError);
}

TEST(AsplundDistanceTest, ZeroSampleAndSaturatedSample) {
  // f = 0 somewhere drives the lower bound to 0; f = M drives the upper to +inf.
  EXPECT_EQ(asplund_distance(Image(2, 1, {0.0, 10.0}), Image(2, 1, {5.0, 5.0})), kInf);
  EXPECT_EQ(asplund_distance(Image(2, 1, {256.0, 10.0}), Image(2, 1, {5.0, 5.0})), kInf);
  EXPECT_EQ(asplund_distance(Image(2, 1, {0.0, 0.0}), Image(2, 1, {5.0, 9.0})), 0.0);
}

TEST(BoundMapTest, WorkedRow) {
  const BoundMap upper = lambda_map(kRow, kFlatRowProbe);
  const BoundMap lower = mu_map(kRow, kFlatRowProbe);
  EXPECT_EQ(upper.kind, BoundKind::kUpper);
  EXPECT_EQ(lower.kind, BoundKind::kLower);
  EXPECT_EQ(upper.field.valid, (std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_NEAR(upper.field.values.at(1, 0), kRowLambda, 1e-12);
  EXPECT_NEAR(lower.field.values.at(1, 0), kRowMu, 1e-12);
}

TEST(BoundMapTest, ConstantImageAndConstantProbe) {
  const Image f = Image::constant(6, 5, 90.0);
  const StructuringFunction b = StructuringFunction::flat(FlatDomain::rectangle(-1, -1, 3, 3), 40.0);
  const double expected = tilde(90.0, 256.0) / tilde(40.0, 256.0);
  const BoundMap upper = lambda_map(f, b);
  const BoundMap lower = mu_map(f, b);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!upper.field.valid[i]) continue;
    EXPECT_DOUBLE_EQ(upper.field.values[i], expected);
    EXPECT_DOUBLE_EQ(lower.field.values[i], expected);
  }
}

TEST(BoundMapTest, LatticeExtremes) {
  std::mt19937_64 rng(12);
  const StructuringFunction b = testing::random_probe(rng, testing::random_domain(rng, 2));
  const BoundMap zero = lambda_map(Image::constant(8, 8, 0.0), b);
  const BoundMap full = mu_map(Image::constant(8, 8, 256.0), b);
  ASSERT_GT(zero.field.valid_count(), 0u);
  for (std::size_t i = 0; i < zero.field.valid.size(); ++i) {
    if (!zero.field.valid[i]) continue;
    EXPECT_EQ(zero.field.values[i], 0.0);
    EXPECT_EQ(full.field.values[i], kInf);
  }
}

TEST(BoundMapTest, ScaleMismatchIsShapeError) {
  const StructuringFunction b = StructuringFunction::flat(FlatDomain({{0, 0}}), 10.0, GreyScale(512.0));
  EXPECT_THROW(lambda_map(Image(2, 2, 3.0), b), ShapeError);
}

TEST(DistanceMapTest, WorkedRowAllPaths) {
  EXPECT_NEAR(distance_map_general(kRow, kFlatRowProbe).at(1, 0), kRowDistance, 1e-12);
  EXPECT_NEAR(distance_map_flat(kRow, 128.0, FlatDomain::row(-1, 3)).at(1, 0), kRowDistance, 1e-12);
  EXPECT_NEAR(distance_map_tolerance(kRow, kFlatRowProbe, 0.0).at(1, 0), kRowDistance, 1e-12);
}

TEST(DistanceMapTest, PlantedHomotheticIsZero) {
  std::mt19937_64 rng(31);
  const StructuringFunction b = testing::random_probe(rng, testing::random_domain(rng, 2, 0.6));
  Grid g = testing::random_image(rng, 12, 12).grid();
  const Pixel anchor{5, 6};
  const auto offsets = b.offsets();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    g.at(anchor.x + offsets[i].dx, anchor.y + offsets[i].dy) = lip_scalar_mul(1.7, b.values()[i], 256.0);
  }
  const DistanceMap map = distance_map_general(Image(g), b);
  ASSERT_TRUE(map.is_valid(anchor.x, anchor.y));
  EXPECT_NEAR(map.at(anchor.x, anchor.y), 0.0, 1e-12);
  EXPECT_NEAR(lambda_map(Image(g), b).field.values.at(anchor.x, anchor.y), 1.7, 1e-12);
}

TEST(DistanceMapTest, FlatLevelMustBeInsideRange) {
  EXPECT_THROW(distance_map_flat(kRow, 0.0, FlatDomain::row(-1, 3)), DomainError);
  EXPECT_THROW(distance_map_flat(kRow, 256.0, FlatDomain::row(-1, 3)), DomainError);
  EXPECT_THROW(distance_map_tolerance_flat(kRow, 300.0, FlatDomain::row(-1, 3), 0.0), DomainError);
}

TEST(DistanceMapTest, ProbeLargerThanImageGivesEmptyValidRegion) {
  const StructuringFunction b = StructuringFunction::flat(FlatDomain::row(0, 5), 50.0);
  EXPECT_EQ(distance_map_general(kRow, b).field.valid_count(), 0u);
  EXPECT_EQ(distance_map_tolerance(kRow, b, 0.2).field.valid_count(), 0u);
}

TEST(DistanceMapTest, StrictPositivityInvalidatesZeroWindows) {
  const Image f(5, 1, {0.0, 20.0, 30.0, 40.0, 50.0});
  const StructuringFunction b = StructuringFunction::flat(FlatDomain::row(-1, 3), 100.0);
  const DistanceMap loose = distance_map_general(f, b);
  const DistanceMap strict = distance_map_general(f, b, {.strict_positivity = true});
  EXPECT_TRUE(loose.is_valid(1, 0));
  EXPECT_EQ(loose.at(1, 0), kInf);
  EXPECT_FALSE(strict.is_valid(1, 0));
  EXPECT_TRUE(strict.is_valid(2, 0));
  EXPECT_FALSE(distance_map_flat(f, 100.0, b.domain(), {.strict_positivity = true}).is_valid(1, 0));
  EXPECT_FALSE(distance_map_tolerance_sorted(f, b, 0.2, {.strict_positivity = true}).is_valid(1, 0));
}

TEST(DistanceMapTest, ToleranceOrderStatistics) {
  // n = 10, p = 0.3 keeps the 4th and 7th smallest ratios.
  std::vector<Offset> offsets;
  for (int i = 0; i < 10; ++i) offsets.push_back({i, 0});
  const StructuringFunction b = StructuringFunction::flat(FlatDomain(offsets), 64.0);
  const Image f(10, 1, {90.0, 10.0, 70.0, 30.0, 100.0, 50.0, 20.0, 80.0, 40.0, 60.0});
  std::vector<double> ratios;
  for (double v : f.values()) ratios.push_back(std::log(1.0 - v / 256.0) / std::log(1.0 - 64.0 / 256.0));
  std::sort(ratios.begin(), ratios.end());
  const double expected = std::log(ratios[6] / ratios[3]);
  EXPECT_NEAR(distance_map_tolerance_sorted(f, b, 0.3).at(0, 0), expected, 1e-12);
  EXPECT_NEAR(distance_map_tolerance(f, b, 0.3).at(0, 0), expected, 1e-12);
  EXPECT_THROW(distance_map_tolerance(f, b, 0.5), ParameterError);
}

TEST(DistanceMapTest, ThreadedEvaluationIsBitIdentical) {
  std::mt19937_64 rng(41);
  const Image f = testing::random_image(rng, 40, 33);
  const StructuringFunction b = testing::random_probe(rng, testing::random_domain(rng, 3));
  for (unsigned threads : {2u, 3u, 7u, 0u}) {
    EXPECT_TRUE(testing::identical(distance_map_general(f, b).field,
                                   distance_map_general(f, b, {.threads = threads}).field));
    EXPECT_TRUE(testing::identical(distance_map_tolerance(f, b, 0.2).field,
                                   distance_map_tolerance(f, b, 0.2, {.threads = threads}).field));
  }
}

TEST(OracleTest, HomotheticWindows) {
  std::mt19937_64 rng(2);
  const StructuringFunction b = testing::random_probe(rng, FlatDomain::rectangle(0, 0, 3, 3));
  Grid g(3, 3);
  for (std::size_t i = 0; i < b.size(); ++i) g.at(b.offsets()[i].dx, b.offsets()[i].dy) = b.values()[i];
  Bounds one = oracle_bounds(Image(g), b, {0, 0});
  EXPECT_NEAR(one.lambda, 1.0, 1e-8);
  EXPECT_NEAR(one.mu, 1.0, 1e-8);
  const Bounds two = oracle_bounds(lip_scalar_mul(2.0, Image(g)), b, {0, 0});
  EXPECT_NEAR(two.lambda, 2.0, 1e-8);
  EXPECT_NEAR(two.mu, 2.0, 1e-8);
}

TEST(OracleTest, Failures) {
  const StructuringFunction b = StructuringFunction::flat(FlatDomain::row(0, 2), 30.0);
  EXPECT_THROW(oracle_bounds(Image(2, 1, {256.0, 3.0}), b, {0, 0}), OracleFailure);
  EXPECT_THROW(oracle_bounds(Image(2, 1, 3.0), b, {1, 0}), ParameterError);
  EXPECT_THROW(oracle_bounds(Image(2, 1, 3.0), b, {0, 0}, 0.0), ParameterError);
  const Bounds zero = oracle_bounds(Image(2, 1, 0.0), b, {0, 0});
  EXPECT_NEAR(zero.lambda, 0.0, 1e-9);
  EXPECT_NEAR(zero.mu, 0.0, 1e-9);
}

TEST(OracleTest, MatchesClosedFormsOnRandomCases) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const Image f = testing::random_image(rng, 8, 8);
    const StructuringFunction b = testing::random_probe(rng, FlatDomain::rectangle(-1, -1, 3, 3));
    const BoundMap upper = lambda_map(f, b);
    const BoundMap lower = mu_map(f, b);
    for (int y = 1; y < 7; ++y) {
      for (int x = 1; x < 7; ++x) {
        const Bounds o = oracle_bounds(f, b, {x, y});
        EXPECT_NEAR(upper.field.values.at(x, y), o.lambda, 1e-6);
        EXPECT_NEAR(lower.field.values.at(x, y), o.mu, 1e-6);
      }
    }
  }
}

TEST(OracleTest, TestBisectionAgreesWithLibraryOracle) {
  const Image f(3, 1, {10.0, 20.0, 30.0});
  const Bounds lib = oracle_bounds(f, kFlatRowProbe, {1, 0});
  const auto ref = testing::bisect_bounds({10.0, 20.0, 30.0}, {128.0, 128.0, 128.0}, 256.0);
  EXPECT_NEAR(lib.lambda, ref.lambda, 1e-9);
  EXPECT_NEAR(lib.mu, ref.mu, 1e-9);
  EXPECT_NEAR(lib.lambda, kRowLambda, 1e-9);
  EXPECT_NEAR(lib.mu, kRowMu, 1e-9);
}

// Metric axioms on equivalence classes, checked on random strictly positive images.
TEST(AsplundMetricPropertyTest, Axioms) {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const Image f = testing::random_image(rng, 8, 8);
    const Image g = testing::random_image(rng, 8, 8);
    const Image h = testing::random_image(rng, 8, 8);
    const double fg = asplund_distance(f, g);
    const double gf = asplund_distance(g, f);
    EXPECT_GT(fg, 0.0);
    EXPECT_NEAR(fg, gf, 1e-9);
    EXPECT_LE(asplund_distance(f, h), fg + asplund_distance(g, h) + 1e-9);
    for (double k : {0.3, 1.0, 2.7}) {
      EXPECT_NEAR(asplund_distance(f, lip_scalar_mul(k, f)), 0.0, 1e-9);
    }
  }
}

TEST(BoundMapPropertyTest, DilationErosionAndMonotonicity) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const Image f = testing::random_image(rng, 9, 9, 0.0, 256.0);
    const Image g = testing::random_image(rng, 9, 9, 0.0, 256.0);
    const StructuringFunction b = testing::random_probe(rng, testing::random_domain(rng, 2));
    const BoundMap lam_max = lambda_map(pointwise_max(f, g), b);
    const BoundMap lam_f = lambda_map(f, b), lam_g = lambda_map(g, b);
    const BoundMap mu_min = mu_map(pointwise_min(f, g), b);
    const BoundMap mu_f = mu_map(f, b), mu_g = mu_map(g, b);
    const BoundMap lam_upper = lambda_map(pointwise_max(f, g), b);
    const BoundMap mu_upper = mu_map(pointwise_max(f, g), b);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!lam_f.field.valid[i]) continue;
      EXPECT_EQ(lam_max.field.values[i], std::max(lam_f.field.values[i], lam_g.field.values[i]));
      EXPECT_EQ(mu_min.field.values[i], std::min(mu_f.field.values[i], mu_g.field.values[i]));
      EXPECT_LE(lam_f.field.values[i], lam_upper.field.values[i]);
      EXPECT_LE(mu_f.field.values[i], mu_upper.field.values[i]);
      EXPECT_GE(lam_f.field.values[i], mu_f.field.values[i]);
    }
  }
}

TEST(DistanceMapPropertyTest, ScalingInvarianceAndPathAgreement) {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    const Image f = testing::random_image(rng, 16, 16);
    const StructuringFunction b = testing::random_probe(rng, testing::random_domain(rng, 2));
    const DistanceMap base = distance_map_general(f, b);
    for (double k : {0.3, 0.5, 2.0, 3.0}) {
      EXPECT_LT(testing::max_abs_diff(distance_map_general(lip_scalar_mul(k, f), b).field, base.field), 1e-6);
    }
    for (std::size_t i = 0; i < base.field.valid.size(); ++i) {
      if (base.field.valid[i]) EXPECT_GE(base.field.values[i], 0.0);
    }

    // Flat path equals general path with the constant probe and ignores b0.
    const DistanceMap flat64 = distance_map_flat(f, 64.0, b.domain());
    for (double b0 : {64.0, 128.0, 200.0}) {
      const DistanceMap general = distance_map_general(f, StructuringFunction::flat(b.domain(), b0));
      EXPECT_LT(testing::max_abs_diff(distance_map_flat(f, b0, b.domain()).field, general.field), 1e-12);
      EXPECT_TRUE(testing::identical(distance_map_flat(f, b0, b.domain()).field, flat64.field));
    }

    // Tolerance consistency.
    EXPECT_TRUE(testing::identical(distance_map_tolerance(f, b, 0.0).field, base.field));
    const DistanceMap relaxed = distance_map_tolerance(f, b, 0.3);
    for (std::size_t i = 0; i < base.field.valid.size(); ++i) {
      if (base.field.valid[i]) EXPECT_LE(relaxed.field.values[i], base.field.values[i]);
    }
    const StructuringFunction flat = StructuringFunction::flat(b.domain(), 90.0);
    for (double p : {0.0, 0.1, 0.3, 0.45}) {
      if (2 * static_cast<std::size_t>(std::floor(p * flat.size())) >= flat.size()) continue;
      EXPECT_TRUE(testing::identical(distance_map_tolerance_flat(f, 90.0, b.domain(), p).field,
                                     distance_map_tolerance_sorted(f, flat, p).field));
    }
  }
}

}  // namespace
}  // namespace asplund
