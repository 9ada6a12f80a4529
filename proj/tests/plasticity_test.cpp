#include "hebbnet/plasticity.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

using namespace hebbnet;

namespace {

PlasticityParams params(double eta_ltp = 0.001, double eta_ltd = 0.0001, double threshold = 0.25) {
  PlasticityParams p;
  p.eta_ltp = eta_ltp;
  p.eta_ltd = eta_ltd;
  p.threshold = threshold;
  return p;
}

}  // namespace

TEST(DeltaCompressed, PotentiatesAtOrAboveThreshold) {
  EXPECT_DOUBLE_EQ(delta_w_compressed(0.8, 0.5, 0.3, params()), 0.0004);
}

TEST(DeltaCompressed, DepressesBelowThreshold) {
  EXPECT_DOUBLE_EQ(delta_w_compressed(0.4, 0.5, 0.3, params()), -0.0002);
}

TEST(DeltaCompressed, CreatesZeroWeightsAtThreshold) {
  EXPECT_EQ(delta_w_compressed(0.8, 0.5, 0.0, params()), 0.50);
  EXPECT_EQ(delta_w_compressed(0.5, 0.5, 0.0, params()), 0.50);  // x*y == T
  EXPECT_EQ(delta_w_compressed(0.4, 0.5, 0.0, params()), 0.0);
}

TEST(DeltaCompressed, LiteralCreationIgnoresThreshold) {
  PlasticityParams p = params();
  p.creation_requires_threshold = false;
  p.creation_value = 0.3;
  EXPECT_EQ(delta_w_compressed(0.0, 0.0, 0.0, p), 0.3);
  EXPECT_EQ(delta_w_compressed(0.1, 0.2, 0.0, p), 0.3);
}

TEST(DeltaCompressed, DepressionUsesLtpRate) {
  // The compressed rule uses eta_ltp on both sides; eta_ltd must not matter.
  const double a = delta_w_compressed(0.4, 0.5, 0.3, params(0.001, 0.0001));
  const double b = delta_w_compressed(0.4, 0.5, 0.3, params(0.001, 0.5));
  EXPECT_EQ(a, b);
}

TEST(DeltaCompressed, RejectsOutOfRangeInputs) {
  EXPECT_THROW(delta_w_compressed(1.1, 0.5, 0.3, params()), std::invalid_argument);
  EXPECT_THROW(delta_w_compressed(0.5, -0.1, 0.3, params()), std::invalid_argument);
  EXPECT_THROW(delta_w_compressed(0.5, 0.5, 1.5, params()), std::invalid_argument);
  EXPECT_THROW(delta_w_compressed(std::nan(""), 0.5, 0.3, params()), std::invalid_argument);
}

TEST(DeltaExtended, PublishedBranches) {
  PlasticityParams p = params();
  p.eta_ltp2 = 0.0001;
  EXPECT_DOUBLE_EQ(delta_w_extended(0.6, 0.0, 0.2, p), -0.00006);
  EXPECT_DOUBLE_EQ(delta_w_extended(0.0, 0.7, -0.5, p), -0.00007);
  EXPECT_EQ(delta_w_extended(0.0, 0.0, 0.3, p), 0.0);
}

TEST(DeltaExtended, RemainingBranches) {
  PlasticityParams p = params(0.01, 0.001);
  p.eta_ltp2 = 0.002;
  EXPECT_DOUBLE_EQ(delta_w_extended(0.5, 0.4, 0.3, p), 0.01 * 0.5 * 0.4);
  EXPECT_DOUBLE_EQ(delta_w_extended(0.5, 0.4, -0.3, p), -0.01 * 0.5 * 0.4);
  EXPECT_DOUBLE_EQ(delta_w_extended(0.5, 0.0, -0.3, p), 0.001 * 0.5);
  EXPECT_DOUBLE_EQ(delta_w_extended(0.0, 0.4, 0.3, p), 0.002 * 0.4);
  EXPECT_EQ(delta_w_extended(0.5, 0.6, 0.0, p), 0.5);
  EXPECT_EQ(delta_w_extended(0.1, 0.6, 0.0, p), 0.0);
}

TEST(DeltaExtended, Ltp2DefaultsToLtdRate) {
  PlasticityParams p = params(0.01, 0.003);
  EXPECT_DOUBLE_EQ(delta_w_extended(0.0, 0.5, 0.4, p), 0.003 * 0.5);
}

TEST(DeltaPlain, Product) {
  EXPECT_DOUBLE_EQ(delta_w_plain(1.0, 1.0, 0.1), 0.1);
  EXPECT_EQ(delta_w_plain(0.0, 0.9, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(delta_w_plain(0.5, 0.5, 0.01), 0.0025);
  EXPECT_THROW(delta_w_plain(2.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(delta_w_plain(0.5, 0.5, 0.0), std::invalid_argument);
}

TEST(DeltaDispatch, FollowsRule) {
  PlasticityParams p = params();
  EXPECT_EQ(delta_w(0.8, 0.5, 0.3, p), delta_w_compressed(0.8, 0.5, 0.3, p));
  p.rule = Rule::Extended;
  EXPECT_EQ(delta_w(0.6, 0.0, 0.2, p), delta_w_extended(0.6, 0.0, 0.2, p));
  p.rule = Rule::PlainHebb;
  EXPECT_EQ(delta_w(0.5, 0.5, 0.2, p), delta_w_plain(0.5, 0.5, p.eta_ltp));
}

TEST(BoundWeight, SignCrossingResetsToZero) {
  EXPECT_EQ(bound_weight(0.02, -0.05, params()), 0.0);
  EXPECT_EQ(bound_weight(-0.02, 0.05, params()), 0.0);
}

TEST(BoundWeight, HardResetOnSaturation) {
  PlasticityParams p = params();
  p.bounding = HardReset{0.90};
  EXPECT_EQ(bound_weight(0.95, 0.20, p), 0.90);
  EXPECT_EQ(bound_weight(-0.95, -0.20, p), -0.90);
}

TEST(BoundWeight, SquashOnSaturation) {
  PlasticityParams p = params();
  p.bounding = Squash{0.5};
  EXPECT_DOUBLE_EQ(bound_weight(0.95, 0.20, p), std::tanh(0.5 * (0.95 + 0.20)));
  EXPECT_DOUBLE_EQ(bound_weight(-0.95, -0.20, p), -std::tanh(0.5 * (0.95 + 0.20)));
  // Inside the range the squash is not applied.
  EXPECT_EQ(bound_weight(0.5, 0.1, p), 0.5 + 0.1);
}

TEST(BoundWeight, InRangeAddition) {
  EXPECT_DOUBLE_EQ(bound_weight(0.5, 0.0004, params()), 0.5004);
  EXPECT_EQ(bound_weight(0.0, 0.5, params()), 0.5);
  EXPECT_THROW(bound_weight(1.5, 0.0, params()), std::invalid_argument);
}

TEST(PlasticityParams, Validation) {
  EXPECT_NO_THROW(params().validate());
  PlasticityParams p = params();
  p.eta_ltp = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.threshold = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.bounding = HardReset{1.0};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.bounding = Squash{0.0};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.creation_value = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.eta_ltp2 = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(PlasticityProperties, BoundedAndSignStable) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_real_distribution<double> delta(-2.5, 2.5);
  for (int mode = 0; mode < 2; ++mode) {
    PlasticityParams p = params();
    if (mode == 0) {
      p.bounding = HardReset{0.9};
    } else {
      p.bounding = Squash{0.5};
    }
    for (int n = 0; n < 50000; ++n) {
      const double w_old = n % 50 == 0 ? 0.0 : weight(rng);
      const double w = bound_weight(w_old, delta(rng), p);
      ASSERT_GE(w, -1.0);
      ASSERT_LE(w, 1.0);
      if (w != 0.0 && w_old != 0.0) ASSERT_EQ(std::signbit(w), std::signbit(w_old));
    }
  }
}

TEST(PlasticityProperties, CompressedSignAndCreationAgreement) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  const PlasticityParams p = params();
  for (int n = 0; n < 50000; ++n) {
    const double x = unit(rng);
    const double y = unit(rng);
    ASSERT_EQ(delta_w_compressed(x, y, 0.0, p), delta_w_extended(x, y, 0.0, p));
    const double w = std::abs(weight(rng)) + 1e-9;
    if (x * y >= p.threshold) {
      ASSERT_GT(delta_w_compressed(x, y, w, p), 0.0);
    } else if (x * y > 0.0) {
      ASSERT_LT(delta_w_compressed(x, y, w, p), 0.0);
      ASSERT_LT(delta_w_compressed(x, y, -w, p), 0.0);
    }
    ASSERT_EQ(delta_w_extended(0.0, 0.0, weight(rng), p), 0.0);
  }
}

// Independent oracle: the extended rule written as a table of
// (condition, value) rows exactly as the rule is stated, followed by the
// fallback row. On a 0.05 grid exactly one row may fire.
TEST(PlasticityProperties, ExtendedBranchTotalityOnGrid) {
  PlasticityParams p = params(0.003, 0.0007);
  p.eta_ltp2 = 0.0011;
  const double ltp = p.eta_ltp;
  const double ltd = p.eta_ltd;
  const double ltp2 = *p.eta_ltp2;
  const double T = p.threshold;

  struct Branch {
    std::function<bool(double, double, double)> when;
    std::function<double(double, double)> value;
  };
  const std::vector<Branch> table = {
      {[](double x, double y, double w) { return x > 0 && y > 0 && w > 0; },
       [&](double x, double y) { return +ltp * x * y; }},
      {[](double x, double y, double w) { return x > 0 && y > 0 && w < 0; },
       [&](double x, double y) { return -ltp * x * y; }},
      {[](double x, double y, double w) { return x > 0 && y == 0 && w > 0; },
       [&](double x, double) { return -ltd * x; }},
      {[](double x, double y, double w) { return x > 0 && y == 0 && w < 0; },
       [&](double x, double) { return +ltd * x; }},
      {[](double x, double y, double w) { return x == 0 && y > 0 && w > 0; },
       [&](double, double y) { return +ltp2 * y; }},
      {[](double x, double y, double w) { return x == 0 && y > 0 && w < 0; },
       [&](double, double y) { return -ltp2 * y; }},
      {[&](double x, double y, double w) { return x * y >= T && w == 0; },
       [&](double, double) { return p.creation_value; }},
  };

  std::size_t checked = 0;
  std::vector<std::size_t> fired_count(table.size() + 1, 0);
  for (int xi = 0; xi <= 20; ++xi) {
    for (int yi = 0; yi <= 20; ++yi) {
      for (int wi = 0; wi <= 40; ++wi) {
        const double x = xi / 20.0;
        const double y = yi / 20.0;
        const double w = (wi - 20) / 20.0;
        std::size_t fired = 0;
        double expected = 0.0;  // "otherwise"
        std::size_t which = table.size();
        for (std::size_t b = 0; b < table.size(); ++b) {
          if (table[b].when(x, y, w)) {
            ++fired;
            expected = table[b].value(x, y);
            which = b;
          }
        }
        ASSERT_LE(fired, 1u) << "x=" << x << " y=" << y << " w=" << w;
        ++fired_count[which];
        ASSERT_EQ(delta_w_extended(x, y, w, p), expected) << "x=" << x << " y=" << y << " w=" << w;
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 21u * 21u * 41u);
  for (std::size_t b = 0; b < fired_count.size(); ++b) EXPECT_GT(fired_count[b], 0u) << "branch " << b;
}
