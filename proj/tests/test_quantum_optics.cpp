#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "unruh/quantum_optics.hpp"

using namespace unruh;

TEST(QuantumOptics, ReducedDistributionMatchesConstruction) {
  for (double r : {0.1, 0.5}) {
    const auto ref = oracle::squeezed_reduced_by_construction({r, 0.0}, 200);
    const auto d = reduced_single_mode_distribution({{r, 0.0}}, 60);
    for (std::size_t n = 0; n <= 60; ++n) EXPECT_NEAR(d.p[n], ref[n], 1e-10) << r << " " << n;
  }
}

TEST(QuantumOptics, PhaseOfXiIrrelevant) {
  const auto a = reduced_single_mode_distribution({std::polar(0.7, 0.0)}, 20);
  const auto b = reduced_single_mode_distribution({std::polar(0.7, 2.1)}, 20);
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_DOUBLE_EQ(a.p[n], b.p[n]);
  const auto ref = oracle::squeezed_reduced_by_construction(std::polar(0.7, 2.1), 200);
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_NEAR(b.p[n], ref[n], 1e-10);
}

TEST(QuantumOptics, NormalizationAndMean) {
  for (double r : {0.0, 0.3, 1.0, 2.0}) {
    const auto d = reduced_single_mode_distribution({{r, 0.0}}, 2000);
    double s = 0.0, m = 0.0;
    for (std::size_t n = 0; n < d.p.size(); ++n) {
      s += d.p[n];
      m += static_cast<double>(n) * d.p[n];
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(d.truncation_deficit, 0.0, 1e-12);
    EXPECT_NEAR(m, squeezed_mean_n({{r, 0.0}}), 1e-9 * std::max(1.0, m));
  }
}

TEST(QuantumOptics, ThermalForm) {
  // p_n is geometric: p_{n+1}/p_n = exp(-omega/T_eff).
  const TwoModeSqueezedState s{{0.8, 0.0}};
  const auto d = reduced_single_mode_distribution(s, 10);
  const double T = effective_temperature(s, 1500.0);
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_NEAR(d.p[n + 1] / d.p[n], std::exp(-1500.0 / T), 1e-12);
  }
  EXPECT_EQ(effective_temperature({{0.0, 0.0}}, 1500.0), 0.0);
}

TEST(QuantumOptics, CoherentAndRegimes) {
  EXPECT_NEAR(coherent_mean_n({{3.0, 4.0}}), 25.0, 1e-12);
  EXPECT_NEAR(squeezed_mean_n({{0.01, 0.0}}), 1e-4, 1e-8);
  EXPECT_FALSE(exponential_regime({{0.5, 0.0}}));
  EXPECT_TRUE(exponential_regime({{1.0, 0.0}}));
}

TEST(QuantumOptics, HeuristicSqueezingReachesOneAtThreshold) {
  const auto f = RestFrameField::from_a0(0.3, 1500.0, 10.0, EnvelopeShape::gaussian);
  const double amp = per_electron_mode_amplitude(f);
  const double n_thr = schwinger_field() / (PC::alpha_qed * f.E0);
  EXPECT_NEAR(std::abs(squeezing_from_amplitude(n_thr, amp).xi), 1.0, 1e-12);
}

TEST(QuantumOptics, Csv) {
  std::ostringstream os;
  write_distribution_csv(os, reduced_single_mode_distribution({{0.0, 0.0}}, 1));
  EXPECT_EQ(os.str(), "n,p_n\n0,1\n1,0\n");
}
