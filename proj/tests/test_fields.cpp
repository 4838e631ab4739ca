#include <gtest/gtest.h>

#include <cmath>

#include "unruh/fields.hpp"

using namespace unruh;

namespace {

LabFieldConfig fig1() {
  LabFieldConfig c;
  c.kind = FieldKind::laser;
  c.gamma = 300.0;
  c.photon_energy_lab_eV = 2.5;
  c.intensity_lab_W_cm2 = 1e18;
  c.envelope_halfwidth_cycles = 100.0;
  return c;
}

LabFieldConfig undulator() {
  LabFieldConfig c;
  c.kind = FieldKind::undulator;
  c.gamma = 4000.0;
  c.period_lab_m = 0.01;
  c.K_factor = 0.9;
  c.n_periods = 100.0;
  c.envelope_shape = EnvelopeShape::rectangular;
  return c;
}

}  // namespace

TEST(Fields, LaserRestFrameFrequency) {
  const auto f = rest_frame_equivalent(fig1());
  const double beta = std::sqrt(1.0 - 1.0 / (300.0 * 300.0));
  EXPECT_NEAR(f.omega, 300.0 * (1.0 + beta) * 2.5, 1e-9);
  EXPECT_NEAR(f.omega / 1500.0, 1.0, 1e-3);
  EXPECT_NEAR(f.T_halfwidth, 100.0 * 2.0 * M_PI / f.omega, 1e-12 * f.T_halfwidth);
}

TEST(Fields, IdentityBoost) {
  auto c = fig1();
  c.gamma = 1.0;
  const auto f = rest_frame_equivalent(c);
  EXPECT_DOUBLE_EQ(f.omega, 2.5);
}

TEST(Fields, GammaBelowOneRejected) {
  auto c = fig1();
  c.gamma = 0.5;
  EXPECT_THROW(rest_frame_equivalent(c), DomainError);
}

TEST(Fields, UndulatorFrequency) {
  const auto f = rest_frame_equivalent(undulator());
  // gamma beta 2 pi hbar c / lambda_u with hbar c = 197.3269804 eV nm
  const double oracle = 4000.0 * std::sqrt(1.0 - 1.0 / 16e6) * 2.0 * M_PI * 1.973269804e-7 / 0.01;
  EXPECT_NEAR(f.omega / oracle, 1.0, 1e-8);
  EXPECT_GT(f.omega, 0.1);
  EXPECT_LT(f.omega, 10.0);
  EXPECT_NEAR(f.a0, 0.9, 1e-12);
}

TEST(Fields, A0ConsistentWithE0) {
  const auto f = rest_frame_equivalent(fig1());
  const double a0 = PC::coupling_q() * f.E0 / (PC::electron_mass_eV * f.omega);
  EXPECT_NEAR(f.a0 / a0, 1.0, 1e-12);
}

TEST(Fields, A0InvariantUnderBoost) {
  auto c = fig1();
  const double E_lab = convert(convert(c.intensity_lab_W_cm2, Unit::W_per_cm2, Unit::V_per_m),
                               Unit::V_per_m, Unit::eV2);
  const double a0_lab = PC::coupling_q() * E_lab / (PC::electron_mass_eV * c.photon_energy_lab_eV);
  for (double g : {1.0, 2.0, 300.0, 4000.0, 3e4}) {
    c.gamma = g;
    const auto f = rest_frame_equivalent(c);
    EXPECT_NEAR(std::abs(f.a0 - a0_lab) / a0_lab, 0.0, 1e-12) << g;
  }
}

TEST(Fields, MonotoneInGamma) {
  double prev_l = 0.0, prev_u = 0.0;
  for (double g : {1.5, 3.0, 10.0, 300.0, 4000.0, 2e4, 1e5}) {
    auto l = fig1();
    l.gamma = g;
    auto u = undulator();
    u.gamma = g;
    const double wl = rest_frame_equivalent(l).omega;
    const double wu = rest_frame_equivalent(u).omega;
    EXPECT_GT(wl, prev_l);
    EXPECT_GT(wu, prev_u);
    prev_l = wl;
    prev_u = wu;
  }
}

TEST(Fields, BetaLargeGamma) {
  for (double g : {2.0, 300.0, 1e4, 1e5, 1e7}) {
    const double omb = one_minus_beta(g);
    EXPECT_NEAR(omb * 2.0 * g * g, 1.0, 1.0 / (g * g) + 1e-12) << g;
    EXPECT_LE(beta_from_gamma(g), 1.0);
  }
  EXPECT_EQ(beta_from_gamma(1.0), 0.0);
}

TEST(Fields, ValidateFig1Marginal) {
  const auto rep = validate(rest_frame_equivalent(fig1()));
  const auto& v = rep.at("v_max_squared");
  EXPECT_EQ(v.flag, Validity::marginal);
  EXPECT_GT(v.value, 1.0 / 18.0);
  EXPECT_LT(v.value, 2.0 / 9.0);
  EXPECT_EQ(rep.at("omega_over_m").flag, Validity::ok);
  EXPECT_FALSE(rep.relativistic_saturation);
}

TEST(Fields, ValidateZeroField) {
  auto c = fig1();
  c.intensity_lab_W_cm2 = 0.0;
  const auto rep = validate(rest_frame_equivalent(c));
  for (const char* name : {"a0", "a0_squared", "spin_ratio", "v_max_squared"}) {
    EXPECT_EQ(rep.at(name).value, 0.0) << name;
    EXPECT_EQ(rep.at(name).flag, Validity::ok) << name;
  }
  EXPECT_EQ(rep.worst(), Validity::ok);
}

TEST(Fields, ValidateUndulatorMarginal) {
  const auto rep = validate(rest_frame_equivalent(undulator()));
  EXPECT_EQ(rep.at("a0").flag, Validity::marginal);
  EXPECT_LT(rep.at("a0").value, 1.0);
}

TEST(Fields, SpinRatioSI) {
  const auto f = rest_frame_equivalent(fig1());
  const double E_si = convert(f.E0, Unit::eV2, Unit::V_per_m);
  const double muB_J_T = 9.2740100783e-24;
  const double omega_J = f.omega * 1.602176634e-19;
  EXPECT_NEAR(validate(f).at("spin_ratio").value / (muB_J_T * E_si / 299792458.0 / omega_J), 1.0,
              1e-6);
}

TEST(Fields, FlagsMonotoneInField) {
  Validity prev = Validity::ok;
  for (double a0 : {0.0, 0.05, 0.2, 0.5, 0.9, 1.5, 4.0}) {
    const auto f = RestFrameField::from_a0(a0, 1500.0, 10.0, EnvelopeShape::gaussian);
    const Validity w = validate(f).worst();
    EXPECT_GE(static_cast<int>(w), static_cast<int>(prev));
    prev = w;
  }
  EXPECT_TRUE(validate(RestFrameField::from_a0(1.2, 1500.0, 10.0, EnvelopeShape::gaussian))
                  .relativistic_saturation);
}

TEST(Fields, EnvelopeShapes) {
  const auto g = RestFrameField::from_a0(0.1, 2.0, 10.0, EnvelopeShape::gaussian);
  EXPECT_DOUBLE_EQ(g.envelope(0.0), 1.0);
  EXPECT_NEAR(g.envelope(g.T_halfwidth), std::exp(-0.5), 1e-15);
  const auto r = RestFrameField::from_a0(0.1, 2.0, 10.0, EnvelopeShape::rectangular);
  EXPECT_EQ(r.envelope(r.T_halfwidth * 0.999), 1.0);
  EXPECT_EQ(r.envelope(r.T_halfwidth * 1.001), 0.0);
  EXPECT_NEAR(r.effective_omega_T(), 2.0 * 2.0 * M_PI * 10.0, 1e-9);
  EXPECT_NEAR(g.effective_omega_T(), 2.0 * M_PI * 10.0, 1e-9);
}
