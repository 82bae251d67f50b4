#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "triwave/diagnostics.hpp"
#include "triwave/error.hpp"
#include "triwave/exact.hpp"
#include "triwave/functionals.hpp"
#include "triwave/groundstate.hpp"

using namespace triwave;

namespace {

TriField psi_triple(const Grid& g, double omega = 0.5) {
  const ComplexField psi = psi_omega({omega, 2.0, 1.0, 1.0}, g);
  return TriField(g, psi, psi, psi);
}

double l2(const TriField& v) { return std::sqrt(mass(v[0], v.grid()) + mass(v[1], v.grid()) + mass(v[2], v.grid())); }

}  // namespace

TEST(Energy, ZeroAndPsiTriple) {
  const Grid g(40.0, 2048);
  const Params prm;
  EXPECT_EQ(energy(TriField::zeros(g), prm), 0.0);
  const auto o = oracle::psi(0.5, 1.0, 1.0);
  EXPECT_NEAR(oracle::triple_energy(o, 1.0, 1.0), -1.35, 1e-14);
  EXPECT_NEAR(energy(psi_triple(g), prm) / -1.35, 1.0, 1e-10);
  EXPECT_NEAR(trilinear(psi_triple(g)), o.cube(), 1e-10);
}

TEST(Energy, SingleComponentReducesToScalar) {
  const Grid g(40.0, 1024);
  const Params prm{3.0, 1.0, 2.0};
  const ComplexField f = psi_omega({0.7, 2.0, 1.0, 1.0}, g);
  const TriField v(g, ComplexField(1024), f, ComplexField(1024));
  EXPECT_NEAR(energy(v, prm), scalar_energy_e1(f, prm, g), 1e-13);
}

TEST(Masses, Q1Q2) {
  const Grid g(40.0, 1024);
  const ComplexField f = psi_omega({0.5, 2.0, 1.0, 1.0}, g);
  const TriField v(g, ComplexField(1024), f, ComplexField(1024));
  EXPECT_EQ(q1(v), 0.0);
  EXPECT_NEAR(q2(v), mass(f, g), 1e-15);
  EXPECT_NEAR(q1(psi_triple(g)), 3.0, 1e-9);
  EXPECT_NEAR(q2(psi_triple(g)), 3.0, 1e-9);
}

TEST(Action, Definition) {
  const Grid g(20.0, 256);
  const Params prm;
  const TriField v = oracle::random_smooth(g, 9);
  EXPECT_EQ(action(v, 0.0, 0.0, prm), energy(v, prm));
  EXPECT_EQ(action(TriField::zeros(g), 0.3, 0.4, prm), 0.0);
  EXPECT_NEAR(action(v, 0.3, 0.4, prm), energy(v, prm) + 0.3 * q1(v) + 0.4 * q2(v), 1e-12);
}

TEST(Invariance, SymmetryGroup) {
  const Grid g(20.0, 512);
  const Params prm{2.5, 0.8, 1.2};
  for (std::uint64_t s = 0; s < 10; ++s) {
    const TriField v = oracle::random_smooth(g, s);
    const TriField w = rotate(translate(v, 1.7 + s), 0.3 * s, -0.7 * s);
    EXPECT_NEAR(energy(w, prm) / energy(v, prm), 1.0, 1e-10);
    EXPECT_NEAR(q1(w) / q1(v), 1.0, 1e-10);
    EXPECT_NEAR(q2(w) / q2(v), 1.0, 1e-10);
    EXPECT_NEAR(trilinear(w), trilinear(v), 1e-10 * std::abs(trilinear(v)) + 1e-14);
  }
}

TEST(Gradient, MatchesCentralDifferences) {
  const Grid g(20.0, 256);
  for (double p : {2.0, 3.0, 1.5}) {
    const Params prm{p, 1.3, 0.9};
    for (std::uint64_t s = 0; s < 20; ++s) {
      const TriField v = oracle::random_smooth(g, 100 + s);
      const TriField w = oracle::random_smooth(g, 200 + s);
      const double eps = 1e-5;
      const double fd = (energy(v + eps * w, prm) - energy(v - eps * w, prm)) / (2 * eps);
      const TriField gr = energy_gradient(v, prm);
      double pairing = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) pairing += (std::conj(gr[i][j]) * w[i][j]).real();
      pairing *= g.spacing();
      EXPECT_NEAR(fd / pairing, 1.0, 1e-6) << "p=" << p << " seed=" << s;
    }
  }
  EXPECT_EQ(h1_norm_sq(energy_gradient(TriField::zeros(g), Params{})), 0.0);
}

// (psi, psi, psi) solves the stationary system with all three multipliers
// equal to omega; omega3 = 2 omega leaves exactly 2 omega psi in equation 3.
TEST(Stationarity, PsiTripleMultipliers) {
  const Grid g(40.0, 2048);
  const Params prm;
  const TriField v = psi_triple(g);
  const MultiplierEstimate m = estimate_multipliers(v, prm);
  EXPECT_NEAR(m.omega1, 0.5, 1e-8);
  EXPECT_NEAR(m.omega2, 0.5, 1e-8);
  EXPECT_NEAR(m.omega3, 0.5, 1e-8);
  EXPECT_LT(stationary_residual(v, {0.5, 0.5, 0.5}, prm).total(), 1e-8);
  const ResidualReport off = stationary_residual(v, {0.5, 0.5, 1.0}, prm);
  EXPECT_NEAR(off.r3, 1.0 * std::sqrt(1.5), 1e-8);
  TriField gr = energy_gradient(v, prm) + 1.0 * v;
  EXPECT_LT(l2(gr), 1e-8);
}

TEST(Stationarity, ResidualStructure) {
  const Grid g(40.0, 2048);
  const Params prm;
  EXPECT_EQ(stationary_residual(TriField::zeros(g), {0.1, 0.2, 0.3}, prm).total(), 0.0);
  const ResidualReport r = stationary_residual(psi_triple(g), {0.6, 0.5, 0.5}, prm);
  EXPECT_NEAR(r.r1, 0.2 * std::sqrt(1.5), 1e-8);
  EXPECT_LT(r.r2, 1e-8);
}

TEST(Multipliers, ScalarSolitonInSlotThree) {
  const Grid g(40.0, 2048);
  const Params prm;
  const ComplexField phi = phi_omega({0.8, 2.0, 1.0, 1.0}, g);
  const TriField v(g, ComplexField(2048), ComplexField(2048), phi);
  try {
    (void)estimate_multipliers(v, prm);
    FAIL();
  } catch (const UndefinedMultiplier& e) {
    EXPECT_EQ(e.component(), 1);
  }
  const GroundStateResult a = assess(v, prm);
  EXPECT_NEAR(a.multipliers.omega3, 0.8, 1e-8);
  EXPECT_TRUE(std::isnan(a.multipliers.omega1));
}

TEST(Multipliers, ContinuousUnderScaling) {
  const Grid g(40.0, 1024);
  const Params prm;
  TriField v = psi_triple(g);
  const MultiplierEstimate a = estimate_multipliers(v, prm);
  for (auto& z : v.mutable_component(2)) z *= 2.0;
  const MultiplierEstimate b = estimate_multipliers(v, prm);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(std::isfinite(b[i]));
    EXPECT_LT(std::abs(b[i] - a[i]), 2.0);
  }
}

TEST(ScalarEnergy, ClosedForms) {
  const Grid g(40.0, 2048);
  const Params prm{2.0, 1.0, 1.0};
  EXPECT_EQ(scalar_energy_e1(ComplexField(2048), prm, g), 0.0);
  const oracle::Sech2 phi{3.0, 0.5 * std::sqrt(2.0)};
  const double expect = 0.5 * phi.grad_sq() - phi.cube() / 3.0;
  EXPECT_NEAR(scalar_energy_e1(phi_omega({1.0, 2.0, 1.0, 1.0}, g), prm, g), expect, 1e-9);
  const auto o = oracle::psi(0.5, 1.0, 1.0);
  EXPECT_NEAR(scalar_energy_e2(psi_omega({0.5, 2.0, 1.0, 1.0}, g), prm, g), 0.5 * o.grad_sq() - 2.0 / 3.0 * o.cube(), 1e-10);
  EXPECT_NEAR(0.5 * o.grad_sq() - 2.0 / 3.0 * o.cube(), -0.45, 1e-14);
}

TEST(GnQuotient, Invariances) {
  const Grid g(40.0, 2048);
  const Params prm;
  ComplexField gauss(2048), dil(2048);
  const double th = 1.7;
  for (std::size_t j = 0; j < 2048; ++j) {
    const double x = g.node(j);
    gauss[j] = std::exp(-x * x / 4.0);
    dil[j] = std::sqrt(th) * std::exp(-th * th * x * x / 4.0);
  }
  const double q = gn_quotient(gauss, prm, g);
  EXPECT_TRUE(std::isfinite(q));
  EXPECT_NEAR(gn_quotient(dil, prm, g) / q, 1.0, 1e-6);
  const Grid fine(40.0, 4096);
  ComplexField gf(4096);
  for (std::size_t j = 0; j < 4096; ++j) gf[j] = std::exp(-fine.node(j) * fine.node(j) / 4.0);
  EXPECT_NEAR(gn_quotient(gf, prm, fine) / q, 1.0, 1e-6);
  const double q1v = gn_quotient(phi_omega({0.5, 2.0, 1.0, 1.0}, g), prm, g);
  const double q2v = gn_quotient(phi_omega({1.5, 2.0, 1.0, 1.0}, g), prm, g);
  EXPECT_NEAR(q1v / q2v, 1.0, 1e-6);
  EXPECT_THROW(gn_quotient(ComplexField(2048), prm, g), UndefinedQuotient);
  EXPECT_THROW(gn_quotient(ComplexField(2048, 1.0), prm, g), UndefinedQuotient);
}

TEST(Properties, ModulusLowersEnergy) {
  const Grid g(20.0, 512);
  const Params prm;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TriField v = oracle::random_smooth(g, 1000 + s);
    const double ev = energy(v, prm), em = energy(modulus(v), prm);
    EXPECT_LE(em, ev + 1e-12) << s;
  }
}

TEST(Properties, HolderBound) {
  const Grid g(20.0, 512);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const TriField v = oracle::random_smooth(g, 2000 + s);
    double b = 1.0;
    for (std::size_t i = 0; i < 3; ++i) b *= std::cbrt(lq_norm_pow(v[i], 3.0, g));
    EXPECT_LE(std::abs(trilinear(v)), b * (1 + 1e-12));
  }
}

TEST(Nonlinearity, ZeroIsZero) {
  EXPECT_EQ(power_nonlinearity(cplx(0, 0), 1.5), cplx(0, 0));
  EXPECT_NEAR(std::abs(power_nonlinearity(cplx(0, 2), 3.0) - cplx(0, 8)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(power_nonlinearity(cplx(4, 0), 1.5) - cplx(8, 0)), 0.0, 1e-14);
}
