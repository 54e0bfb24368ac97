#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nvodmr/error.hpp"
#include "nvodmr/physics.hpp"
#include "nvodmr/seven_level.hpp"
#include "oracles.hpp"

using namespace nvodmr;

namespace {

oracle::Mat7 pumped(double beta) { return pumped_rates(ZeroFieldRates{}, beta); }

}  // namespace

TEST(ZeroFieldRates, TableEntries) {
  const RateMatrix k = ZeroFieldRates{}.matrix();
  EXPECT_EQ(k, oracle::pumped_table(0.0));
  EXPECT_EQ(k(5, 6), k(4, 6));
  EXPECT_EQ(k(6, 2), k(6, 1));
  EXPECT_GE(k.minCoeff(), 0.0);
}

TEST(Alpha, IdentityWithoutTransverseField) {
  for (double bz : {0.0, 1e-3, -5e-3}) {
    EXPECT_EQ(alpha_matrix(bz, 0.0), AlphaMatrix::Identity());
  }
}

TEST(Alpha, CoefficientsAtOneMillitesla) {
  const double g = 2.0028;
  const AlphaMatrix a = alpha_matrix(0.0, 1e-3, g);
  const double expected = g * oracle::mu_b * 1e-3 / (std::sqrt(2.0) * oracle::h * 2.87e9);
  EXPECT_NEAR(a(0, 1), expected, 1e-15);
  EXPECT_NEAR(a(0, 2), expected, 1e-15);
  EXPECT_NEAR(a(0, 1), 6.91e-3, 0.01e-3);
  EXPECT_NEAR(a(3, 4) / a(0, 1), 2.87e9 / 1.42e9, 1e-12);
  EXPECT_EQ(a(1, 0), -a(0, 1));
  EXPECT_EQ(a(2, 0), -a(0, 2));
  EXPECT_EQ(a(4, 3), -a(3, 4));
  EXPECT_EQ(a(5, 3), -a(3, 5));
  EXPECT_EQ(a(6, 6), 1.0);
  EXPECT_EQ(a.row(6).sum(), 1.0);
  EXPECT_EQ(a.col(6).sum(), 1.0);
  // unlisted couplings stay zero
  EXPECT_EQ(a(1, 2), 0.0);
  EXPECT_EQ(a(0, 3), 0.0);
  EXPECT_EQ(a(4, 5), 0.0);
}

TEST(Alpha, AxialFieldSelectsDenominators) {
  const double g = 2.0028;
  const double bz = 2e-3;
  const AlphaMatrix a = alpha_matrix(bz, 1e-4, g);
  const double zp = g * oracle::mu_b * 1e-4;
  const double zz = g * oracle::mu_b * bz;
  EXPECT_NEAR(a(0, 1), zp / (std::sqrt(2.0) * (oracle::h * 2.87e9 - zz)), 1e-16);
  EXPECT_NEAR(a(0, 2), zp / (std::sqrt(2.0) * (oracle::h * 2.87e9 + zz)), 1e-16);
  EXPECT_NEAR(a(3, 4), zp / (std::sqrt(2.0) * (oracle::h * 1.42e9 - zz)), 1e-16);
}

TEST(Alpha, PerturbationGuard) {
  // mu g B_perp / (h D) = 0.1 at about 10.24 mT
  const double limit = 0.1 * oracle::h * 2.87e9 / (2.0028 * oracle::mu_b);
  EXPECT_NO_THROW(alpha_matrix(0.0, 0.99 * limit));
  try {
    alpha_matrix(0.0, 1.01 * limit);
    FAIL() << "expected PerturbationError";
  } catch (const PerturbationError& e) {
    EXPECT_NEAR(e.ratio(), 0.101, 1e-6);
    EXPECT_NE(std::string(e.what()).find("0.101"), std::string::npos);
  }
  // excited-state anti-crossing at B_par = D_es / gamma
  const double crossing = 1.42e9 / oracle::gamma_nv(2.0028);
  EXPECT_THROW(alpha_matrix(crossing, 1e-6), PerturbationError);
}

TEST(Beta, HandEvaluation) {
  const double photon = oracle::h * oracle::c / 532e-9;
  EXPECT_NEAR(photon, 3.734e-19, 0.001e-19);
  const double intensity = 2.0 * 0.01 / (oracle::pi * 1e-10);
  const double expected = 9e-21 * intensity / (4.0 * 63.2e6 * photon);
  const double beta = beta_factor(0.01, 9e-21, 1e-5);
  EXPECT_NEAR(beta, expected, 1e-15);
  EXPECT_NEAR(beta, 6.07e-3, 0.01e-3);
  EXPECT_EQ(beta_factor(0.0, 9e-21, 1e-5), 0.0);
  EXPECT_NEAR(beta_factor(0.02, 9e-21, 1e-5), 2.0 * beta, 1e-15);
  // the direction factor is exposed
  EXPECT_NEAR(beta_factor(0.01, 9e-21, 1e-5, 1.0), 4.0 * beta, 1e-15);
}

TEST(MixedRates, IdentityMixingKeepsTable) {
  const RateMatrix k = mixed_rates(AlphaMatrix::Identity(), ZeroFieldRates{}, 0.05);
  EXPECT_EQ(k, pumped(0.05));
  EXPECT_EQ(k, oracle::pumped_table(0.05));
}

TEST(MixedRates, MatchesDoubleSum) {
  for (double bperp : {1e-4, 1e-3, 5e-3}) {
    const AlphaMatrix a = alpha_matrix(3e-4, bperp);
    const RateMatrix k = mixed_rates(a, ZeroFieldRates{}, 0.02);
    const oracle::Mat7 ref = oracle::mixed_rates(a, oracle::pumped_table(0.02));
    EXPECT_LT((k - ref).cwiseAbs().maxCoeff(), 1e-9 * ref.maxCoeff());
  }
}

TEST(MixedRates, SpinFlipChannelOpens) {
  const RateMatrix k0 = mixed_rates(alpha_matrix(0.0, 0.0), ZeroFieldRates{}, 0.02);
  const RateMatrix k1 = mixed_rates(alpha_matrix(0.0, 1e-3), ZeroFieldRates{}, 0.02);
  EXPECT_EQ(k0(4, 0), 0.0);
  EXPECT_GT(k1(4, 0), 0.0);
  EXPECT_GT(k1(3, 6), k0(3, 6));
}

TEST(MixedRates, TotalOutflowConservedToFirstOrder) {
  const double beta = 0.05;
  const double total0 = oracle::pumped_table(beta).sum();
  for (double bperp : {1e-4, 5e-4, 1.4e-3}) {
    const AlphaMatrix a = alpha_matrix(0.0, bperp);
    const double amax = (a - AlphaMatrix::Identity()).cwiseAbs().maxCoeff();
    ASSERT_LE(amax, 2e-2);
    const double total = mixed_rates(a, ZeroFieldRates{}, beta).sum();
    EXPECT_LE(std::abs(total - total0) / total0, 8.0 * amax * amax);
  }
}

TEST(SteadyState, NoPumpingLeavesGroundTriplet) {
  const Populations p = steady_state(pumped(0.0));
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
  for (int i = 3; i < 7; ++i) EXPECT_NEAR(p[i], 0.0, 1e-12);
}

TEST(SteadyState, OpticalPolarizationMatchesOde) {
  const RateMatrix k = mixed_rates(AlphaMatrix::Identity(), ZeroFieldRates{}, 0.05);
  const Populations p = steady_state(k);
  EXPECT_GT(p[0], p[1]);
  EXPECT_NEAR(p[1], p[2], 1e-12);

  oracle::Vec7 start = oracle::Vec7::Constant(1.0 / 7.0);
  const oracle::Vec7 ode = oracle::evolve(k, start, 1e-3);
  EXPECT_LT((ode - p.n).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SteadyState, ResonantDriveMatchesOde) {
  const RateMatrix k = mixed_rates(alpha_matrix(0.0, 5e-4), ZeroFieldRates{}, 0.05);
  const Populations p0 = steady_state(k);
  const Populations p1 = steady_state(k, 5e6, 0.0);
  EXPECT_GT(p1[1], p0[1]);
  EXPECT_LT(pl_rate(p1, k, 1.0), pl_rate(p0, k, 1.0));

  oracle::Vec7 start = oracle::Vec7::Zero();
  start(6) = 1.0;
  const oracle::Vec7 ode = oracle::evolve(with_microwave(k, 5e6, 0.0), start, 1e-3);
  EXPECT_LT((ode - p1.n).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SteadyState, ConservationAndResidual) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double bpar = (u(rng) - 0.5) * 1e-2;
    const double bperp = u(rng) * 5e-3;
    const double beta = std::pow(10.0, -3.0 + 3.0 * u(rng));
    const double t12 = u(rng) < 0.5 ? 0.0 : u(rng) * 1e7;
    const double t13 = u(rng) * 1e6;
    const RateMatrix k = mixed_rates(alpha_matrix(bpar, bperp), ZeroFieldRates{}, beta);
    const Populations p = steady_state(k, t12, t13);
    EXPECT_NEAR(p.sum(), 1.0, 1e-10);
    EXPECT_GE(p.n.minCoeff(), 0.0);
    EXPECT_LE(p.n.maxCoeff(), 1.0);
    const oracle::Vec7 flow = oracle::generator(with_microwave(k, t12, t13)) * p.n;
    EXPECT_LE(flow.cwiseAbs().maxCoeff(), 1e-9 * with_microwave(k, t12, t13).maxCoeff());
  }
}

TEST(SteadyState, Errors) {
  EXPECT_THROW(steady_state(RateMatrix::Zero()), SolveError);
  RateMatrix bad = pumped(0.1);
  bad(0, 3) = -1.0;
  EXPECT_THROW(steady_state(bad), InvalidArgument);
  EXPECT_THROW(steady_state(pumped(0.1), -1.0, 0.0), InvalidArgument);
  bad = pumped(0.1);
  bad(1, 2) = std::nan("");
  EXPECT_THROW(steady_state(bad), InvalidArgument);
}

TEST(SteadyState, MicrowaveNeverRaisesPl) {
  const RateMatrix k = mixed_rates(alpha_matrix(1e-3, 2e-4), ZeroFieldRates{}, 0.05);
  double prev = pl_rate(steady_state(k), k, 1.0);
  for (double t = 1e3; t <= 1e9; t *= 3.0) {
    const double r = pl_rate(steady_state(k, t, 0.0), k, 1.0);
    EXPECT_LE(r, prev * (1.0 + 1e-12)) << t;
    prev = r;
  }
}

TEST(PlRate, BruteForce) {
  const RateMatrix k = mixed_rates(AlphaMatrix::Identity(), ZeroFieldRates{}, 0.1);
  const Populations p = steady_state(k);
  EXPECT_NEAR(pl_rate(p, k, 1.0), oracle::pl(p.n, k, 1.0), 1e-9 * oracle::pl(p.n, k, 1.0));
  EXPECT_NEAR(pl_rate(p, k, 0.5), 0.5 * pl_rate(p, k, 1.0), 1e-6);
  EXPECT_GT(pl_rate(p, k, 1.0), 0.0);

  Populations ground;
  ground.n << 0.5, 0.25, 0.25, 0, 0, 0, 0;
  EXPECT_EQ(pl_rate(ground, k, 1.0), 0.0);
  EXPECT_THROW(pl_rate(p, k, 0.0), InvalidArgument);
  EXPECT_THROW(pl_rate(p, k, 1.5), InvalidArgument);
}
