#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "nvodmr/config.hpp"
#include "nvodmr/error.hpp"

using namespace nvodmr;

namespace {

std::string error_field(const std::string& ini) {
  try {
    parse_config_string(ini);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST(Config, DbmConversion) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_DOUBLE_EQ(dbm_to_watts(20.0), 0.1);
  EXPECT_NEAR(watts_to_dbm(dbm_to_watts(5.0)), 5.0, 1e-12);
  EXPECT_THROW(watts_to_dbm(0.0), InvalidArgument);
}

TEST(Config, EmptyGivesDefaults) {
  const RunConfig c = parse_config_string("");
  EXPECT_FALSE(c.seed);
  EXPECT_EQ(c.apparatus.laser_power_w, 0.1);
  EXPECT_EQ(c.apparatus.beam_waist_m, 1e-5);
  EXPECT_EQ(c.apparatus.cross_section_m2, 9e-21);
  EXPECT_EQ(c.apparatus.temperature_k, 300.0);
  EXPECT_EQ(c.apparatus.eta, 1.0);
  EXPECT_EQ(c.noise.integration_time_s, 1e-3);
  EXPECT_EQ(c.noise.t2_star_s, 0.5e-6);
  EXPECT_EQ(c.sweep.f_start_hz, 2.82e9);
  EXPECT_EQ(c.sweep.f_end_hz, 2.92e9);
  EXPECT_EQ(c.grid.nx, 8u);
  EXPECT_EQ(c.grid.pitch_m, 3e-6);
  for (double w : c.apparatus.weights) EXPECT_EQ(w, 0.125);
}

TEST(Config, ParsesUnits) {
  const RunConfig c = parse_config_string(
      "[run]\nseed = 17\nthreads = 2\n"
      "[field]\nb_ut = 5, 4, 3\n"
      "[bias]\nb_mt = 0 0 0.7\n"
      "[apparatus]\nmw_power_dbm = 20\nmw_theta_deg = 90\naxis_weights = 0.47,0.47,0.03,0.03\n"
      "[sweep]\nn_freq = 11\n"
      "[noise]\nenabled = false\n"
      "[fom]\nmw_powers_dbm = 10, 20\ntarget_dip = 2\n");
  EXPECT_EQ(*c.seed, 17u);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_NEAR(c.field_t.x(), 5e-6, 1e-20);
  EXPECT_NEAR(c.bias_t.z(), 0.7e-3, 1e-18);
  EXPECT_NEAR(c.apparatus.mw_power_w, 0.1, 1e-15);
  EXPECT_NEAR(c.apparatus.mw_theta_rad, std::acos(0.0), 1e-15);
  EXPECT_NEAR(c.apparatus.weights[0], 0.235, 1e-15);
  EXPECT_EQ(c.sweep.n_freq, 11u);
  EXPECT_FALSE(c.noise.any_enabled());
  ASSERT_EQ(c.fom.mw_powers_w.size(), 2u);
  EXPECT_EQ(*c.fom.options.target_dip, 2u);
  const auto j = config_to_json(c);
  EXPECT_EQ(j.at("seed").get<int>(), 17);
  EXPECT_EQ(j.at("fom").at("target_dip").get<int>(), 2);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(error_field("[sweep]\nn_freq = 1\n"), "sweep.n_freq");
  EXPECT_EQ(error_field("[apparatus]\nlaser_power_w = -1\n"), "apparatus.laser_power_w");
  EXPECT_EQ(error_field("[apparatus]\nbogus = 1\n"), "apparatus.bogus");
  EXPECT_EQ(error_field("[nowhere]\nx = 1\n"), "nowhere");
  EXPECT_EQ(error_field("[apparatus]\nmw_power_dbm = 4\n"), "apparatus.mw_power_dbm");
  EXPECT_EQ(error_field("[apparatus]\nmw_power_dbm = 51\n"), "apparatus.mw_power_dbm");
  EXPECT_EQ(error_field("[apparatus]\neta = 0\n"), "apparatus.eta");
  EXPECT_EQ(error_field("[apparatus]\nbeam_waist_m = abc\n"), "apparatus.beam_waist_m");
  EXPECT_EQ(error_field("[noise]\ng_distribution = cauchy\n"), "noise.g_distribution");
  EXPECT_EQ(error_field("[field]\nb_ut = 1, 2\n"), "field.b_ut");
  EXPECT_EQ(error_field("[run]\nthreads = 0\n"), "run.threads");
  EXPECT_EQ(error_field("[apparatus]\nmw_power_dbm = 5\n"), "<none>");
  EXPECT_EQ(error_field("[apparatus]\nmw_power_dbm = 50\n"), "<none>");
}

TEST(Config, MissingFile) { EXPECT_THROW(parse_config("/nonexistent/run.ini"), ConfigError); }
