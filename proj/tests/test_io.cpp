#include "bdmix/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "testutil.hpp"

using namespace bdmix;
using nlohmann::json;

TEST(ChainJson, RoundTripAndOptionalHolding) {
  const auto c = testutil::simple_walk(3);
  const auto restored = chain_from_json(to_json(c));
  EXPECT_EQ(restored.p, c.p);
  EXPECT_EQ(restored.q, c.q);
  EXPECT_EQ(restored.r, c.r);

  // r omitted: computed as 1 - p - q
  const json doc{{"n", 2}, {"p", {0.5, 0.5, 0.0}}, {"q", {0.0, 0.5, 0.5}}};
  const auto built = chain_from_json(doc);
  EXPECT_EQ(built.r, (std::vector<double>{0.5, 0.0, 0.5}));
}

TEST(ChainJson, Malformed) {
  EXPECT_THROW(chain_from_json(json::array()), ParseError);
  EXPECT_THROW(chain_from_json(json{{"n", 2}, {"p", {0.5, 0.5, 0.0}}}),
               ParseError);
  EXPECT_THROW(chain_from_json(json{{"n", 2},
                                    {"p", {0.5, 0.5}},
                                    {"q", {0.0, 0.5, 0.5}}}),
               ParseError);
  EXPECT_THROW(chain_from_json(json{{"n", 2},
                                    {"p", {0.5, "x", 0.0}},
                                    {"q", {0.0, 0.5, 0.5}}}),
               ParseError);
  // structurally fine but an invalid chain: validation error, not parse
  EXPECT_THROW(chain_from_json(json{{"n", 2},
                                    {"p", {0.5, 0.0, 0.0}},
                                    {"q", {0.0, 0.5, 0.5}}}),
               ReducibleError);
}

TEST(FormatDouble, SeventeenDigitsRoundTrips) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(u(rng), static_cast<int>(rng() % 600) - 300);
    const std::string s = format_double(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "");
}

TEST(TvProfileJson, CarriesModeAndValues) {
  TVProfile p;
  p.mode = TimeMode::lazy(0.5);
  p.times = {0.0, 2.0};
  p.values = {0.75, 0.5};
  const auto j = to_json(p);
  EXPECT_EQ(j["mode"]["lazy"], 0.5);
  EXPECT_EQ(j["times"].size(), 2u);
  EXPECT_EQ(j["d_tv"][1], 0.5);
}

TEST(TvProfileCsv, RoundTrip) {
  TVProfile p;
  p.mode = TimeMode::continuous();
  p.times = {0.0, 0.1, 2.0 / 3.0, 1e7};
  p.values = {0.9, 0.5, 1.0 / 3.0, 1.2345678901234567e-9};
  const auto restored = tv_profile_from_csv(to_csv(p));
  EXPECT_EQ(restored.times, p.times);
  EXPECT_EQ(restored.values, p.values);
  EXPECT_THROW(tv_profile_from_csv("bad,header\n1,2\n"), ParseError);
}

namespace {

bool same_cell(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

TEST(FamilyScanCsv, RoundTripWithMissingCells) {
  FamilyScan s;
  s.options.eps = {0.1, 0.25};
  s.options.delta = {0.5};
  s.indices = {8, 16};
  ScanRow r1;
  r1.n = 8;
  r1.t = 12.5;
  r1.ell = 7.0;
  r1.lambda = 0.03;
  r1.s = 40.0;
  r1.t_cont = {100.0, 55.5};
  r1.t_lazy = {{201.0, 111.0}};
  r1.ratio_t_over_ell = 12.5 / 7.0;
  r1.product_t_gap = 3.0;
  r1.product_s_gap = 1.2;
  ScanRow r2 = r1;
  r2.n = 16;
  r2.t_cont = {std::nan(""), std::nan("")};
  r2.t_lazy = {{std::nan(""), std::nan("")}};
  r2.product_t_gap = std::nan("");
  s.rows = {r1, r2};

  const auto text = to_csv(s);
  const auto restored = family_scan_from_csv(text);
  EXPECT_EQ(restored.options.eps, s.options.eps);
  EXPECT_EQ(restored.options.delta, s.options.delta);
  EXPECT_EQ(restored.indices, s.indices);
  ASSERT_EQ(restored.rows.size(), s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& a = restored.rows[i];
    const auto& b = s.rows[i];
    EXPECT_EQ(a.n, b.n);
    EXPECT_TRUE(same_cell(a.t, b.t));
    EXPECT_TRUE(same_cell(a.ell, b.ell));
    EXPECT_TRUE(same_cell(a.lambda, b.lambda));
    EXPECT_TRUE(same_cell(a.s, b.s));
    for (std::size_t e = 0; e < 2; ++e) {
      EXPECT_TRUE(same_cell(a.t_cont[e], b.t_cont[e]));
      EXPECT_TRUE(same_cell(a.t_lazy[0][e], b.t_lazy[0][e]));
    }
    EXPECT_TRUE(same_cell(a.ratio_t_over_ell, b.ratio_t_over_ell));
    EXPECT_TRUE(same_cell(a.product_t_gap, b.product_t_gap));
    EXPECT_TRUE(same_cell(a.product_s_gap, b.product_s_gap));
  }
}

TEST(Json, ReportsSerializeAllFields) {
  const auto c = testutil::simple_walk(2);
  const auto d = stationary(c);
  const auto bj = to_json(bounds_report(c, d));
  for (const char* key : {"i0", "t", "ell", "gap_lo", "gap_hi", "mix_lo",
                          "mix_hi"})
    EXPECT_TRUE(bj.contains(key)) << key;
  EXPECT_NEAR(bj["mix_hi"]["0.1"].get<double>(), 3600.0, 1e-9);

  const auto sj = to_json(eigenvalues(c, d));
  EXPECT_EQ(sj["eigs"].size(), 2u);
  EXPECT_TRUE(sj.contains("gap"));
  EXPECT_TRUE(sj.contains("inv_sum"));
}
