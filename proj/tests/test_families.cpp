#include "bdmix/families.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bdmix/spectral.hpp"
#include "testutil.hpp"

using namespace bdmix;
using nlohmann::json;

TEST(Build, SimpleWalk) {
  const auto c = build({FamilyKind::kSimpleWalk, 2, {}});
  EXPECT_EQ(c.p, (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_EQ(c.q, (std::vector<double>{0.0, 0.5, 0.5}));
  EXPECT_EQ(c.r, (std::vector<double>{0.5, 0.0, 0.5}));
}

TEST(Build, Ehrenfest) {
  const auto c = build({FamilyKind::kEhrenfest, 2, {}});
  EXPECT_EQ(c.p, (std::vector<double>{1.0, 0.5, 0.0}));
  EXPECT_EQ(c.q, (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(Build, BottleneckPositionsAndRates) {
  const auto c =
      build({FamilyKind::kBottleneck, 4, json{{"x", {2}}, {"eps", 0.1}}});
  EXPECT_EQ(c.p, (std::vector<double>{0.5, 0.1, 0.5, 0.5, 0.0}));
  EXPECT_EQ(c.q, (std::vector<double>{0.0, 0.5, 0.1, 0.5, 0.5}));
  for (double pi : stationary(c).prob) EXPECT_NEAR(pi, 0.2, 1e-14);
}

TEST(Build, BottleneckFractionalPositions) {
  const auto a = build(
      {FamilyKind::kBottleneck, 100, json{{"x_frac", {0.5}}, {"eps", 0.01}}});
  const auto b =
      build({FamilyKind::kBottleneck, 100, json{{"x", {50}}, {"eps", 0.01}}});
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.q, b.q);
}

TEST(Build, PrecutMatchesDisplayedEntries) {
  const std::size_t n = 7;  // M = 3, bottleneck edge {3,4}
  const auto c = build({FamilyKind::kPrecut, n, json{{"eps", 0.125}}});
  for (std::size_t i = 0; i <= n; ++i) {
    const double want_p = i == n ? 0.0 : (i == 3 ? 0.125 : 0.5);
    const double want_q = i == 0 ? 0.0 : (i == 4 ? 0.125 : 0.5);
    EXPECT_EQ(c.p[i], want_p) << i;
    EXPECT_EQ(c.q[i], want_q) << i;
  }
  EXPECT_EQ(c.r[0], 0.5);
  EXPECT_EQ(c.r[n], 0.5);
  EXPECT_NEAR(c.r[3], 0.375, 1e-15);
  EXPECT_NEAR(c.r[4], 0.375, 1e-15);
  for (std::size_t i : {1u, 2u, 5u, 6u}) EXPECT_EQ(c.r[i], 0.0);
}

TEST(Build, CheckChainMatchesDisplay) {
  // positive side i>=1 (reindexed n+i): down-rate i^a/(2(i+1)^a)
  const std::size_t n = 5;
  const double a = 2.0;
  const auto c = build({FamilyKind::kMetropolisCheck, n, json{{"a", a}}});
  ASSERT_EQ(c.size(), 2 * n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const double down = std::pow(static_cast<double>(i), a) /
                        (2.0 * std::pow(static_cast<double>(i + 1), a));
    EXPECT_NEAR(c.q[n + i], down, 1e-14);
    if (i < n) EXPECT_NEAR(c.p[n + i], 0.5, 1e-15);
    // mirror side
    EXPECT_NEAR(c.p[n - i], down, 1e-14);
  }
  EXPECT_NEAR(c.p[n], 0.5, 1e-15);
  EXPECT_NEAR(c.q[n], 0.5, 1e-15);
  EXPECT_NEAR(c.r[2 * n],
              1.0 - std::pow(5.0, a) / (2.0 * std::pow(6.0, a)), 1e-14);
}

TEST(Build, HatChainMatchesDisplay) {
  const std::size_t n = 4;
  const double a = 1.5;
  const auto c = build({FamilyKind::kMetropolisHat, n, json{{"a", a}}});
  ASSERT_EQ(c.size(), 2 * n + 1);
  // at the centre (original 0): both neighbours have weight n^a vs (n+1)^a
  const double out = std::pow(static_cast<double>(n), a) /
                     (2.0 * std::pow(static_cast<double>(n + 1), a));
  EXPECT_NEAR(c.p[n], out, 1e-14);
  EXPECT_NEAR(c.q[n], out, 1e-14);
  EXPECT_NEAR(c.r[n], 1.0 - 2.0 * out, 1e-14);
  // moving toward the centre is always accepted
  for (std::size_t i = 1; i <= n; ++i) EXPECT_NEAR(c.q[n + i], 0.5, 1e-15);
}

TEST(Build, MetropolisValleyHitsRequestedTarget) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const std::size_t j = rng() % (n + 1);
    std::vector<double> pi(n + 1);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (std::size_t i = 0; i <= n; ++i) {
      const double dist = std::fabs(static_cast<double>(i) -
                                    static_cast<double>(j));
      pi[i] = std::exp(u(rng) * 0.05 + dist * 0.4);  // valley at j
    }
    const auto c = build({FamilyKind::kMetropolisValley, n,
                          json{{"pi", pi}, {"j", j}}});
    double total = 0.0;
    for (double w : pi) total += w;
    const auto d = stationary(c);
    for (std::size_t i = 0; i <= n; ++i)
      EXPECT_NEAR(d.prob[i], pi[i] / total, 1e-10);
  }
}

TEST(Build, MetropolisValleyRowAtTheValleyIsUnit) {
  const std::vector<double> pi{4.0, 2.0, 1.0, 2.0, 4.0};
  const auto c = build({FamilyKind::kMetropolisValley, 4,
                        json{{"pi", pi}, {"j", 2}}});
  EXPECT_NEAR(c.p[2], 0.5, 1e-15);
  EXPECT_NEAR(c.q[2], 0.5, 1e-15);
  EXPECT_EQ(c.r[2], 0.0);
}

TEST(Build, MonotoneWeightSatisfiesMonotoneCondition) {
  for (int cas : {1, 2, 3, 4}) {
    const double beta = cas == 1 ? 1.5 : (cas == 2 ? 0.5 : (cas == 3 ? 2.0 : 0.8));
    const auto c = build({FamilyKind::kMonotoneWeight, 40,
                          json{{"case", cas}, {"alpha", 0.7}, {"beta", beta}}});
    for (std::size_t i = 0; i < c.n(); ++i)
      EXPECT_GE(c.p[i], c.q[i + 1] - 1e-15);
  }
}

TEST(Build, EveryKindPassesValidation) {
  const std::vector<FamilySpec> specs = {
      {FamilyKind::kSimpleWalk, 17, {}},
      {FamilyKind::kEhrenfest, 17, {}},
      {FamilyKind::kMetropolisValley, 4,
       json{{"pi", {4.0, 2.0, 1.0, 2.0, 4.0}}, {"j", 2}}},
      {FamilyKind::kMetropolisCheck, 9, json{{"a", 1.0}}},
      {FamilyKind::kMetropolisHat, 9, json{{"a", 3.0}}},
      {FamilyKind::kBottleneck, 12, json{{"x", {3, 7}}, {"eps", {0.1, 0.02}}}},
      {FamilyKind::kPrecut, 9, json{{"eps", 0.001}}},
      {FamilyKind::kMonotoneWeight, 9,
       json{{"case", 1}, {"alpha", 1.0}, {"beta", 1.0}}},
  };
  for (const auto& s : specs)
    EXPECT_NO_THROW(validate(build(s))) << to_string(s.kind);
}

TEST(Build, RejectsBadParameters) {
  EXPECT_THROW(build({FamilyKind::kBottleneck, 4,
                      json{{"x", {2, 2}}, {"eps", 0.1}}}),
               SpecError);
  EXPECT_THROW(build({FamilyKind::kBottleneck, 4,
                      json{{"x", {5}}, {"eps", 0.1}}}),
               SpecError);
  EXPECT_THROW(build({FamilyKind::kBottleneck, 4,
                      json{{"x", {2}}, {"eps", 0.6}}}),
               SpecError);
  EXPECT_THROW(build({FamilyKind::kPrecut, 2, json{{"eps", 0.1}}}), SpecError);
  EXPECT_THROW(build({FamilyKind::kMetropolisValley, 2,
                      json{{"pi", {1.0, 2.0, 0.5}}, {"j", 2}}}),
               SpecError);  // not a valley at j = 2
  EXPECT_THROW(build({FamilyKind::kMonotoneWeight, 4,
                      json{{"case", 1}, {"alpha", 1.0}, {"beta", 0.5}}}),
               SpecError);
}

TEST(BottleneckConstants, NoBottlenecksIsPureDiffusion) {
  const FamilySpec s{FamilyKind::kBottleneck, 10,
                     json{{"x", json::array()}}};
  const auto k = bottleneck_constants(s);
  EXPECT_EQ(k.t, 100.0);
  EXPECT_EQ(k.ell, 100.0);
  EXPECT_EQ(k.a, 0.0);
  EXPECT_EQ(k.b, 0.0);
}

TEST(BottleneckConstants, SingleCentralBottleneck) {
  const FamilySpec s{FamilyKind::kBottleneck, 10,
                     json{{"x", {5}}, {"eps", 0.01}}};
  const auto k = bottleneck_constants(s);
  EXPECT_EQ(k.a, 5.0);
  EXPECT_EQ(k.t, 600.0);
  EXPECT_EQ(k.b, 5.0);
  // ell: max over j of (n/2+1-j)/eps at j=0 plus the diffusion term
  EXPECT_EQ(k.ell, 100.0 + 600.0);
}

TEST(MonoConstants, DirectSummationOracle) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const auto c = build({FamilyKind::kMonotoneWeight, n,
                          json{{"case", 1}, {"alpha", 0.2}, {"beta", 1.0}}});
    const auto d = stationary(c);
    const std::size_t j = rng() % (n + 1);
    const auto m = mono_constants(c, d, j);
    double u = 0.0, w = 0.0, v = 0.0;
    for (std::size_t k = 0; k < j; ++k) u += d.prefix[k] / d.prob[k];
    for (std::size_t k = j; k <= n; ++k) w += 1.0 / d.prob[k];
    for (std::size_t jp = 0; jp < j; ++jp) {
      double inner = 0.0;
      for (std::size_t k = jp; k < j; ++k) inner += 1.0 / d.prob[k];
      v = std::max(v, d.prefix[jp] * inner);
    }
    EXPECT_NEAR(m.u, u, 1e-10 * std::max(1.0, u));
    EXPECT_NEAR(m.v, v, 1e-10 * std::max(1.0, v));
    EXPECT_NEAR(m.w, w, 1e-10 * std::max(1.0, w));
  }
}

TEST(MonoConstants, UniformWalkIsQuadratic) {
  const std::size_t n = 64;
  const auto c = testutil::simple_walk(n);
  const auto d = stationary(c);
  const auto m = mono_constants(c, d, median(d));
  // all three scale like n^2 for the uniform target
  EXPECT_GT(m.u, 0.1 * n * n);
  EXPECT_LT(m.u, 10.0 * n * n);
  EXPECT_GT(m.v, 0.05 * n * n);
  EXPECT_LT(m.v, 10.0 * n * n);
  EXPECT_GT(m.w, 0.1 * n * n);
  EXPECT_LT(m.w, 10.0 * n * n);
}

TEST(MonoConstants, ShapeGuard) {
  const std::vector<double> pi{4.0, 2.0, 1.0, 2.0, 4.0};
  const auto valley = build({FamilyKind::kMetropolisValley, 4,
                             json{{"pi", pi}, {"j", 2}}});
  EXPECT_THROW(mono_constants(valley, stationary(valley), 2), ShapeError);
}

TEST(ValleyConstants, DirectSummationOracle) {
  const std::vector<double> pi{8.0, 2.0, 1.0, 3.0, 9.0};
  const auto c = build({FamilyKind::kMetropolisValley, 4,
                        json{{"pi", pi}, {"j", 2}}});
  const auto d = stationary(c);
  const auto v = valley_constants(c, d, 2);
  double left = 0.0, right = 0.0;
  for (std::size_t i = 0; i <= 2; ++i) left += 1.0 / d.prob[i];
  for (std::size_t i = 2; i <= 4; ++i) right += 1.0 / d.prob[i];
  left /= c.q[2];
  right /= c.p[2];
  EXPECT_NEAR(v.left, left, 1e-10 * left);
  EXPECT_NEAR(v.right, right, 1e-10 * right);
  EXPECT_EQ(v.value, std::max(v.left, v.right));
}

TEST(Constants, SingleStateChainIsAllZero) {
  const auto c = bdmix::make_chain({0.0}, {0.0});
  const auto d = stationary(c);
  const auto m = mono_constants(c, d, 0);
  EXPECT_EQ(m.u, 0.0);
  EXPECT_EQ(m.v, 0.0);
  EXPECT_EQ(m.w, 0.0);
  const auto v = valley_constants(c, d, 0);
  EXPECT_EQ(v.value, 0.0);
}

TEST(ValleyConstants, GuardsAndDegenerateCases) {
  const auto srw = testutil::simple_walk(4);  // flat: valley shape holds
  const auto d = stationary(srw);
  EXPECT_NO_THROW(valley_constants(srw, d, 2));
  const auto mono = build({FamilyKind::kMonotoneWeight, 6,
                           json{{"case", 1}, {"alpha", 1.0}, {"beta", 1.0}}});
  EXPECT_THROW(valley_constants(mono, stationary(mono), 3), ShapeError);
}

TEST(PerturbUniform2, IdentityCoefficients) {
  const auto c = testutil::simple_walk(6);
  const auto p1 = perturb_uniform2(c, {0, 1, 2, 3, 4, 5},
                                   std::vector<double>(6, 1.0));
  EXPECT_EQ(p1.p, c.p);
  EXPECT_EQ(p1.q, c.q);
  // c == 0 on a symmetric walk also changes nothing: min{p_i, q_{n-i}} = p_i
  const auto p0 = perturb_uniform2(c, {0, 1, 2, 3, 4, 5},
                                   std::vector<double>(6, 0.0));
  EXPECT_EQ(p0.p, c.p);
  EXPECT_EQ(p0.q, c.q);
}

TEST(PerturbUniform2, AlternatingRateExample) {
  // edge rates 1/2 on even edges, 1/(2n) on odd ones, on {0,...,2n};
  // zero coefficients turn it into the uniform slow walk
  const std::size_t n = 12;
  std::vector<double> p(2 * n + 1, 0.0), q(2 * n + 1, 0.0);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const double rate = (i % 2 == 0) ? 0.5 : 1.0 / (2.0 * n);
    p[i] = rate;
    q[i + 1] = rate;
  }
  const auto c = bdmix::make_chain(p, q);
  std::vector<std::size_t> edges(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) edges[i] = i;
  const auto tilde =
      perturb_uniform2(c, edges, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < 2 * n; ++i)
    EXPECT_NEAR(tilde.p[i], 1.0 / (2.0 * n), 1e-15);

  // stationary law is preserved and the gap stays within the widened bracket
  const auto d0 = stationary(c);
  const auto d1 = stationary(tilde);
  for (std::size_t i = 0; i <= 2 * n; ++i)
    EXPECT_NEAR(d0.prob[i], d1.prob[i], 1e-10);
  const double g0 = eigenvalues(c, d0).gap;
  const double g1 = eigenvalues(tilde, d1).gap;
  EXPECT_GE(g1, g0 / 8.0);
  EXPECT_LE(g1, g0 * 8.0);
}

TEST(PerturbUniform2, PreservesStationaryOnRandomCoefficients) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const auto c = testutil::simple_walk(n);
    std::vector<std::size_t> edges;
    std::vector<double> coeff;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) {
        edges.push_back(i);
        coeff.push_back((rng() % 1000) / 1000.0);
      }
    }
    const auto tilde = perturb_uniform2(c, edges, coeff);
    const auto d0 = stationary(c);
    const auto d1 = stationary(tilde);
    for (std::size_t i = 0; i <= n; ++i)
      EXPECT_NEAR(d0.prob[i], d1.prob[i], 1e-10);
  }
}

TEST(PerturbUniform2, RejectsAsymmetricChains) {
  std::mt19937_64 rng(64);
  const auto c = testutil::random_chain(rng, 8);
  EXPECT_THROW(perturb_uniform2(c, {0}, {0.5}), SymmetryError);
}

TEST(FamilySpecJson, RoundTrip) {
  const FamilySpec s{FamilyKind::kBottleneck, 32,
                     json{{"x", {7}}, {"eps", 0.05}}};
  const auto restored = family_spec_from_json(to_json(s));
  EXPECT_EQ(restored.kind, s.kind);
  EXPECT_EQ(restored.n, s.n);
  EXPECT_EQ(restored.params, s.params);
  EXPECT_THROW(family_spec_from_json(json{{"kind", "nope"}, {"n", 2}}),
               SpecError);
}
