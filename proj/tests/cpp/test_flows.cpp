#include <cmath>

#include "ccgeo/flows/ballbox.hpp"
#include "ccgeo/flows/exp_chart.hpp"
#include "ccgeo/flows/gauge.hpp"
#include "ccgeo/structures/catalog.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ccgeo;
using namespace ccgeo::flows;
using structures::build_catalog_model;

TEST_CASE("flow_point: zero field, straight X1 flow, exact triple flow") {
  const auto h = build_catalog_model("heisenberg1");
  const std::vector<double> origin{0, 0, 0};

  // t = 0: stays put for any time.
  const std::vector<double> zero{0, 0, 0};
  auto r = flow_point(h.structure, origin, zero, 0.7);
  CHECK(r.point[0] == doctest::Approx(0.0));
  CHECK(r.length == doctest::Approx(0.0));

  // Flow of X1 from 0 for time s lands at (s, 0, 0).
  const std::vector<double> e1{1, 0, 0};
  r = flow_point(h.structure, origin, e1, 0.5);
  CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.point[1]) < 1e-14);
  CHECK(std::abs(r.point[2]) < 1e-14);
  CHECK(r.length == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.error_estimate < 1e-12);

  // Straight horizontal lines: flow of t1 X1 + t2 X2 + t3 d_t from 0 at time
  // 1 lands exactly at (t1, t2, t3) because the quadratic terms cancel.
  Rng rng(derive_seed(5, "flows-closed-form"));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> t{rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                          rng.uniform(-0.4, 0.4)};
    r = flow_point(h.structure, origin, t, 1.0);
    for (int i = 0; i < 3; ++i) CHECK(r.point[i] == doctest::Approx(t[i]).epsilon(1e-12));
  }
}

TEST_CASE("flow semigroup property on random inputs") {
  const auto e = build_catalog_model("engel");
  Rng rng(derive_seed(5, "flows-semigroup"));
  const auto fields = compile_full_frame(e.structure);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x0{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                           rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
    std::vector<double> w{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                          rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const double a = rng.uniform(0.1, 0.5), b = rng.uniform(0.1, 0.5);
    const auto full = integrate_weighted(fields, w, x0, a + b, 256);
    const auto part1 = integrate_weighted(fields, w, x0, a, 128);
    const auto part2 = integrate_weighted(fields, w, part1.endpoint, b, 128);
    REQUIRE(full.ok);
    REQUIRE(part2.ok);
    for (int i = 0; i < 4; ++i)
      CHECK(full.endpoint[i] == doctest::Approx(part2.endpoint[i]).epsilon(1e-9));
  }
}

TEST_CASE("exp chart: identity at heisenberg origin, radius guard, inversion") {
  const auto h = build_catalog_model("heisenberg1");
  ExpChart chart(h.structure, {0, 0, 0}, 0.8);

  // Exp_0(0) = 0 exactly.
  const auto p0 = chart.exp(std::vector<double>{0, 0, 0});
  for (double v : p0) CHECK(v == doctest::Approx(0.0));

  // Exp_0(t) = t in these coordinates.
  Rng rng(derive_seed(5, "flows-exp"));
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> t{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                          rng.uniform(-0.2, 0.2)};
    const auto p = chart.exp(t);
    for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(t[i]).epsilon(1e-11));
  }

  CHECK_THROWS(chart.exp(std::vector<double>{1, 1, 1}));

  // Newton inversion converges on targets inside the chart.
  const auto e = build_catalog_model("engel");
  ExpChart chart_e(e.structure, {0.05, -0.04, 0.02, 0.01}, 0.8);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> t{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1),
                          rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)};
    const auto target = chart_e.exp(t);
    const auto inv = chart_e.exp_inverse(target);
    REQUIRE(inv.converged);
    for (int i = 0; i < 4; ++i) CHECK(inv.t[i] == doctest::Approx(t[i]).epsilon(1e-7));
  }
}

TEST_CASE("exp chart second-order expansion: slope of the remainder is 2") {
  // |Exp_z(t) - z - sum t_i X_i(z)| scales like |t|^2.
  const auto e = build_catalog_model("engel");
  const std::vector<double> base{0.1, -0.05, 0.04, 0.0};
  ExpChart chart(e.structure, base, 0.9);
  const Eigen::MatrixXd F = e.structure.frame_matrix(base);

  Rng rng(derive_seed(5, "flows-secondorder"));
  std::vector<double> dir{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  double dn = 0;
  for (double v : dir) dn += v * v;
  dn = std::sqrt(dn);
  for (auto& v : dir) v /= dn;

  std::vector<double> scales, remainders;
  for (double s = 0.02; s > 1e-4; s *= 0.6) {
    std::vector<double> t(4);
    for (int i = 0; i < 4; ++i) t[i] = s * dir[i];
    const auto p = chart.exp(t);
    double r2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      double lin = base[i];
      for (int j = 0; j < 4; ++j) lin += F(i, j) * t[j];
      r2 += (p[i] - lin) * (p[i] - lin);
    }
    const double rem = std::sqrt(r2);
    if (rem > 1e-14) {
      scales.push_back(s);
      remainders.push_back(rem);
    }
  }
  REQUIRE(scales.size() >= 4);
  const auto [slope, se] = loglog_slope(scales, remainders);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("gauge membership: boxes and cones, monotone in the parameter") {
  const std::vector<int> degs{1, 1, 2};
  const GaugeSpec q01(GaugeSpec::Kind::Box, 0.1, degs);

  CHECK(gauge_membership(q01, std::vector<double>{0.1, 0.1, 0.01}));   // boundary
  CHECK_FALSE(gauge_membership(q01, std::vector<double>{0, 0, 0.02}));  // 0.02 > 0.1^2

  // X(2): t = (0.1, 0, 0.04), |t| ~ 0.1077 -> 0.04 <= (2|t|)^2 ~ 0.0464.
  const GaugeSpec cone2(GaugeSpec::Kind::Cone, 2.0, degs);
  CHECK(gauge_membership(cone2, std::vector<double>{0.1, 0, 0.04}));
  const GaugeSpec cone1(GaugeSpec::Kind::Cone, 1.0, degs);
  CHECK_FALSE(gauge_membership(cone1, std::vector<double>{0.1, 0, 0.04}));

  // Monotonicity: Q(r1) subset of Q(r2), X(L1) subset of X(L2) sampled.
  Rng rng(derive_seed(5, "flows-gauge"));
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> t{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                          rng.uniform(-0.1, 0.1)};
    const double r1 = rng.uniform(0.01, 0.3);
    const double r2 = r1 + rng.uniform(0.0, 0.3);
    if (gauge_membership(GaugeSpec(GaugeSpec::Kind::Box, r1, degs), t))
      CHECK(gauge_membership(GaugeSpec(GaugeSpec::Kind::Box, r2, degs), t));
    if (gauge_membership(GaugeSpec(GaugeSpec::Kind::Cone, r1, degs), t))
      CHECK(gauge_membership(GaugeSpec(GaugeSpec::Kind::Cone, r2, degs), t));
  }
}
