#include <cmath>

#include "ccgeo/flows/flow.hpp"
#include "ccgeo/tangency/contact.hpp"
#include "ccgeo/tangency/dimension.hpp"
#include "ccgeo/tangency/kirchheim.hpp"
#include "ccgeo/structures/catalog.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ccgeo;
using namespace ccgeo::tangency;
using structures::build_catalog_model;
using calc::Polynomial;

namespace {

// t = xy/2 over [-1,1]^2 in R^3.
SurfaceGraph saddle_surface() {
  Polynomial phi(2);
  phi += Polynomial::monomial(2, make_rational(1, 2), {1, 1});
  return SurfaceGraph(2, 3, {phi}, -1.0, 1.0);
}

SurfaceGraph plane_surface() { return SurfaceGraph(2, 3, {Polynomial(2)}, -1.0, 1.0); }

}  // namespace

TEST_CASE("contact deficiency: saddle surface touches V exactly on y = 0") {
  const auto h = build_catalog_model("heisenberg1");
  const auto surf = saddle_surface();

  // On the line y = 0 the tangent frame matches (X1, X2).
  for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
    CHECK(contact_deficiency(h.structure, surf, std::vector<double>{x, 0.0}) < 1e-14);
  }
  // Off the line the tangent leaves V.
  for (double y : {-0.5, 0.01, 0.3}) {
    CHECK(contact_deficiency(h.structure, surf, std::vector<double>{0.2, y}) > 1e-4);
  }

  // Plane t = 0: contact only at the origin; at (0,1) the residual of e1
  // against V(0,1,0) is the vertical vector (0,0,-1/2) scaled.
  const auto plane = plane_surface();
  CHECK(contact_deficiency(h.structure, plane, std::vector<double>{0.0, 0.0}) < 1e-14);
  CHECK(contact_deficiency(h.structure, plane, std::vector<double>{0.0, 1.0}) > 0.1);

  // Full tangent: flat model plane z = 0 is everywhere tangent to V.
  const auto flat = build_catalog_model("flat");
  CHECK(contact_deficiency(flat.structure, plane, std::vector<double>{0.3, -0.7}) < 1e-14);
}

TEST_CASE("contact deficiency is frame invariant") {
  const auto h = build_catalog_model("heisenberg1");
  auto S2 = h.structure;
  // Reparametrize the frame: X1' = 2 X1 + X2, X2' = X2 - X1.
  std::vector<calc::PolyVectorField> frame2;
  frame2.push_back(S2.distribution.frame[0] * Rational(2) + S2.distribution.frame[1]);
  frame2.push_back(S2.distribution.frame[1] - S2.distribution.frame[0]);
  S2.distribution.frame = frame2;
  const auto surf = saddle_surface();
  Rng rng(derive_seed(31, "tangency-frame"));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> q{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double d1 = contact_deficiency(h.structure, surf, q);
    const double d2 = contact_deficiency(S2, surf, q);
    CHECK(std::abs(d1 - d2) <= 1e-10);
  }
}

TEST_CASE("contact_set: grid line, single point, full grid") {
  const auto h = build_catalog_model("heisenberg1");
  const auto surf = saddle_surface();

  const auto cloud = contact_set(h.structure, surf, 101, 1e-6);
  // Exactly the grid line y = 0.
  CHECK(cloud.contact_indices.size() == 101);
  for (const auto& q : cloud.contact_points()) CHECK(q[1] == doctest::Approx(0.0));

  const auto plane_cloud = contact_set(h.structure, plane_surface(), 101, 1e-6);
  REQUIRE(plane_cloud.contact_indices.size() == 1);
  CHECK(plane_cloud.contact_points()[0][0] == doctest::Approx(0.0));
  CHECK(plane_cloud.contact_points()[0][1] == doctest::Approx(0.0));

  // tau >= 1 keeps everything (deficiency is a sine, bounded by 1).
  const auto all = contact_set(h.structure, plane_surface(), 21, 1.0);
  CHECK(all.contact_indices.size() == 21 * 21);

  // Histogram covers the whole grid.
  std::size_t total = 0;
  for (int c : cloud.histogram) total += c;
  CHECK(total == cloud.grid.size());
}

TEST_CASE("box counting dimension: point, line, square") {
  const std::vector<double> scales{0.5, 0.25, 0.125, 0.0625, 0.03125};

  const auto single = box_counting_dimension({{0.3, 0.4}}, scales);
  CHECK(std::abs(single.dimension) <= 0.05);

  std::vector<std::vector<double>> line;
  for (int i = 0; i <= 400; ++i) line.push_back({-1.0 + 2.0 * i / 400, 0.0});
  const auto dline = box_counting_dimension(line, scales);
  CHECK(dline.dimension == doctest::Approx(1.0).epsilon(0.1));

  // Dyadic scales well above the grid spacing keep the boundary bias small.
  std::vector<std::vector<double>> square;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) square.push_back({i / 200.0, j / 200.0});
  const auto dsq =
      box_counting_dimension(square, std::vector<double>{0.08, 0.04, 0.02, 0.01});
  CHECK(dsq.dimension == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS(box_counting_dimension({}, scales));
}

TEST_CASE("hausdorff premeasure: euclidean segment, horizontal segment, empty set") {
  metrics::EuclideanMetric euclid;

  std::vector<std::vector<double>> segment;
  for (int i = 0; i <= 500; ++i) segment.push_back({static_cast<double>(i) / 500});
  const auto est = hausdorff_premeasure(segment, euclid, 1.0, 0.1);
  CHECK(est.value == doctest::Approx(1.0).epsilon(0.1));

  CHECK(hausdorff_premeasure({}, euclid, 1.0, 0.1).value == 0.0);

  // Unit X1-segment of heisenberg under d_V with exponent 2: small and
  // decreasing in delta_cov (the set is one-dimensional and horizontal).
  const auto h = build_catalog_model("heisenberg1");
  metrics::CcDistanceOptions cc_opts;
  cc_opts.segments = 6;
  cc_opts.restarts = 2;
  cc_opts.descent_iterations = 12;
  metrics::CcMetric ccm(h.structure, cc_opts);
  std::vector<std::vector<double>> hseg;
  for (int i = 0; i <= 60; ++i) hseg.push_back({static_cast<double>(i) / 60, 0.0, 0.0});
  double previous = 0.21;
  for (double delta : {0.05, 0.025, 0.0125}) {
    const auto e2 = hausdorff_premeasure(hseg, ccm, 2.0, delta);
    CHECK(e2.value <= 0.2);
    CHECK(e2.value <= previous + 1e-12);
    previous = e2.value;
  }
}

TEST_CASE("metric differential: flat identity, heisenberg horizontal and vertical") {
  const std::vector<double> radii{0.2, 0.1, 0.05, 0.025, 0.0125};

  // Flat model, horizontal direction: MD = |u|.
  const auto flat = build_catalog_model("flat");
  metrics::EtaBoxMetric flat_metric(flat.structure, 1.5);
  SampledMap embed3 = [](std::span<const double> q) {
    return std::vector<double>{q[0], q[1], 0.0};
  };
  const auto md = metric_differential(embed3, {0.1, 0.0}, {0.6, 0.8}, flat_metric, radii);
  CHECK_FALSE(md.divergent);
  CHECK(md.value == doctest::Approx(1.0).epsilon(0.02));

  // heisenberg f(s) = (s,0,0) under d_V: MD[1] = 1.
  const auto h = build_catalog_model("heisenberg1");
  metrics::CcDistanceOptions cc_opts;
  cc_opts.segments = 6;
  cc_opts.restarts = 2;
  cc_opts.descent_iterations = 15;
  metrics::CcMetric ccm(h.structure, cc_opts);
  SampledMap line = [](std::span<const double> s) {
    return std::vector<double>{s[0], 0.0, 0.0};
  };
  const auto md1 = metric_differential(line, {0.0}, {1.0}, ccm, radii);
  CHECK_FALSE(md1.divergent);
  CHECK(md1.value == doctest::Approx(1.0).epsilon(0.02));

  // heisenberg f(s) = (0,0,s) under d_V: quotients ~ r^{-1/2} diverge.
  SampledMap vertical = [](std::span<const double> s) {
    return std::vector<double>{0.0, 0.0, s[0]};
  };
  const auto mdv = metric_differential(vertical, {0.0}, {1.0}, ccm, radii);
  CHECK(mdv.divergent);
}

TEST_CASE("metric jacobian: euclidean, scaling, degenerate direction") {
  auto euclidean_norm = [](std::span<const double> u) {
    double s = 0.0;
    for (double c : u) s += c * c;
    return std::sqrt(s);
  };

  for (int m : {1, 2, 3, 4}) {
    const auto sample = sphere_grid_seminorm(m, 360, euclidean_norm);
    CHECK(metric_jacobian(sample, m) == doctest::Approx(1.0).epsilon(1e-3));
  }

  // Homogeneity: scaling the seminorm by c scales J by c^m, exactly.
  for (double c : {0.5, 2.0, 3.7}) {
    for (int m : {1, 2, 3}) {
      auto scaled = [&](std::span<const double> u) { return c * euclidean_norm(u); };
      const auto sample = sphere_grid_seminorm(m, 180, scaled);
      const auto base = sphere_grid_seminorm(m, 180, euclidean_norm);
      CHECK(metric_jacobian(sample, m) ==
            doctest::Approx(std::pow(c, m) * metric_jacobian(base, m)).epsilon(1e-12));
    }
  }

  // A single degenerate direction forces J = 0 exactly.
  auto degenerate = [&](std::span<const double> u) {
    return std::abs(u[0]);  // vanishes along e2
  };
  const auto sample = sphere_grid_seminorm(2, 360, degenerate);
  CHECK(metric_jacobian(sample, 2) == 0.0);
}

TEST_CASE("cone inclusion: V-orthogonal deviation on a horizontal curve is quadratic") {
  // Sample pairs on the image of a horizontal curve; the deviation from
  // V(base) orthogonal complement scales like the squared distance.
  const auto h = build_catalog_model("heisenberg1");
  const auto fields = flows::compile_frame(h.structure);

  std::vector<std::vector<double>> pts;
  std::vector<double> p{0.0, 0.0, 0.0};
  pts.push_back(p);
  for (int step = 0; step < 40; ++step) {
    const double a = 0.05 * step;  // gentle turning keeps the pinch constant small
    const std::vector<double> w{std::cos(a), std::sin(a)};
    const auto traj = flows::integrate_weighted(fields, w, p, 0.02, 8, nullptr);
    p = traj.endpoint;
    pts.push_back(p);
  }

  Eigen::MatrixXd pw_base;
  metrics::EtaLengthEvaluator eval(h.structure, 2.0);
  double fitted = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Eigen::MatrixXd pv, pw;
    eval.projections(pts[i], &pv, &pw);
    // orthogonal projection onto V(x)^perp: here V(x)^perp is spanned by the
    // unit normal; use I - Q Q^T with Q an orthonormal basis of V(x).
    Eigen::MatrixXd A(3, 2);
    for (int j = 0; j < 2; ++j) {
      const auto v = h.structure.distribution.frame[j].evaluate(std::span<const double>(pts[i]));
      for (int r = 0; r < 3; ++r) A(r, j) = v[r];
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(3, 2);
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Eigen::Vector3d d;
      for (int r = 0; r < 3; ++r) d(r) = pts[j][r] - pts[i][r];
      const double dist = d.norm();
      // The inclusion is local: only pairs within a small ball around the
      // base point are in its regime.
      if (dist < 1e-9 || dist > 0.1) continue;
      const double dev = (d - Q * (Q.transpose() * d)).norm();
      fitted = std::max(fitted, dev / (dist * dist));
    }
  }
  CHECK(fitted > 0.0);
  CHECK(fitted < 10.0);  // finite quadratic-pinch constant on this curve
}
