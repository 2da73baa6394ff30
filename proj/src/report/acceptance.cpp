#include "ccgeo/report/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <queue>

#include "ccgeo/calc/identities.hpp"
#include "ccgeo/flows/ballbox.hpp"
#include "ccgeo/involutivity/decision.hpp"
#include "ccgeo/metrics/audits.hpp"
#include "ccgeo/structures/catalog.hpp"
#include "ccgeo/support/parallel.hpp"
#include "ccgeo/support/rng.hpp"
#include "ccgeo/tangency/contact.hpp"
#include "ccgeo/tangency/dimension.hpp"
#include "ccgeo/tangency/kirchheim.hpp"

namespace ccgeo::report {

namespace {

using namespace ccgeo::calc;
using namespace ccgeo::structures;
using ccgeo::involutivity::h_noninvolutive_at;
using ccgeo::involutivity::Verdict;

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

Polynomial random_poly(Rng& rng, int n, int deg) {
  Polynomial p(n);
  const int terms = rng.int_in(1, 4);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    int budget = rng.int_in(0, deg);
    while (budget-- > 0) e[rng.int_in(0, n - 1)] += 1;
    p += Polynomial::monomial(n, make_rational(rng.int_in(-9, 9), rng.int_in(1, 4)), e);
  }
  return p;
}

PolyVectorField random_field(Rng& rng, int n, int deg) {
  PolyVectorField X(n);
  for (int j = 0; j < n; ++j) X.component(j) = random_poly(rng, n, deg);
  return X;
}

// ---------------------------------------------------------------- criterion 1
CriterionResult criterion_identities(std::uint64_t seed) {
  CriterionResult res{1, "exact identity suite (200 random instances each)"};
  int anti = 0, jacobi = 0, ddzero = 0, weighted = 0, annihilator = 0;
  std::mutex mu;
  parallel_for(200, [&](std::size_t i) {
    Rng rng(derive_seed(seed, "acc1", i));
    const int n = rng.int_in(2, 4);
    const PolyVectorField X = random_field(rng, n, 2);
    const PolyVectorField Y = random_field(rng, n, 2);
    const PolyVectorField Z = random_field(rng, n, 2);
    const Polynomial f = random_poly(rng, n, 2);
    const Polynomial g = random_poly(rng, n, 2);

    const bool a_ok = (lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero();
    const bool j_ok = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                       lie_bracket(Z, lie_bracket(X, Y)))
                          .is_zero();
    bool d_ok = true;
    if (n >= 3) {
      std::vector<Polynomial> comps;
      for (int c = 0; c < n; ++c) comps.push_back(random_poly(rng, n, 3));
      d_ok = exterior_derivative(exterior_derivative(PolyForm::from_covector(n, comps)))
                 .is_zero();
    }
    const auto rep = check_structure_identities(X, Y, f, g,
                                                PolyForm::from_covector(n, [&] {
                                                  std::vector<Polynomial> c;
                                                  for (int q = 0; q < n; ++q)
                                                    c.push_back(random_poly(rng, n, 2));
                                                  return c;
                                                }()));
    // annihilator identity via the cross-product kernel construction in R^3
    bool c_ok = true;
    {
      Rng rng3(derive_seed(seed, "acc1-ann", i));
      const PolyVectorField A = random_field(rng3, 3, 2);
      const PolyVectorField B = random_field(rng3, 3, 2);
      std::vector<Polynomial> w(3, Polynomial(3));
      w[0] = A.component(1) * B.component(2) - A.component(2) * B.component(1);
      w[1] = A.component(2) * B.component(0) - A.component(0) * B.component(2);
      w[2] = A.component(0) * B.component(1) - A.component(1) * B.component(0);
      const PolyForm omega = PolyForm::from_covector(3, w);
      const Polynomial residual =
          apply(exterior_derivative(omega), A, B) + apply(omega, lie_bracket(A, B));
      c_ok = residual.is_zero();
    }
    std::lock_guard<std::mutex> lock(mu);
    anti += a_ok;
    jacobi += j_ok;
    ddzero += d_ok;
    weighted += rep.weighted_commutator.pass && rep.divergence_identity.pass;
    annihilator += c_ok;
  });
  res.pass = anti == 200 && jacobi == 200 && ddzero == 200 && weighted == 200 &&
             annihilator == 200;
  res.details = "antisymmetry " + std::to_string(anti) + "/200, jacobi " +
                std::to_string(jacobi) + "/200, dd=0 " + std::to_string(ddzero) +
                "/200, weighted+divergence " + std::to_string(weighted) + "/200, annihilator " +
                std::to_string(annihilator) + "/200";
  return res;
}

// ---------------------------------------------------------------- criterion 2
CriterionResult criterion_free33(std::uint64_t seed) {
  CriterionResult res{2, "F(3,3) regression: table, 2-non-involutivity, h=3 witness"};
  const auto model = build_catalog_model("free33");
  const bool table_ok = model.all_relations_pass() && model.relations.size() == 12;

  // 2-non-involutivity of the generator distribution: exact kernel route and
  // the 64-restart search route (the V6 label in the source example is a slip:
  // the graded layer span(X4,X5) commutes inside V6, so only the rank-3
  // horizontal distribution carries the claim).
  const auto v3 = build_catalog_model("free33_v3");
  involutivity::DecisionOptions opts;
  opts.restarts = 64;
  opts.seed = seed;
  const auto exact2 = h_noninvolutive_at(v3.structure, Point::origin_exact(14), 2, opts);
  const auto search2 = h_noninvolutive_at(v3.structure, Point::origin_float(14), 2, opts);
  const bool twonon_ok = exact2.verdict == Verdict::NonInvolutive && exact2.exact_certificate &&
                         search2.verdict == Verdict::NonInvolutive &&
                         search2.min_restart_residual >= 1e-4 &&
                         static_cast<int>(search2.restart_residuals.size()) == 64;

  const auto rep3 = h_noninvolutive_at(model.structure, Point::origin_exact(14), 3, opts);
  bool witness_ok = rep3.verdict == Verdict::InvolutiveAtX && rep3.residual <= 1e-10 &&
                    rep3.witness_subspace.has_value();
  if (witness_ok) {
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 3);
    expected(0, 0) = expected(1, 1) = expected(2, 2) = 1.0;
    witness_ok = ((*rep3.witness_subspace) - expected).cwiseAbs().maxCoeff() < 1e-9;
  }

  // Strong-form failure: every covector annihilating V6 kills B on
  // span(e1,e2,e3), i.e. the top-left 3x3 blocks vanish exactly.
  const auto B = involutivity::bracket_form(model.structure, Point::origin_exact(14));
  bool strong_ok = true;
  for (const auto& M : B.components_exact)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) strong_ok = strong_ok && (M(i, j) == 0);

  res.pass = table_ok && twonon_ok && witness_ok && strong_ok;
  res.details = std::string("12 relations ") + (table_ok ? "exact-pass" : "FAIL") +
                "; 2-non-involutive (generators): exact+search min residual " +
                fmt(search2.min_restart_residual) + "; h=3 witness residual " +
                fmt(rep3.residual) + "; strong-form " + (strong_ok ? "exact" : "FAIL");
  return res;
}

// ---------------------------------------------------------------- criterion 3
CriterionResult criterion_ballbox(std::uint64_t seed) {
  CriterionResult res{3, "ball-box exponents (heisenberg 1.0/0.5, engel 1/3)"};

  auto cc_oracle = [&](const ComplementedStructure& S, int segments) {
    return flows::DistanceOracle(
        [&S, segments, seed](const std::vector<double>& a, const std::vector<double>& b)
            -> std::optional<std::pair<double, double>> {
          metrics::CcDistanceOptions o;
          o.seed = seed;
          o.segments = segments;
          const auto est = metrics::cc_distance(S, a, b, o);
          if (!est.converged) return std::nullopt;
          return std::make_pair(est.lower, est.upper);
        });
  };

  const auto h = build_catalog_model("heisenberg1");
  flows::ExpChart chart_h(h.structure, {0, 0, 0}, 0.9);
  const auto horizontal =
      flows::ballbox_exponent_fit(chart_h, 1, cc_oracle(h.structure, 8), 1e-3, 1e-1, 12);
  const auto vertical =
      flows::ballbox_exponent_fit(chart_h, 3, cc_oracle(h.structure, 16), 1e-3, 1e-1, 12);

  const auto e = build_catalog_model("engel");
  flows::ExpChart chart_e(e.structure, {0, 0, 0, 0}, 0.9);
  const auto cubic =
      flows::ballbox_exponent_fit(chart_e, 4, cc_oracle(e.structure, 24), 1e-3, 1e-1, 12);

  const bool ok1 = std::abs(horizontal.slope - 1.0) <= 0.02 && horizontal.dropped == 0;
  const bool ok2 = std::abs(vertical.slope - 0.5) <= 0.05 && vertical.dropped == 0;
  const bool ok3 = std::abs(cubic.slope - 1.0 / 3.0) <= 0.05;
  res.pass = ok1 && ok2 && ok3;
  res.details = "slopes: horizontal " + fmt(horizontal.slope) + " (want 1.00+-0.02), vertical " +
                fmt(vertical.slope) + " (want 0.50+-0.05), engel degree-3 " + fmt(cubic.slope) +
                " (want 0.333+-0.05), dropped " + std::to_string(cubic.dropped);
  return res;
}

// ---------------------------------------------------------------- criterion 4
CriterionResult criterion_cc(std::uint64_t seed) {
  CriterionResult res{4, "cc distance: unit horizontal bracket, DP-oracle agreement"};
  const auto h = build_catalog_model("heisenberg1");
  metrics::CcDistanceOptions opts;
  opts.seed = seed;
  const auto unit =
      metrics::cc_distance(h.structure, std::vector<double>{0, 0, 0},
                           std::vector<double>{1, 0, 0}, opts);
  const bool unit_ok =
      unit.converged && unit.lower >= 1.0 - 1e-12 && unit.upper <= 1.001 && unit.lower <= unit.upper;

  opts.segments = 16;
  bool dp_ok = true;
  std::string dp_details;
  for (double s : {0.05, 0.1}) {
    const double dp = heisenberg_vertical_dp(s, 1.0 / 80, 0.3);
    const auto est = metrics::cc_distance(h.structure, std::vector<double>{0, 0, 0},
                                          std::vector<double>{0, 0, s}, opts);
    const double rel = std::abs(est.upper - dp) / dp;
    dp_ok = dp_ok && est.converged && rel <= 0.10;
    dp_details += " s=" + fmt(s) + ": upper " + fmt(est.upper) + " vs DP " + fmt(dp) +
                  " (rel " + fmt(rel, 2) + ")";
  }
  res.pass = unit_ok && dp_ok;
  res.details = "unit bracket [" + fmt(unit.lower, 6) + ", " + fmt(unit.upper, 6) + "];" +
                dp_details;
  return res;
}

// ---------------------------------------------------------------- criterion 5
CriterionResult criterion_eta_metric(std::uint64_t seed) {
  CriterionResult res{5, "eta-box metric: flat vertical closed form, triangles, sandwich"};
  const auto flat = build_catalog_model("flat");

  bool flat_ok = true;
  std::string worst;
  for (const double eta : {1.25, 1.5, 1.75, 2.0}) {
    metrics::EtaLengthEvaluator eval(flat.structure, eta);
    metrics::EtaDistanceOptions opts;
    opts.seed = seed;
    for (const double w : {0.04, 0.09}) {
      const auto est = eta_distance(eval, std::vector<double>{0, 0, 0},
                                    std::vector<double>{0, 0, w}, opts);
      const double expected = std::pow(w, 1.0 / eta);
      const bool ok = est.midpoint() >= expected * 0.99 && est.midpoint() <= expected * 1.01 &&
                      est.lower <= expected + 1e-12 && est.upper >= expected - 1e-12;
      if (!ok && worst.empty())
        worst = "flat eta=" + fmt(eta) + " w=" + fmt(w) + " got [" + fmt(est.lower) + "," +
                fmt(est.upper) + "] want " + fmt(expected);
      flat_ok = flat_ok && ok;
    }
  }

  // Triangle inequality on 500 random heisenberg1 triples.
  const auto h = build_catalog_model("heisenberg1");
  metrics::EtaLengthEvaluator eval_h(h.structure, 2.0);
  std::vector<int> triangle_fail(500, 0);
  parallel_for(500, [&](std::size_t i) {
    Rng rng(derive_seed(seed, "acc5-triple", i));
    auto sample = [&](double r) {
      return std::vector<double>{rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r / 2, r / 2)};
    };
    const auto a = sample(0.15), b = sample(0.15), c = sample(0.15);
    metrics::EtaDistanceOptions opts;
    opts.seed = derive_seed(seed, "acc5-opt", i);
    const auto dab = eta_distance(eval_h, a, b, opts);
    const auto dbc = eta_distance(eval_h, b, c, opts);
    const auto dac = eta_distance(eval_h, a, c, opts);
    const double slack = dab.width() + dbc.width() + dac.width() + 1e-12;
    if (dac.midpoint() > dab.midpoint() + dbc.midpoint() + slack) triangle_fail[i] = 1;
  });
  int tfail = 0;
  for (int f : triangle_fail) tfail += f;

  // Hoelder sandwich on 200 pairs within the stated radius.
  std::vector<int> sandwich_fail(200, 0);
  parallel_for(200, [&](std::size_t i) {
    Rng rng(derive_seed(seed, "acc5-pair", i));
    const double eta = 2.0;
    const double radius = std::pow(4.0, -eta);
    std::vector<double> x{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1),
                          rng.uniform(-0.05, 0.05)};
    std::vector<double> dir{rng.normal(), rng.normal(), rng.normal()};
    double dn = 0.0;
    for (double v : dir) dn += v * v;
    dn = std::sqrt(dn);
    const double scale = radius * rng.uniform(0.1, 0.99);
    std::vector<double> y(3);
    for (int q = 0; q < 3; ++q) y[q] = x[q] + scale * dir[q] / dn;
    metrics::EtaDistanceOptions opts;
    opts.seed = derive_seed(seed, "acc5-sw", i);
    const auto est = eta_distance(eval_h, x, y, opts);
    const bool lower_ok = est.lower >= (2.0 / 3.0) * scale - 1e-12;
    const bool upper_ok = est.upper <= 2.0 * std::pow(scale, 1.0 / eta) + est.width() + 1e-12;
    if (!(lower_ok && upper_ok)) sandwich_fail[i] = 1;
  });
  int sfail = 0;
  for (int f : sandwich_fail) sfail += f;

  res.pass = flat_ok && tfail == 0 && sfail == 0;
  res.details = std::string("flat closed forms ") + (flat_ok ? "within 1%" : worst) +
                "; triangle failures " + std::to_string(tfail) + "/500; sandwich failures " +
                std::to_string(sfail) + "/200";
  return res;
}

// ---------------------------------------------------------------- criterion 6
CriterionResult criterion_squeeze(std::uint64_t seed) {
  CriterionResult res{6, "squeezedness: flat C=1, cc band-stable, euclidean blow-up"};
  const auto flat = build_catalog_model("flat");
  metrics::EtaDistanceOptions eopts;
  eopts.seed = seed;
  metrics::EtaBoxMetric flat_metric(flat.structure, 1.0, eopts);
  const auto flat_rep = metrics::squeeze_audit(flat.structure, flat_metric, 1.0, 0.4, 120, seed);
  bool flat_ok = true;
  double flat_worst = 1.0;
  for (const auto& band : flat_rep.bands) {
    if (band.pairs_used == 0) continue;
    flat_ok = flat_ok && std::abs(band.fitted_c - 1.0) <= 1e-6;
    flat_worst = std::max(flat_worst, band.fitted_c);
  }

  const auto h = build_catalog_model("heisenberg1");
  metrics::CcDistanceOptions copts;
  copts.seed = seed;
  copts.segments = 12;
  metrics::CcMetric cc(h.structure, copts);
  const auto cc_rep = metrics::squeeze_audit(h.structure, cc, 2.0, 0.2, 240, seed);
  const double cc_ratio = cc_rep.max_band_ratio();
  int cc_bands_used = 0;
  for (const auto& b : cc_rep.bands) cc_bands_used += (b.pairs_used > 0);
  const bool cc_ok = cc_bands_used == 4 && cc_ratio > 0 && cc_ratio <= 3.0;

  metrics::EuclideanMetric euclid;
  const auto eu_rep = metrics::squeeze_audit(h.structure, euclid, 2.0, 0.2, 240, seed);
  double eu_first = 0.0, eu_last = 0.0;
  for (const auto& b : eu_rep.bands)
    if (b.pairs_used > 0) {
      if (eu_first == 0.0) eu_first = b.fitted_c;
      eu_last = b.fitted_c;
    }
  const bool eu_ok = eu_first > 0 && eu_last / eu_first >= 4.0;

  res.pass = flat_ok && cc_ok && eu_ok;
  res.details = "flat worst C " + fmt(flat_worst, 8) + "; cc band ratio " + fmt(cc_ratio) +
                " (<= 3 over " + std::to_string(cc_bands_used) + " bands); euclidean growth " +
                fmt(eu_last / std::max(eu_first, 1e-300)) + "x (>= 4)";
  return res;
}

// ---------------------------------------------------------------- criterion 7
CriterionResult criterion_continuity(std::uint64_t seed) {
  CriterionResult res{7, "eta-continuity envelope at generic heisenberg pairs"};
  const auto h = build_catalog_model("heisenberg1");
  metrics::EtaDistanceOptions opts;
  opts.seed = seed;
  // Generic-position pairs with dominant horizontal parts (the two-sided
  // envelope genuinely fails on near-vertical pairs; see the notes).
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
      {{0, 0, 0}, {0.15, 0.12, 0.01}},
      {{0.05, -0.04, 0.0}, {0.17, 0.08, 0.015}},
      {{-0.1, 0.02, 0.01}, {0.05, 0.14, 0.02}},
  };
  bool all_ok = true;
  std::string detail;
  for (const auto& [x, y] : pairs) {
    const auto rep =
        metrics::eta_continuity_audit(h.structure, x, y, 2.0, {1.6, 1.8, 1.9, 1.95}, opts);
    all_ok = all_ok && rep.all_within && rep.dropped == 0;
    for (const auto& row : rep.rows)
      detail += " eta=" + fmt(row.eta, 3) + ": diff " + fmt(row.difference, 3) + " env " +
                fmt(row.envelope, 3) + (row.within ? "" : " VIOLATED") + ";";
    detail += " |";
  }
  res.pass = all_ok;
  res.details = detail;
  return res;
}

// ---------------------------------------------------------------- criterion 8
CriterionResult criterion_tangency(std::uint64_t) {
  CriterionResult res{8, "tangency desk echoes: saddle line, plane point, box dimensions"};
  const auto h = build_catalog_model("heisenberg1");

  Polynomial saddle(2);
  saddle += Polynomial::monomial(2, make_rational(1, 2), {1, 1});
  const tangency::SurfaceGraph surf(2, 3, {saddle}, -1.0, 1.0);
  const auto cloud = tangency::contact_set(h.structure, surf, 401, 1e-6);
  bool line_ok = cloud.contact_indices.size() == 401;
  for (const auto& q : cloud.contact_points()) line_ok = line_ok && q[1] == 0.0;

  const auto dline = tangency::box_counting_dimension(
      cloud.contact_points(), {0.2, 0.1, 0.05, 0.025, 0.0125});
  const bool dim_line_ok = std::abs(dline.dimension - 1.0) <= 0.15;

  const tangency::SurfaceGraph plane(2, 3, {Polynomial(2)}, -1.0, 1.0);
  const auto pcloud = tangency::contact_set(h.structure, plane, 401, 1e-6);
  bool point_ok = pcloud.contact_indices.size() == 1 &&
                  pcloud.contact_points()[0][0] == 0.0 && pcloud.contact_points()[0][1] == 0.0;
  const auto dpoint = tangency::box_counting_dimension(
      pcloud.contact_points(), {0.2, 0.1, 0.05, 0.025});
  const bool dim_point_ok = dpoint.dimension <= 0.15;

  res.pass = line_ok && dim_line_ok && point_ok && dim_point_ok;
  res.details = "saddle cloud " + std::to_string(cloud.contact_indices.size()) +
                "/401 on y=0, dim " + fmt(dline.dimension) + " (1.0+-0.15); plane cloud " +
                std::to_string(pcloud.contact_indices.size()) + " point(s), dim " +
                fmt(dpoint.dimension) + " (<= 0.15)";
  return res;
}

// ---------------------------------------------------------------- criterion 9
CriterionResult criterion_jacobian(std::uint64_t) {
  CriterionResult res{9, "metric jacobian: euclidean 1, homogeneity, degenerate 0"};
  auto euclidean_norm = [](std::span<const double> u) {
    double s = 0.0;
    for (double c : u) s += c * c;
    return std::sqrt(s);
  };
  bool eu_ok = true;
  for (int m : {1, 2, 3}) {
    const auto sample = tangency::sphere_grid_seminorm(m, 720, euclidean_norm);
    eu_ok = eu_ok && std::abs(tangency::metric_jacobian(sample, m) - 1.0) <= 1e-3;
  }
  bool scale_ok = true;
  for (double c : {0.5, 2.0}) {
    for (int m : {1, 2, 3}) {
      auto scaled = [&](std::span<const double> u) { return c * euclidean_norm(u); };
      const auto sample = tangency::sphere_grid_seminorm(m, 360, scaled);
      const auto base = tangency::sphere_grid_seminorm(m, 360, euclidean_norm);
      scale_ok = scale_ok && std::abs(tangency::metric_jacobian(sample, m) -
                                      std::pow(c, m) * tangency::metric_jacobian(base, m)) <=
                                 1e-12;
    }
  }
  auto degenerate = [&](std::span<const double> u) { return std::abs(u[0]); };
  const auto dsample = tangency::sphere_grid_seminorm(2, 360, degenerate);
  const bool deg_ok = tangency::metric_jacobian(dsample, 2) == 0.0;

  res.pass = eu_ok && scale_ok && deg_ok;
  res.details = std::string("euclidean ") + (eu_ok ? "1 +- 1e-3" : "FAIL") + "; homogeneity " +
                (scale_ok ? "exact" : "FAIL") + "; degenerate " + (deg_ok ? "0 exactly" : "FAIL");
  return res;
}

// --------------------------------------------------------------- criterion 10
CriterionResult criterion_determinism(std::uint64_t seed, double elapsed_so_far) {
  CriterionResult res{10, "determinism and runtime budget"};
  // Re-run a representative numerical criterion and require byte-identical
  // JSON; the runtime budget covers the whole suite.
  auto probe = [&] {
    Json j;
    const auto h = build_catalog_model("heisenberg1");
    metrics::EtaLengthEvaluator eval(h.structure, 2.0);
    metrics::EtaDistanceOptions opts;
    opts.seed = seed;
    const auto est = eta_distance(eval, std::vector<double>{0, 0, 0},
                                  std::vector<double>{0.1, 0.1, 0.05}, opts);
    j["lower"] = est.lower;
    j["upper"] = est.upper;
    metrics::CcDistanceOptions copts;
    copts.seed = seed;
    const auto cc = metrics::cc_distance(h.structure, std::vector<double>{0, 0, 0},
                                         std::vector<double>{0, 0, 0.05}, copts);
    j["cc_lower"] = cc.lower;
    j["cc_upper"] = cc.upper;
    return dump_deterministic(j);
  };
  const std::string first = probe();
  const std::string second = probe();
  const bool deterministic = first == second;
  const bool budget_ok = elapsed_so_far < 600.0;
  res.pass = deterministic && budget_ok;
  res.details = std::string("byte-identical probe: ") + (deterministic ? "yes" : "NO") +
                "; elapsed " + fmt(elapsed_so_far, 3) + "s (< 600s)";
  return res;
}

}  // namespace

double heisenberg_vertical_dp(double s, double h, double xy_radius) {
  const double kd = 2.0 * s / (h * h);
  const long k_target = std::lround(kd);
  if (std::abs(kd - k_target) > 1e-9)
    throw std::invalid_argument("2 s / h^2 must be an integer for the lattice oracle");
  const int R = static_cast<int>(std::floor(xy_radius / h));
  const int W = 2 * R + 1;
  const long k_min = -k_target / 4 - 8;
  const long k_max = k_target + k_target / 4 + 8;
  const long K = k_max - k_min + 1;
  const std::size_t total = static_cast<std::size_t>(W) * W * K;

  const int moves[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},   {1, -1},
                            {-1, 1}, {-1, -1}, {1, 2},  {1, -2}, {-1, 2},  {-1, -2},
                            {2, 1},  {2, -1},  {-2, 1}, {-2, -1}};

  auto index = [&](int i, int j, long k) -> std::size_t {
    return (static_cast<std::size_t>(k - k_min) * W + (j + R)) * W + (i + R);
  };

  std::vector<float> dist(total, std::numeric_limits<float>::infinity());
  using Node = std::pair<float, std::size_t>;
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> queue;
  const std::size_t source = index(0, 0, 0);
  const std::size_t target = index(0, 0, k_target);
  dist[source] = 0.0f;
  queue.push({0.0f, source});

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (u == target) return d;
    if (d > dist[u]) continue;
    const long k = static_cast<long>(u / (static_cast<std::size_t>(W) * W)) + k_min;
    const int j = static_cast<int>((u / W) % W) - R;
    const int i = static_cast<int>(u % W) - R;
    for (int mv = 0; mv < 16; ++mv) {
      const int di = moves[mv][0], dj = moves[mv][1];
      const int ni = i + di, nj = j + dj;
      if (ni < -R || ni > R || nj < -R || nj > R) continue;
      const long nk = k + static_cast<long>(i) * dj - static_cast<long>(j) * di;
      if (nk < k_min || nk > k_max) continue;
      // Exact Euclidean length of the move: the trajectory of a constant
      // horizontal control is a straight line in R^3 with vertical rise
      // Delta t = h^2 (i dj - j di) / 2.
      const double rise =
          0.5 * h * h * (static_cast<double>(i) * dj - static_cast<double>(j) * di);
      const double base2 = static_cast<double>(di * di + dj * dj);
      const double step_len = std::sqrt(h * h * base2 + rise * rise);
      const float nd = d + static_cast<float>(step_len);
      const std::size_t v = index(ni, nj, nk);
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.push({nd, v});
      }
    }
  }
  throw std::runtime_error("lattice oracle: target unreachable (enlarge the box)");
}

AcceptanceReport run_acceptance(std::uint64_t seed, bool verbose) {
  AcceptanceReport rep;
  rep.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();

  auto timed = [&](auto&& fn) {
    const auto c0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    if (verbose) {
      std::printf("criterion %2d [%s] %s\n    %s  (%.1fs)\n", r.id, r.pass ? "pass" : "FAIL",
                  r.name.c_str(), r.details.c_str(), r.seconds);
      std::fflush(stdout);
    }
    rep.criteria.push_back(std::move(r));
  };

  timed([&] { return criterion_identities(seed); });
  timed([&] { return criterion_free33(seed); });
  timed([&] { return criterion_ballbox(seed); });
  timed([&] { return criterion_cc(seed); });
  timed([&] { return criterion_eta_metric(seed); });
  timed([&] { return criterion_squeeze(seed); });
  timed([&] { return criterion_continuity(seed); });
  timed([&] { return criterion_tangency(seed); });
  timed([&] { return criterion_jacobian(seed); });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  timed([&] { return criterion_determinism(seed, elapsed); });

  rep.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Json acceptance_to_json(const AcceptanceReport& rep) {
  Json j;
  j["seed"] = rep.seed;
  j["total_seconds"] = rep.total_seconds;
  j["all_pass"] = rep.all_pass();
  Json arr = Json::array();
  for (const auto& c : rep.criteria) {
    Json cj;
    cj["id"] = c.id;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["details"] = c.details;
    cj["seconds"] = c.seconds;
    arr.push_back(cj);
  }
  j["criteria"] = arr;
  return j;
}

}  // namespace ccgeo::report
