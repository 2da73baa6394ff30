#include "ccgeo/metrics/cc_distance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ccgeo/support/rng.hpp"

namespace ccgeo::metrics {

namespace {

using flows::CompiledField;

struct Shooting {
  const ComplementedStructure* S;
  std::vector<CompiledField> frame;
  std::vector<double> x0;
  std::vector<double> target;
  int segments;
  int rk_steps;

  int k() const { return S->k(); }
  int dim_u() const { return segments * k(); }

  // Integrates the whole control path; returns endpoint and length.
  flows::Trajectory run(const Eigen::VectorXd& u) const {
    std::vector<double> pos = x0;
    double length = 0.0;
    const double dt = 1.0 / segments;
    for (int s = 0; s < segments; ++s) {
      std::vector<double> w(k());
      for (int j = 0; j < k(); ++j) w[j] = u(s * k() + j);
      auto traj = flows::integrate_weighted(frame, w, pos, dt, rk_steps, &S->box, 1.0);
      pos = traj.endpoint;
      length += traj.length;
      if (!traj.ok) {
        flows::Trajectory bad;
        bad.ok = false;
        bad.endpoint = pos;
        bad.length = length;
        return bad;
      }
    }
    flows::Trajectory out;
    out.ok = true;
    out.endpoint = std::move(pos);
    out.length = length;
    return out;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& u, bool* ok, double* length) const {
    const auto traj = run(u);
    if (ok) *ok = traj.ok;
    if (length) *length = traj.length;
    Eigen::VectorXd r(S->n());
    for (int i = 0; i < S->n(); ++i) r(i) = traj.endpoint[i] - target[i];
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u, const Eigen::VectorXd& r0) const {
    const int m = dim_u();
    Eigen::MatrixXd J(S->n(), m);
    const double fd = 1e-6;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd up = u;
      up(j) += fd;
      bool ok = true;
      const Eigen::VectorXd rp = residual(up, &ok, nullptr);
      J.col(j) = (rp - r0) / fd;
    }
    return J;
  }
};

// Gauss-Newton / Levenberg projection onto the endpoint constraint.
bool project_endpoint(const Shooting& sh, Eigen::VectorXd& u, double tol, int max_iters) {
  bool ok = true;
  Eigen::VectorXd r = sh.residual(u, &ok, nullptr);
  if (!ok) return false;
  double rn = r.norm();
  double mu = 1e-8;
  for (int it = 0; it < max_iters && rn > tol; ++it) {
    const Eigen::MatrixXd J = sh.jacobian(u, r);
    const Eigen::MatrixXd JJt =
        J * J.transpose() + mu * Eigen::MatrixXd::Identity(sh.S->n(), sh.S->n());
    const Eigen::VectorXd step = J.transpose() * JJt.ldlt().solve(r);
    bool accepted = false;
    double lambda = 1.0;
    for (int back = 0; back < 10; ++back) {
      Eigen::VectorXd un = u - lambda * step;
      bool okn = true;
      Eigen::VectorXd rn2 = sh.residual(un, &okn, nullptr);
      if (okn && rn2.norm() < rn) {
        u = un;
        r = rn2;
        rn = rn2.norm();
        accepted = true;
        mu = std::max(1e-12, mu * 0.3);
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      mu *= 10.0;
      if (mu > 1e2) break;
    }
  }
  return rn <= tol;
}

struct LocalResult {
  bool feasible = false;
  double length = std::numeric_limits<double>::infinity();
  double gap = 0.0;
  Eigen::VectorXd u;
};

LocalResult optimize_from(const Shooting& sh, Eigen::VectorXd u, double tol, int descent_iters) {
  LocalResult res;
  if (!project_endpoint(sh, u, tol * 1e-3, 40)) {
    // keep whatever we got; caller filters on the gap
    bool ok = true;
    double len = 0.0;
    const Eigen::VectorXd r = sh.residual(u, &ok, &len);
    res.u = u;
    res.gap = r.norm();
    res.length = len;
    res.feasible = ok && res.gap <= tol;
    return res;
  }

  bool ok = true;
  double len = 0.0;
  Eigen::VectorXd r = sh.residual(u, &ok, &len);

  const int m = sh.dim_u();
  const double fd = 1e-6;
  double step_scale = 0.25;
  for (int it = 0; it < descent_iters; ++it) {
    // Finite-difference gradient of the length.
    Eigen::VectorXd g(m);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd up = u;
      up(j) += fd;
      double lp = 0.0;
      bool okp = true;
      sh.residual(up, &okp, &lp);
      g(j) = (lp - len) / fd;
    }
    const Eigen::MatrixXd J = sh.jacobian(u, r);
    // Project the gradient onto the endpoint-preserving null space.
    const Eigen::MatrixXd JJt =
        J * J.transpose() + 1e-12 * Eigen::MatrixXd::Identity(sh.S->n(), sh.S->n());
    const Eigen::VectorXd p = g - J.transpose() * JJt.ldlt().solve(J * g);
    const double pn = p.norm();
    if (pn < 1e-12) break;

    bool moved = false;
    double alpha = step_scale / std::max(1.0, pn);
    for (int back = 0; back < 8; ++back) {
      Eigen::VectorXd un = u - alpha * p;
      if (!project_endpoint(sh, un, tol * 1e-3, 12)) {
        alpha *= 0.5;
        continue;
      }
      double ln = 0.0;
      bool okn = true;
      const Eigen::VectorXd rn2 = sh.residual(un, &okn, &ln);
      if (okn && ln < len - 1e-14) {
        u = un;
        len = ln;
        r = rn2;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) {
      step_scale *= 0.5;
      if (step_scale < 1e-6) break;
    }
  }
  res.u = u;
  res.length = len;
  res.gap = r.norm();
  res.feasible = res.gap <= tol;
  return res;
}

}  // namespace

std::vector<std::vector<double>> maneuver_controls(const structures::Recipe& recipe, int k,
                                                   double amount) {
  // leaf i: a single leg flowing amount * X_i.
  if (recipe.is_leaf()) {
    std::vector<double> leg(k, 0.0);
    leg[recipe.leaf - 1] = amount;
    return {leg};
  }
  // [A, B]: group commutator of the sub-maneuvers, with the amount split as
  // |a|^{dA/(dA+dB)} x |a|^{dB/(dA+dB)} so all legs share the scale a^{1/deg}.
  const int da = recipe.left->degree(), db = recipe.right->degree();
  const double mag = std::pow(std::abs(amount), 1.0 / (da + db));
  const double sa = (amount >= 0 ? 1.0 : -1.0) * std::pow(mag, da);
  const double sb = std::pow(mag, db);
  const auto A = maneuver_controls(*recipe.left, k, sa);
  const auto B = maneuver_controls(*recipe.right, k, sb);
  const auto Ainv = maneuver_controls(*recipe.left, k, -sa);
  const auto Binv = maneuver_controls(*recipe.right, k, -sb);
  std::vector<std::vector<double>> out;
  for (const auto* part : {&A, &B, &Ainv, &Binv})
    out.insert(out.end(), part->begin(), part->end());
  return out;
}

DistanceEstimate cc_distance(const ComplementedStructure& S, std::span<const double> x,
                             std::span<const double> y, const CcDistanceOptions& opts) {
  const int n = S.n(), k = S.k();
  DistanceEstimate out;
  out.method = "cc shooting multistart";
  out.seed = opts.seed;

  std::vector<double> delta(n);
  double dist = 0.0;
  for (int i = 0; i < n; ++i) {
    delta[i] = y[i] - x[i];
    dist += delta[i] * delta[i];
  }
  dist = std::sqrt(dist);
  out.lower = dist;
  if (dist == 0.0) {
    out.upper = 0.0;
    out.converged = true;
    return out;
  }

  Shooting sh;
  sh.S = &S;
  sh.frame = flows::compile_frame(S);
  sh.x0.assign(x.begin(), x.end());
  sh.target.assign(y.begin(), y.end());
  sh.segments = opts.segments;
  sh.rk_steps = opts.rk_steps;

  // Full-frame coordinates of the displacement drive the seeds.
  const Eigen::MatrixXd F = S.frame_matrix(x);
  const Eigen::VectorXd coords =
      F.fullPivLu().solve(Eigen::Map<const Eigen::VectorXd>(delta.data(), n));

  std::vector<Eigen::VectorXd> seeds;
  const int m = sh.dim_u();
  {
    // Horizontal straight shot: constant control equal to the V-coordinates.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    for (int s = 0; s < opts.segments; ++s)
      for (int j = 0; j < k; ++j) u(s * k + j) = coords(j);
    seeds.push_back(u);
  }
  {
    // Maneuver seed: horizontal part first, then a commutator maneuver per
    // complement direction with a significant coefficient.
    std::vector<std::pair<std::vector<double>, double>> legs;  // control, weight
    std::vector<double> horiz(k);
    for (int j = 0; j < k; ++j) horiz[j] = coords(j);
    double hn = 0.0;
    for (double v : horiz) hn += v * v;
    if (std::sqrt(hn) > 1e-12) legs.push_back({horiz, 1.0});
    for (int l = 0; l < n - k; ++l) {
      const double amount = coords(k + l);
      if (std::abs(amount) < 1e-10) continue;
      if (!S.complement_recipes[l].has_value()) continue;
      for (auto& leg : maneuver_controls(*S.complement_recipes[l], k, amount))
        legs.push_back({leg, 1.0});
    }
    if (!legs.empty()) {
      // Distribute the control legs over the segment grid.
      Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
      const int per = std::max(1, opts.segments / static_cast<int>(legs.size()));
      int seg = 0;
      for (std::size_t L = 0; L < legs.size() && seg < opts.segments; ++L) {
        int count = (L + 1 == legs.size()) ? (opts.segments - seg) : per;
        for (int c = 0; c < count && seg < opts.segments; ++c, ++seg) {
          // a leg flowing amount a over total fraction f of unit time needs
          // control a / f
          const double f = static_cast<double>(count) / opts.segments;
          for (int j = 0; j < k; ++j) u(seg * k + j) = legs[L].first[j] / f;
        }
      }
      seeds.push_back(u);
    }
  }
  // Random perturbations of the straight shot.
  for (int r = static_cast<int>(seeds.size()); r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, "cc-distance-start", r));
    Eigen::VectorXd u = seeds.front();
    const double scale = 0.5 * (std::abs(coords.head(k).norm()) + dist);
    for (int j = 0; j < m; ++j) u(j) += scale * rng.normal();
    seeds.push_back(u);
  }

  LocalResult best;
  int used = 0;
  for (auto& seedu : seeds) {
    const auto res = optimize_from(sh, seedu, opts.endpoint_tol, opts.descent_iterations);
    ++used;
    if (res.feasible && res.length < best.length) best = res;
  }
  out.restarts_used = used;

  if (!best.feasible) {
    out.converged = false;
    out.method += " (upper-only, unconverged)";
    return out;
  }
  out.converged = true;
  out.upper = best.length;
  out.endpoint_gap = best.gap;

  // Witness trajectory: the accepted control path sampled segment-wise.
  std::vector<double> pos = sh.x0;
  out.witness_vertices.push_back(pos);
  out.witness_times.push_back(0.0);
  const double dt = 1.0 / opts.segments;
  for (int s = 0; s < opts.segments; ++s) {
    std::vector<double> w(k);
    for (int j = 0; j < k; ++j) w[j] = best.u(s * k + j);
    const auto traj = flows::integrate_weighted(sh.frame, w, pos, dt, opts.rk_steps, &S.box, 1.0);
    pos = traj.endpoint;
    out.witness_vertices.push_back(pos);
    out.witness_times.push_back((s + 1) * dt);
  }
  if (out.upper < out.lower) out.upper = out.lower;  // integration slack guard
  return out;
}

}  // namespace ccgeo::metrics
