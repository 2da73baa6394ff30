#include "ccgeo/metrics/eta_distance.hpp"

#include <algorithm>
#include <cmath>

#include "ccgeo/support/rng.hpp"

namespace ccgeo::metrics {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// Optimal time grid for a fixed geometry: durations minimising the sup-cost,
// found by bisection on the level L (each segment gets the least duration
// keeping its cost below L; feasible iff the durations sum to <= 1).
void rebalance_times(const EtaLengthEvaluator& eval, PolygonalCurve& curve, int samples) {
  const int m = curve.segments();
  if (m < 2) return;
  const double inv_eta = 1.0 / eval.eta();

  // Cache per-segment chord costs: cost_i(delta) = sup over the chord of
  // |Pi^V chord|/delta + (|Pi^W chord|/delta)^{1/eta}, so only the combine
  // step depends on the duration.
  struct Chord {
    std::vector<double> A, B;  // |Pi^V chord|, |Pi^W chord| at the samples
  };
  const int n = curve.dim();
  std::vector<Chord> chords(m);
  for (int s = 0; s < m; ++s) {
    std::vector<double> chord(n);
    for (int i = 0; i < n; ++i) chord[i] = curve.vertices[s + 1][i] - curve.vertices[s][i];
    const Eigen::Map<const Eigen::VectorXd> cv(chord.data(), n);
    chords[s].A.resize(samples);
    chords[s].B.resize(samples);
    for (int j = 0; j < samples; ++j) {
      const double lam = static_cast<double>(j) / (samples - 1);
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = curve.vertices[s][i] + lam * chord[i];
      Eigen::MatrixXd pv, pw;
      eval.projections(x, &pv, &pw);
      chords[s].A[j] = (pv * cv).norm();
      chords[s].B[j] = (pw * cv).norm();
    }
  }
  auto seg_cost = [&](int s, double delta) {
    double c = 0.0;
    for (int j = 0; j < samples; ++j)
      c = std::max(c, chords[s].A[j] / delta + std::pow(chords[s].B[j] / delta, inv_eta));
    return c;
  };
  auto min_duration = [&](int s, double level) {
    // cost is strictly decreasing in delta; bisection for cost == level
    double lo = 1e-9, hi = 1.0;
    if (seg_cost(s, hi) > level) return 2.0;  // infeasible within unit time
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (seg_cost(s, mid) > level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  };

  // Level bisection between 0 and the current cost with equal durations.
  double level_hi = 0.0;
  for (int s = 0; s < m; ++s)
    level_hi = std::max(level_hi, seg_cost(s, curve.times[s + 1] - curve.times[s]));
  double level_lo = 0.0;
  for (int it = 0; it < 40; ++it) {
    const double level = 0.5 * (level_lo + level_hi);
    double total = 0.0;
    for (int s = 0; s < m && total <= 1.0; ++s) total += min_duration(s, level);
    if (total <= 1.0) {
      level_hi = level;
    } else {
      level_lo = level;
    }
  }
  std::vector<double> durations(m);
  double total = 0.0;
  for (int s = 0; s < m; ++s) {
    durations[s] = std::min(1.0, min_duration(s, level_hi));
    total += durations[s];
  }
  if (total <= 0) return;
  curve.times[0] = 0.0;
  for (int s = 0; s < m; ++s) curve.times[s + 1] = curve.times[s] + durations[s] / total;
  curve.times[m] = 1.0;
}

PolygonalCurve straight_curve(std::span<const double> x, std::span<const double> y) {
  PolygonalCurve c;
  c.vertices = {std::vector<double>(x.begin(), x.end()), std::vector<double>(y.begin(), y.end())};
  c.times = {0.0, 1.0};
  return c;
}

}  // namespace

double eta_lower_bound(const EtaLengthEvaluator& eval, std::span<const double> x,
                       std::span<const double> y, double upper_estimate) {
  const int n = static_cast<int>(x.size());
  std::vector<double> delta(n);
  for (int i = 0; i < n; ++i) delta[i] = y[i] - x[i];
  const double dist = norm2(delta);
  if (dist == 0.0) return 0.0;
  const double eta = eval.eta();

  double lower = 0.0;
  // Hoelder sandwich, valid within its stated radius.
  if (dist <= std::pow(4.0, -eta)) lower = std::max(lower, 2.0 / 3.0 * dist);
  // Euclidean bound, valid once the distance is known to be < 1.
  if (upper_estimate <= 1.0) lower = std::max(lower, dist);

  // Integral-decomposition bound: any curve of eta-length L <= 1 satisfies
  // (a - C s(L)^2)/L + (b - C s(L)^2)/L^eta <= 1 with s(L) = L + L^eta, hence
  // the root of the decreasing left side bounds every admissible curve.
  Eigen::MatrixXd pv, pw;
  eval.projections(x, &pv, &pw);
  const Eigen::Map<const Eigen::VectorXd> dv(delta.data(), n);
  const double a = (pv * dv).norm();
  const double b = (pw * dv).norm();
  const double C = eval.projection_modulus_c();
  auto lhs = [&](double s) {
    const double sigma = s + std::pow(s, eta);
    const double pad = C * sigma * sigma;
    return std::max(0.0, a - pad) / s + std::max(0.0, b - pad) / std::pow(s, eta);
  };
  const double cap = std::min(1.0, upper_estimate);
  if (cap > 0 && lhs(cap) <= 1.0) {
    double lo = std::min(1e-12, 0.5 * cap), hi = cap;
    if (lhs(lo) > 1.0) {
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) > 1.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      lower = std::max(lower, lo);
    }
  } else if (cap > 0) {
    // even the cap keeps the left side above 1: every curve costs more
    lower = std::max(lower, cap);
  }
  return lower;
}

DistanceEstimate eta_distance(const EtaLengthEvaluator& eval, std::span<const double> x,
                              std::span<const double> y, const EtaDistanceOptions& opts) {
  const int n = static_cast<int>(x.size());
  DistanceEstimate out;
  out.method = "eta-box polygonal multistart";
  out.seed = opts.seed;

  std::vector<double> delta(n);
  for (int i = 0; i < n; ++i) delta[i] = y[i] - x[i];
  if (norm2(delta) == 0.0) {
    out.lower = out.upper = 0.0;
    out.converged = true;
    out.witness_vertices = {std::vector<double>(x.begin(), x.end())};
    out.witness_times = {0.0};
    return out;
  }

  // Candidate starts: straight segment, staircases through the V/W split
  // point, and staircases with a resting corner. The rest segment (repeated
  // vertex, short duration) matters: at a moving corner the derived set is
  // the convex segment between the adjacent velocities and its anisotropic
  // norm exceeds both endpoint values, while a stop separates the legs.
  std::vector<PolygonalCurve> starts;
  starts.push_back(straight_curve(x, y));
  {
    Eigen::MatrixXd pv, pw;
    eval.projections(x, &pv, &pw);
    const Eigen::Map<const Eigen::VectorXd> dv(delta.data(), n);
    const Eigen::VectorXd dV = pv * dv, dW = pw * dv;
    if (dV.norm() > 1e-14 && dW.norm() > 1e-14) {
      auto staircase = [&](bool v_first, bool with_stop) {
        std::vector<double> mid(n);
        for (int i = 0; i < n; ++i) mid[i] = x[i] + (v_first ? dV(i) : dW(i));
        PolygonalCurve c;
        c.vertices.push_back(std::vector<double>(x.begin(), x.end()));
        c.vertices.push_back(mid);
        if (with_stop) c.vertices.push_back(mid);
        c.vertices.push_back(std::vector<double>(y.begin(), y.end()));
        if (with_stop) {
          c.times = {0.0, 0.5 - 1e-7, 0.5 + 1e-7, 1.0};
        } else {
          c.times = {0.0, 0.5, 1.0};
        }
        return c;
      };
      starts.push_back(staircase(true, false));
      starts.push_back(staircase(false, false));
      starts.push_back(staircase(true, true));
      starts.push_back(staircase(false, true));
    }
  }
  const double jitter_scale = 0.2 * norm2(delta);
  for (int r = static_cast<int>(starts.size()); r < opts.restarts + 3; ++r) {
    Rng rng(derive_seed(opts.seed, "eta-distance-start", r));
    const int extra = rng.int_in(1, std::max(1, opts.budget - 2));
    PolygonalCurve c;
    c.vertices.push_back(std::vector<double>(x.begin(), x.end()));
    for (int v = 1; v <= extra; ++v) {
      std::vector<double> p(n);
      const double lam = static_cast<double>(v) / (extra + 1);
      for (int i = 0; i < n; ++i) p[i] = x[i] + lam * delta[i] + jitter_scale * rng.normal();
      c.vertices.push_back(std::move(p));
    }
    c.vertices.push_back(std::vector<double>(y.begin(), y.end()));
    c.times.resize(c.vertices.size());
    for (std::size_t i = 0; i < c.times.size(); ++i)
      c.times[i] = static_cast<double>(i) / (c.times.size() - 1);
    starts.push_back(std::move(c));
  }

  double best_upper = std::numeric_limits<double>::infinity();
  PolygonalCurve best_curve = starts.front();

  for (auto& curve : starts) {
    rebalance_times(eval, curve, opts.fast_samples);
    double cost = eval.evaluate_fast(curve, opts.fast_samples).upper;

    // Coordinate descent over interior vertices with shrinking probes.
    double step = 0.25 * norm2(delta);
    for (int round = 0; round < opts.descent_rounds; ++round) {
      bool improved = false;
      for (std::size_t vtx = 1; vtx + 1 < curve.vertices.size(); ++vtx) {
        for (int coord = 0; coord < n; ++coord) {
          for (const double dir : {+1.0, -1.0}) {
            PolygonalCurve trial = curve;
            trial.vertices[vtx][coord] += dir * step;
            const double c = eval.evaluate_fast(trial, opts.fast_samples).upper;
            if (c < cost - 1e-15) {
              curve = std::move(trial);
              cost = c;
              improved = true;
            }
          }
        }
      }
      rebalance_times(eval, curve, opts.fast_samples);
      cost = eval.evaluate_fast(curve, opts.fast_samples).upper;
      if (!improved) step *= 0.5;
    }
    if (cost < best_upper) {
      best_upper = cost;
      best_curve = curve;
    }
  }

  // Certify the winner with the full sample budget.
  rebalance_times(eval, best_curve, opts.final_samples);
  const auto certified = eval.evaluate(best_curve);
  out.upper = certified.upper;
  out.converged = true;
  out.restarts_used = static_cast<int>(starts.size());
  out.witness_vertices = best_curve.vertices;
  out.witness_times = best_curve.times;

  out.lower = eta_lower_bound(eval, x, y, out.upper);
  if (out.lower > out.upper) out.lower = out.upper;  // numerical guard
  return out;
}

}  // namespace ccgeo::metrics
