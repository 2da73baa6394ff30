#include "ccgeo/flows/exp_chart.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ccgeo::flows {

ExpChart::ExpChart(const ComplementedStructure& S, std::vector<double> base, double radius,
                   double h_int)
    : S_(&S), base_(std::move(base)), radius_(radius), h_int_(h_int) {
  if (static_cast<int>(base_.size()) != S.n())
    throw std::invalid_argument("chart base dimension mismatch");
  if (radius_ <= 0) throw std::invalid_argument("chart radius must be positive");
  if (h_int_ <= 0) h_int_ = std::min(1.0 / 64, radius_ / 128);
  if (h_int_ > radius_ / 100) throw std::invalid_argument("h_int must be <= radius/100");
  fields_ = compile_full_frame(S);
}

std::vector<double> ExpChart::exp(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != S_->n())
    throw std::invalid_argument("chart coordinate dimension mismatch");
  double l1 = 0.0;
  for (double v : t) l1 += std::abs(v);
  if (l1 > radius_ + 1e-15) throw std::runtime_error("chart radius exceeded");
  const int steps = static_cast<int>(std::ceil(1.0 / h_int_));
  const auto traj = integrate_weighted(fields_, t, base_, 1.0, steps, &S_->box, 0.5);
  if (!traj.ok) throw std::runtime_error("exp flow left the working box");
  return traj.endpoint;
}

ExpChart::InversionResult ExpChart::exp_inverse(std::span<const double> target, double tol,
                                                int max_iterations) const {
  const int n = S_->n();
  InversionResult res;

  // First-order initial guess: t0 = F(zeta)^{-1} (target - zeta).
  const Eigen::MatrixXd F = S_->frame_matrix(base_);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = target[i] - base_[i];
  Eigen::VectorXd t = F.fullPivLu().solve(rhs);

  auto gap = [&](const Eigen::VectorXd& tt, Eigen::VectorXd* out) -> double {
    std::vector<double> tv(tt.data(), tt.data() + n);
    double l1 = 0.0;
    for (double v : tv) l1 += std::abs(v);
    if (l1 > radius_) return std::numeric_limits<double>::infinity();
    std::vector<double> p;
    try {
      p = exp(tv);
    } catch (const std::runtime_error&) {
      return std::numeric_limits<double>::infinity();
    }
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = p[i] - target[i];
    if (out) *out = g;
    return g.norm();
  };

  Eigen::VectorXd g;
  double gnorm = gap(t, &g);
  if (!std::isfinite(gnorm)) {
    res.t.assign(t.data(), t.data() + n);
    res.final_gap = std::numeric_limits<double>::infinity();
    return res;
  }

  Eigen::MatrixXd J(n, n);
  int since_refresh = 3;  // force a refresh on entry
  for (int it = 0; it < max_iterations && gnorm > tol; ++it) {
    if (since_refresh >= 3) {
      const double fd = std::max(1e-7, 1e-7 * t.norm());
      for (int j = 0; j < n; ++j) {
        Eigen::VectorXd tp = t;
        tp(j) += fd;
        Eigen::VectorXd gp;
        const double v = gap(tp, &gp);
        if (!std::isfinite(v)) {
          tp(j) -= 2 * fd;
          gap(tp, &gp);
          J.col(j) = (g - gp) / fd;
        } else {
          J.col(j) = (gp - g) / fd;
        }
      }
      since_refresh = 0;
    }
    const Eigen::VectorXd step = J.fullPivLu().solve(g);
    double lambda = 1.0;
    bool accepted = false;
    for (int back = 0; back < 12; ++back) {
      Eigen::VectorXd tn = t - lambda * step;
      Eigen::VectorXd gn;
      const double vn = gap(tn, &gn);
      if (std::isfinite(vn) && vn < gnorm) {
        t = tn;
        g = gn;
        gnorm = vn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++since_refresh;
    ++res.iterations;
    if (!accepted) break;
  }
  res.t.assign(t.data(), t.data() + n);
  res.final_gap = gnorm;
  res.converged = gnorm <= tol;
  return res;
}

}  // namespace ccgeo::flows
