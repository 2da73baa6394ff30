#include "ccgeo/flows/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeo::flows {

CompiledField::CompiledField(const PolyVectorField& X) : n_(X.num_vars()) {
  comps_.resize(n_);
  for (int c = 0; c < n_; ++c) {
    for (const auto& t : X.component(c).terms())
      comps_[c].push_back({t.coeff.get_d(), t.exps});
  }
}

void CompiledField::accumulate(std::span<const double> x, double w, std::span<double> v) const {
  for (int c = 0; c < n_; ++c) {
    double acc = 0.0;
    for (const auto& t : comps_[c]) {
      double m = t.c;
      for (int i = 0; i < n_; ++i) {
        const auto e = t.exps[i];
        if (e == 0) continue;
        double p = x[i];
        for (std::uint32_t r = 1; r < e; ++r) p *= x[i];
        m *= p;
      }
      acc += m;
    }
    v[c] += w * acc;
  }
}

std::vector<CompiledField> compile_full_frame(const ComplementedStructure& S) {
  std::vector<CompiledField> out;
  for (const auto* f : S.full_frame()) out.emplace_back(*f);
  return out;
}

std::vector<CompiledField> compile_frame(const ComplementedStructure& S) {
  std::vector<CompiledField> out;
  for (const auto& f : S.distribution.frame) out.emplace_back(f);
  return out;
}

namespace {

// velocity of the weighted combination, plus |velocity| in the last slot
void rhs(const std::vector<CompiledField>& fields, std::span<const double> weights,
         std::span<const double> y, std::span<double> dy) {
  const int n = static_cast<int>(y.size());
  for (int i = 0; i < n; ++i) dy[i] = 0.0;
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (weights[j] == 0.0) continue;
    fields[j].accumulate(y, weights[j], dy.subspan(0, n));
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += dy[i] * dy[i];
  dy[n] = std::sqrt(s);
}

}  // namespace

Trajectory integrate_weighted(const std::vector<CompiledField>& fields,
                              std::span<const double> weights, std::span<const double> x0,
                              double time, int steps, const WorkingBox* box, double box_slack) {
  const int n = static_cast<int>(x0.size());
  Trajectory out;
  out.steps = steps;
  std::vector<double> y(n + 1, 0.0);  // state + accumulated length
  for (int i = 0; i < n; ++i) y[i] = x0[i];

  std::vector<double> k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), tmp(n + 1);
  const double h = time / steps;
  for (int s = 0; s < steps; ++s) {
    rhs(fields, weights, std::span<const double>(y.data(), n), k1);
    for (int i = 0; i <= n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(fields, weights, std::span<const double>(tmp.data(), n), k2);
    for (int i = 0; i <= n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(fields, weights, std::span<const double>(tmp.data(), n), k3);
    for (int i = 0; i <= n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(fields, weights, std::span<const double>(tmp.data(), n), k4);
    for (int i = 0; i <= n; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (box && !box->contains(std::span<const double>(y.data(), n), box_slack)) {
      out.ok = false;
      out.endpoint.assign(y.begin(), y.begin() + n);
      out.length = y[n];
      return out;
    }
  }
  out.ok = true;
  out.endpoint.assign(y.begin(), y.begin() + n);
  out.length = y[n];
  return out;
}

FlowResult flow_point(const ComplementedStructure& S, std::span<const double> x,
                      std::span<const double> field_coefficients, double time, double h_int) {
  if (static_cast<int>(x.size()) != S.n())
    throw std::invalid_argument("flow_point: point dimension mismatch");
  if (static_cast<int>(field_coefficients.size()) != S.n())
    throw std::invalid_argument("flow_point: coefficient vector must cover the full frame");
  const auto fields = compile_full_frame(S);
  const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(time) / h_int)));
  const auto coarse = integrate_weighted(fields, field_coefficients, x, time, steps, &S.box);
  const auto fine = integrate_weighted(fields, field_coefficients, x, time, 2 * steps, &S.box);
  if (!coarse.ok || !fine.ok) throw std::runtime_error("flow left the working box");
  FlowResult res;
  res.point = fine.endpoint;
  res.length = fine.length;
  res.steps = 2 * steps;
  double d = 0.0;
  for (std::size_t i = 0; i < fine.endpoint.size(); ++i) {
    const double e = fine.endpoint[i] - coarse.endpoint[i];
    d += e * e;
  }
  res.error_estimate = std::sqrt(d) / 15.0;  // Richardson factor for order 4
  return res;
}

}  // namespace ccgeo::flows
