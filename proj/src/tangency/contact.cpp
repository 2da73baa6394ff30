#include "ccgeo/tangency/contact.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccgeo/support/rational.hpp"
#include "ccgeo/support/toml_lite.hpp"

namespace ccgeo::tangency {

SurfaceGraph::SurfaceGraph(int domain_dim, int ambient_dim, std::vector<Polynomial> phi,
                           double domain_lo, double domain_hi)
    : kp_(domain_dim), n_(ambient_dim), phi_(std::move(phi)), lo_(domain_lo), hi_(domain_hi) {
  if (kp_ < 1 || n_ <= kp_) throw std::invalid_argument("need 1 <= k' < n");
  if (static_cast<int>(phi_.size()) != n_ - kp_)
    throw std::invalid_argument("phi needs n - k' components");
  for (const auto& p : phi_)
    if (p.num_vars() != kp_)
      throw std::invalid_argument("phi components must be polynomials in k' variables");
  dphi_.resize(phi_.size());
  for (std::size_t c = 0; c < phi_.size(); ++c) {
    for (int j = 0; j < kp_; ++j) dphi_[c].push_back(phi_[c].derivative(j));
  }
}

SurfaceGraph SurfaceGraph::from_toml(const std::string& text) {
  const auto root = toml::parse_toml(text);
  const int kp = static_cast<int>(root->at("domain_dim")->as_int());
  const int n = static_cast<int>(root->at("n")->as_int());
  double lo = -1.0, hi = 1.0;
  if (root->has("domain")) {
    const auto& d = root->at("domain")->items();
    if (d.size() != 2) throw std::runtime_error("domain must be [lo, hi]");
    lo = d[0]->as_double();
    hi = d[1]->as_double();
  }
  std::vector<Polynomial> phi;
  if (!root->has("component")) throw std::runtime_error("no [[component]] entries");
  for (const auto& comp : root->at("component")->items()) {
    Polynomial p(kp);
    for (const auto& term : comp->at("terms")->items()) {
      const auto& pair = term->items();
      if (pair.size() != 2) throw std::runtime_error("term must be [\"p/q\", [exponents]]");
      Rational c = pair[0]->kind() == toml::Value::Kind::String
                       ? parse_rational(pair[0]->as_string())
                       : Rational(static_cast<long>(pair[0]->as_int()));
      std::vector<std::uint32_t> exps;
      for (const auto& e : pair[1]->items())
        exps.push_back(static_cast<std::uint32_t>(e->as_int()));
      p += Polynomial::monomial(kp, c, exps);
    }
    phi.push_back(std::move(p));
  }
  return SurfaceGraph(kp, n, std::move(phi), lo, hi);
}

SurfaceGraph SurfaceGraph::from_toml_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open surface file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_toml(ss.str());
}

std::vector<double> SurfaceGraph::embed(std::span<const double> q) const {
  if (static_cast<int>(q.size()) != kp_) throw std::invalid_argument("surface point dimension");
  std::vector<double> p(n_);
  for (int i = 0; i < kp_; ++i) p[i] = q[i];
  for (std::size_t c = 0; c < phi_.size(); ++c) p[kp_ + c] = phi_[c].evaluate(q);
  return p;
}

Eigen::MatrixXd SurfaceGraph::tangent_frame(std::span<const double> q) const {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n_, kp_);
  for (int j = 0; j < kp_; ++j) {
    T(j, j) = 1.0;
    for (std::size_t c = 0; c < phi_.size(); ++c) T(kp_ + c, j) = dphi_[c][j].evaluate(q);
  }
  return T;
}

double contact_deficiency(const ComplementedStructure& S, const SurfaceGraph& surf,
                          std::span<const double> q) {
  const int n = S.n(), k = S.k();
  if (surf.ambient_dim() != n) throw std::invalid_argument("surface/distribution dimension");
  const auto p = surf.embed(q);

  // Orthonormal basis of V(p).
  Eigen::MatrixXd A(n, k);
  for (int j = 0; j < k; ++j) {
    const auto v = S.distribution.frame[j].evaluate(std::span<const double>(p));
    for (int i = 0; i < n; ++i) A(i, j) = v[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < k) throw std::runtime_error("singular frame at the surface point");
  const Eigen::MatrixXd Qv =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, k);

  // Orthonormal tangent frame.
  Eigen::HouseholderQR<Eigen::MatrixXd> tqr(surf.tangent_frame(q));
  const Eigen::MatrixXd Qt =
      tqr.householderQ() * Eigen::MatrixXd::Identity(n, surf.domain_dim());

  const Eigen::MatrixXd R = Qt - Qv * (Qv.transpose() * Qt);  // (I - P_V) Qt
  return R.jacobiSvd().singularValues()(0);
}

ContactCloud contact_set(const ComplementedStructure& S, const SurfaceGraph& surf,
                         int grid_per_axis, double tau) {
  if (grid_per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  const int kp = surf.domain_dim();
  ContactCloud cloud;
  cloud.tau = tau;
  cloud.grid_per_axis = grid_per_axis;

  // Log-binned histogram over [1e-16, 1].
  const int bins = 17;
  cloud.histogram.assign(bins, 0);
  for (int b = 0; b <= bins; ++b) cloud.histogram_edges.push_back(std::pow(10.0, -16 + b));

  std::vector<int> idx(kp, 0);
  const double lo = surf.domain_lo(), hi = surf.domain_hi();
  for (;;) {
    std::vector<double> q(kp);
    for (int d = 0; d < kp; ++d)
      q[d] = lo + (hi - lo) * static_cast<double>(idx[d]) / (grid_per_axis - 1);
    const double delta = contact_deficiency(S, surf, q);
    if (delta <= tau) cloud.contact_indices.push_back(cloud.grid.size());
    cloud.grid.push_back(std::move(q));
    cloud.deficiency.push_back(delta);
    int bin = 0;
    const double clipped = std::max(delta, 1e-16);
    bin = std::min(bins - 1, std::max(0, static_cast<int>(std::floor(std::log10(clipped))) + 16));
    cloud.histogram[bin] += 1;

    int d = 0;
    while (d < kp && ++idx[d] == grid_per_axis) idx[d++] = 0;
    if (d == kp) break;
  }
  return cloud;
}

std::vector<std::vector<double>> ContactCloud::contact_points() const {
  std::vector<std::vector<double>> out;
  out.reserve(contact_indices.size());
  for (auto i : contact_indices) out.push_back(grid[i]);
  return out;
}

}  // namespace ccgeo::tangency
