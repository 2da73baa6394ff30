#include "ccgeo/structures/structure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccgeo/support/rng.hpp"
#include "ccgeo/support/sampling.hpp"
#include "ccgeo/support/toml_lite.hpp"

namespace ccgeo::structures {

std::string Recipe::to_string() const {
  if (is_leaf()) return std::to_string(leaf);
  return "[" + left->to_string() + "," + right->to_string() + "]";
}

Recipe recipe_leaf(int index) {
  Recipe r;
  r.leaf = index;
  return r;
}

Recipe recipe_bracket(Recipe a, Recipe b) {
  Recipe r;
  r.left = std::make_shared<Recipe>(std::move(a));
  r.right = std::make_shared<Recipe>(std::move(b));
  return r;
}

PolyVectorField realize_recipe(const Recipe& r, const std::vector<PolyVectorField>& frame) {
  if (r.is_leaf()) {
    if (r.leaf < 1 || r.leaf > static_cast<int>(frame.size()))
      throw std::runtime_error("recipe references field " + std::to_string(r.leaf) +
                               " but the frame has " + std::to_string(frame.size()) + " fields");
    return frame[r.leaf - 1];
  }
  return calc::lie_bracket(realize_recipe(*r.left, frame), realize_recipe(*r.right, frame));
}

std::vector<const PolyVectorField*> ComplementedStructure::full_frame() const {
  std::vector<const PolyVectorField*> out;
  out.reserve(n());
  for (const auto& f : distribution.frame) out.push_back(&f);
  for (const auto& f : complement) out.push_back(&f);
  return out;
}

Eigen::MatrixXd ComplementedStructure::frame_matrix(std::span<const double> x) const {
  Eigen::MatrixXd m(n(), n());
  int col = 0;
  for (const auto* f : full_frame()) {
    const auto v = f->evaluate(x);
    for (int i = 0; i < n(); ++i) m(i, col) = v[i];
    ++col;
  }
  return m;
}

RationalMatrix ComplementedStructure::frame_matrix_exact(std::span<const Rational> x) const {
  RationalMatrix m(n(), n());
  int col = 0;
  for (const auto* f : full_frame()) {
    const auto v = f->evaluate(x);
    for (int i = 0; i < n(); ++i) m(i, col) = v[i];
    ++col;
  }
  return m;
}

int ComplementedStructure::max_degree() const {
  return degrees.empty() ? 1 : *std::max_element(degrees.begin(), degrees.end());
}

namespace {

Polynomial term_list_to_polynomial(const toml::ValuePtr& list, int n) {
  Polynomial p(n);
  for (const auto& term : list->items()) {
    const auto& pair = term->items();
    if (pair.size() != 2)
      throw std::runtime_error("polynomial term must be [\"p/q\", [exponents]]");
    Rational c;
    if (pair[0]->kind() == toml::Value::Kind::String) {
      c = parse_rational(pair[0]->as_string());
    } else {
      c = Rational(static_cast<long>(pair[0]->as_int()));
    }
    std::vector<std::uint32_t> exps;
    for (const auto& e : pair[1]->items()) {
      const auto v = e->as_int();
      if (v < 0) throw std::runtime_error("negative exponent in polynomial term");
      exps.push_back(static_cast<std::uint32_t>(v));
    }
    if (static_cast<int>(exps.size()) != n)
      throw std::runtime_error("exponent vector length must equal n");
    p += Polynomial::monomial(n, c, exps);
  }
  return p;
}

Recipe parse_recipe(const toml::ValuePtr& v) {
  if (v->kind() == toml::Value::Kind::Integer) return recipe_leaf(static_cast<int>(v->as_int()));
  const auto& items = v->items();
  if (items.size() != 2) throw std::runtime_error("recipe must be [i, j] with nested lists");
  return recipe_bracket(parse_recipe(items[0]), parse_recipe(items[1]));
}

std::string point_to_string(std::span<const double> x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

void check_structure_invariants(ComplementedStructure& S, int samples) {
  const int n = S.n(), k = S.k();
  // Frame independence at the box centre.
  const double mid = 0.5 * (S.box.lo + S.box.hi);
  std::vector<double> center(n, mid);
  {
    Eigen::MatrixXd m(n, k);
    for (int j = 0; j < k; ++j) {
      const auto v = S.distribution.frame[j].evaluate(std::span<const double>(center));
      for (int i = 0; i < n; ++i) m(i, j) = v[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(k - 1) <= 1e-10 * std::max(1.0, sv(0))) {
      std::ostringstream os;
      os << "dependent frame at base point " << point_to_string(center) << "; singular values:";
      for (int i = 0; i < sv.size(); ++i) os << " " << sv(i);
      throw std::runtime_error(os.str());
    }
  }
  // Full-frame independence sampled on the working box.
  for (int s = 1; s <= samples; ++s) {
    const auto x = halton_in_box(static_cast<std::size_t>(s), n, S.box.lo, S.box.hi);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S.frame_matrix(std::span<const double>(x)));
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 1e-10 * std::max(1.0, sv(0))) {
      std::ostringstream os;
      os << "dependent frame at sampled point " << point_to_string(x) << "; singular values:";
      for (int i = 0; i < sv.size(); ++i) os << " " << sv(i);
      throw std::runtime_error(os.str());
    }
  }
  // Degrees: frame fields are 1, complements come from their recipes.
  S.degrees.assign(n, 1);
  bool mixed = false;
  for (int j = 0; j < n - k; ++j) {
    int deg = 2;
    if (S.complement_recipes[j].has_value()) deg = S.complement_recipes[j]->degree();
    if (deg < 2)
      throw std::runtime_error("complement recipe " + std::to_string(j + 1) +
                               " has degree < 2 (must be a genuine commutator)");
    S.degrees[k + j] = deg;
    if (deg > 2) mixed = true;
  }
  if (mixed)
    S.warnings.push_back(
        "complement mixes degrees beyond 2; the eta-box construction is stated for degree-2 "
        "complements, handle eta-squeezing results with care");
}

ComplementedStructure load_structure(const std::string& text, int samples) {
  const auto root = toml::parse_toml(text);
  ComplementedStructure S;
  S.distribution.n = static_cast<int>(root->at("n")->as_int());
  S.distribution.k = static_cast<int>(root->at("k")->as_int());
  const int n = S.distribution.n, k = S.distribution.k;
  if (n <= 0 || k <= 0 || k >= n) throw std::runtime_error("need 0 < k < n");
  if (root->has("name")) S.distribution.name = root->at("name")->as_string();

  if (root->has("box")) {
    const auto& b = root->at("box")->items();
    if (b.size() != 2) throw std::runtime_error("box must be [lo, hi]");
    S.box.lo = b[0]->as_double();
    S.box.hi = b[1]->as_double();
    if (S.box.lo >= S.box.hi) throw std::runtime_error("box must have lo < hi");
  }

  if (!root->has("field")) throw std::runtime_error("no [[field]] entries");
  for (const auto& f : root->at("field")->items()) {
    const auto& comps = f->at("components")->items();
    if (static_cast<int>(comps.size()) != n)
      throw std::runtime_error("each field needs n component polynomial lists");
    PolyVectorField X(n);
    for (int i = 0; i < n; ++i) X.component(i) = term_list_to_polynomial(comps[i], n);
    S.distribution.frame.push_back(std::move(X));
  }
  if (static_cast<int>(S.distribution.frame.size()) != k)
    throw std::runtime_error("expected k = " + std::to_string(k) + " [[field]] entries, got " +
                             std::to_string(S.distribution.frame.size()));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (S.distribution.frame[a] == S.distribution.frame[b])
        throw std::runtime_error("dependent frame: fields " + std::to_string(a + 1) + " and " +
                                 std::to_string(b + 1) + " are identical");

  if (!root->has("complement")) throw std::runtime_error("no [[complement]] entries");
  for (const auto& c : root->at("complement")->items()) {
    const Recipe r = parse_recipe(c->at("recipe"));
    if (r.is_leaf()) throw std::runtime_error("complement recipe must be a bracket, not a leaf");
    S.complement.push_back(realize_recipe(r, S.distribution.frame));
    S.complement_recipes.push_back(r);
  }
  if (static_cast<int>(S.complement.size()) != n - k)
    throw std::runtime_error("expected n-k = " + std::to_string(n - k) +
                             " [[complement]] entries, got " + std::to_string(S.complement.size()));

  check_structure_invariants(S, samples);
  return S;
}

ComplementedStructure load_structure_file(const std::string& path, int samples) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open structure file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return load_structure(ss.str(), samples);
}

HormanderResult hormander_step(const Distribution& D, const Point& x, int max_step) {
  if (max_step < 1) throw std::invalid_argument("max_step must be >= 1");
  const int n = D.n;
  HormanderResult res;
  res.max_step_tried = max_step;

  std::vector<PolyVectorField> previous_level = D.frame;
  std::vector<std::vector<Rational>> exact_vectors;
  Eigen::MatrixXd float_mat(n, 0);
  const bool exact = x.is_exact();
  const auto xd = x.as_double();

  int current_rank = 0;
  auto add_and_rank = [&](const PolyVectorField& f) {
    if (exact) {
      exact_vectors.push_back(f.evaluate(std::span<const Rational>(x.exact())));
      RationalMatrix m(static_cast<int>(exact_vectors.size()), n);
      for (std::size_t r = 0; r < exact_vectors.size(); ++r)
        for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = exact_vectors[r][c];
      current_rank = rank(std::move(m));
    } else {
      const auto v = f.evaluate(std::span<const double>(xd));
      float_mat.conservativeResize(n, float_mat.cols() + 1);
      for (int i = 0; i < n; ++i) float_mat(i, float_mat.cols() - 1) = v[i];
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(float_mat);
      qr.setThreshold(1e-10);
      current_rank = static_cast<int>(qr.rank());
    }
  };

  for (const auto& f : D.frame) add_and_rank(f);
  res.rank_reached = current_rank;
  if (current_rank == n) {
    res.bracket_generating = true;
    res.step = 1;
    return res;
  }

  for (int step = 2; step <= max_step; ++step) {
    std::vector<PolyVectorField> level;
    level.reserve(D.frame.size() * previous_level.size());
    for (const auto& g : D.frame) {
      for (const auto& h : previous_level) {
        PolyVectorField br = calc::lie_bracket(g, h);
        if (br.is_zero()) continue;
        add_and_rank(br);
        level.push_back(std::move(br));
        if (current_rank == n) {
          res.bracket_generating = true;
          res.step = step;
          res.rank_reached = n;
          return res;
        }
      }
    }
    res.rank_reached = current_rank;
    if (level.empty()) break;  // no new nonzero commutators can appear
    previous_level = std::move(level);
  }
  return res;
}

ProjectionPair complement_projections(const ComplementedStructure& S, const Point& x) {
  const int n = S.n(), k = S.k();
  ProjectionPair P;
  P.base = x;
  if (x.is_exact()) {
    const RationalMatrix F = S.frame_matrix_exact(std::span<const Rational>(x.exact()));
    const auto Finv = inverse(F);
    if (!Finv) throw std::runtime_error("singular frame at the requested point");
    // Pi^V = F diag(1_k, 0) F^{-1}.
    RationalMatrix D(n, n);
    for (int i = 0; i < k; ++i) D(i, i) = 1;
    const RationalMatrix pv = F * D * (*Finv);
    RationalMatrix pw = RationalMatrix::identity(n) - pv;
    P.pi_v_exact = pv;
    P.pi_w_exact = pw;
    P.pi_v.resize(n, n);
    P.pi_w.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        P.pi_v(i, j) = pv(i, j).get_d();
        P.pi_w(i, j) = pw(i, j).get_d();
      }
    return P;
  }
  const auto xd = x.as_double();
  const Eigen::MatrixXd F = S.frame_matrix(std::span<const double>(xd));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
  if (!lu.isInvertible()) throw std::runtime_error("singular frame at the requested point");
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < k; ++i) D(i, i) = 1.0;
  P.pi_v = F * D * lu.inverse();
  P.pi_w = Eigen::MatrixXd::Identity(n, n) - P.pi_v;
  return P;
}

ModulusEstimate projection_modulus(const ComplementedStructure& S,
                                   const std::vector<double>& center, double half_width,
                                   int samples, std::uint64_t seed) {
  const int n = S.n();
  if (static_cast<int>(center.size()) != n)
    throw std::invalid_argument("modulus center dimension mismatch");
  ModulusEstimate est;
  est.region_halfwidth = half_width;
  est.seed = seed;

  // Deterministic scrambling: a seed-dependent Cranley-Patterson rotation of
  // the Halton sequence. Different seeds reshuffle the pairs but the fitted C
  // stays reproducible to a couple of digits.
  Rng rng(derive_seed(seed, "projection-modulus"));
  std::vector<double> shift(n);
  for (auto& v : shift) v = rng.uniform();

  auto sample_point = [&](std::size_t idx) {
    auto u = halton_point(idx, n);
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) {
      double t = u[i] + shift[i];
      t -= std::floor(t);
      p[i] = center[i] + (2.0 * t - 1.0) * half_width;
    }
    return p;
  };

  double best = 0.0;
  int used = 0;
  for (int s = 0; s < samples; ++s) {
    const auto y = sample_point(2 * s + 1);
    const auto z = sample_point(2 * s + 2);
    double dist = 0.0;
    for (int i = 0; i < n; ++i) dist += (y[i] - z[i]) * (y[i] - z[i]);
    dist = std::sqrt(dist);
    if (dist < 1e-12) continue;
    const auto Py = complement_projections(S, Point(y));
    const auto Pz = complement_projections(S, Point(z));
    const Eigen::MatrixXd diff = Py.pi_v - Pz.pi_v;
    const double opnorm = diff.jacobiSvd().singularValues()(0);
    best = std::max(best, opnorm / dist);
    ++used;
  }
  est.c = best * 1.1;  // 10% safety factor
  est.pairs = used;
  return est;
}

}  // namespace ccgeo::structures
