#include "ccgeo/involutivity/decision.hpp"
#include "ccgeo/structures/catalog.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ccgeo;
using namespace ccgeo::involutivity;
using structures::build_catalog_model;
using structures::ComplementedStructure;
using calc::Point;
using calc::Polynomial;
using calc::PolyVectorField;

namespace {

// Random exact rational point with denominator 16.
Point random_exact_point(Rng& rng, int n, int spread = 8) {
  std::vector<Rational> q;
  for (int i = 0; i < n; ++i) q.push_back(make_rational(rng.int_in(-spread, spread), 16));
  return Point(q);
}

}  // namespace

TEST_CASE("bracket form: heisenberg, flat, free33 V6") {
  const auto h = build_catalog_model("heisenberg1");
  Rng rng(derive_seed(11, "inv-bracket-form"));
  for (int trial = 0; trial < 10; ++trial) {
    const auto B = bracket_form(h.structure, random_exact_point(rng, 3));
    REQUIRE(B.components_exact.size() == 1);
    CHECK(B.components_exact[0](0, 1) == Rational(1));
    CHECK(B.components_exact[0](1, 0) == Rational(-1));
  }

  const auto flat = build_catalog_model("flat");
  CHECK(bracket_form(flat.structure, Point::origin_exact(3)).all_zero());

  const auto f = build_catalog_model("free33");
  const auto B6 = bracket_form(f.structure, Point::origin_exact(14));
  REQUIRE(B6.components_exact.size() == 8);
  // X7-component: only nonzero entries at (1,4)/(4,1), value +-1.
  const auto& M7 = B6.components_exact[0];
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if ((i == 0 && j == 3) || (i == 3 && j == 0)) {
        CHECK(M7(i, j) == Rational((i == 0) ? 1 : -1));
      } else {
        CHECK(M7(i, j) == 0);
      }
    }
}

TEST_CASE("bracket form equivariance under constant frame change (exact)") {
  const auto f = build_catalog_model("free33");
  Rng rng(derive_seed(11, "inv-equivariance"));
  const int k = 6;
  for (int trial = 0; trial < 4; ++trial) {
    RationalMatrix G(k, k);
    // Random integer matrix, retried until invertible.
    do {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G(i, j) = Rational(rng.int_in(-2, 2));
    } while (!inverse(G).has_value());

    ComplementedStructure S2 = f.structure;
    std::vector<PolyVectorField> frame2;
    for (int j = 0; j < k; ++j) {
      PolyVectorField acc(14);
      for (int i = 0; i < k; ++i) acc = acc + f.structure.distribution.frame[i] * G(i, j);
      frame2.push_back(std::move(acc));
    }
    S2.distribution.frame = frame2;

    const Point x = random_exact_point(rng, 14, 4);
    const auto B1 = bracket_form(f.structure, x);
    const auto B2 = bracket_form(S2, x);
    for (int l = 0; l < 8; ++l) {
      const RationalMatrix expected = G.transposed() * B1.components_exact[l] * G;
      CHECK(B2.components_exact[l] == expected);
    }
  }
}

TEST_CASE("noninvolutive_at: heisenberg witness, flat involutive, free33") {
  const auto h = build_catalog_model("heisenberg1");
  const auto rep = noninvolutive_at(h.structure, Point::origin_exact(3));
  CHECK(rep.verdict == Verdict::NonInvolutive);
  CHECK(rep.exact_certificate);
  CHECK(rep.residual == 0.0);
  REQUIRE(rep.witness_pair.has_value());
  CHECK(*rep.witness_pair == std::make_pair(1, 2));
  // The witness covector annihilates V(0) and pairs to 1 with [X1,X2](0)=e3.
  REQUIRE(rep.witness_covector.size() == 3);
  CHECK(rep.witness_covector[0] == doctest::Approx(0.0));
  CHECK(rep.witness_covector[1] == doctest::Approx(0.0));
  CHECK(rep.witness_covector[2] == doctest::Approx(1.0));

  const auto flat = build_catalog_model("flat");
  const auto repf = noninvolutive_at(flat.structure, Point::origin_exact(3));
  CHECK(repf.verdict == Verdict::InvolutiveAtX);
  CHECK(repf.residual == 0.0);

  const auto f = build_catalog_model("free33");
  CHECK(noninvolutive_at(f.structure, Point::origin_exact(14)).verdict ==
        Verdict::NonInvolutive);
}

TEST_CASE("h-non-involutivity: heisenberg h=2 via exact kernel") {
  const auto h = build_catalog_model("heisenberg1");
  const auto rep = h_noninvolutive_at(h.structure, Point::origin_exact(3), 2);
  CHECK(rep.verdict == Verdict::NonInvolutive);
  CHECK(rep.exact_certificate);
  CHECK(rep.notes.find("ker(beta) = 0") != std::string::npos);
  CHECK(rep.criterion == "pointwise-B reduction");
}

TEST_CASE("free33 generators V3: 2-non-involutive by both routes") {
  const auto m = build_catalog_model("free33_v3");
  CHECK(m.structure.k() == 3);
  const Point origin = Point::origin_exact(14);

  // Exact route: beta maps the three coordinate bivectors to independent
  // complement directions, so its kernel is trivial.
  const auto rep = h_noninvolutive_at(m.structure, origin, 2);
  CHECK(rep.verdict == Verdict::NonInvolutive);
  CHECK(rep.exact_certificate);

  // Search route (float point): every restart stays above the floor.
  DecisionOptions opts;
  opts.restarts = 64;
  opts.seed = 7;
  const auto repf = h_noninvolutive_at(m.structure, Point::origin_float(14), 2, opts);
  CHECK(repf.verdict == Verdict::NonInvolutive);
  CHECK(repf.min_restart_residual >= 1e-4);
  CHECK(static_cast<int>(repf.restart_residuals.size()) == 64);
  CHECK(repf.oracle_checked);  // k = 3 <= 4
  CHECK(repf.oracle_agrees);
}

TEST_CASE("free33 V6: null planes exist at h=2,3; h=4 is non-involutive") {
  // The graded layer span(X4,X5,X6) commutes, so V6 cannot be 2- or
  // 3-non-involutive; the smallest order with no null subspace is 4.
  const auto f = build_catalog_model("free33");
  const Point origin = Point::origin_exact(14);
  DecisionOptions opts;
  opts.restarts = 64;
  opts.seed = 7;

  const auto rep2 = h_noninvolutive_at(f.structure, origin, 2, opts);
  CHECK(rep2.verdict == Verdict::InvolutiveAtX);
  CHECK(rep2.exact_certificate);
  CHECK(rep2.residual == 0.0);

  const auto rep3 = h_noninvolutive_at(f.structure, origin, 3, opts);
  CHECK(rep3.verdict == Verdict::InvolutiveAtX);
  CHECK(rep3.exact_certificate);
  CHECK(rep3.residual <= 1e-10);
  REQUIRE(rep3.witness_subspace.has_value());
  // Lexicographically first null coordinate subspace is span(e1,e2,e3).
  const Eigen::MatrixXd& W = *rep3.witness_subspace;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 3);
  expected(0, 0) = expected(1, 1) = expected(2, 2) = 1.0;
  CHECK((W - expected).cwiseAbs().maxCoeff() == 0.0);

  const auto rep4 = h_noninvolutive_at(f.structure, origin, 4, opts);
  CHECK(rep4.verdict == Verdict::NonInvolutive);
  CHECK(rep4.min_restart_residual >= 1e-4);

  // Float route finds a null 3-plane too (witness residual below threshold).
  const auto rep3f = h_noninvolutive_at(f.structure, Point::origin_float(14), 3, opts);
  CHECK(rep3f.verdict == Verdict::InvolutiveAtX);
  CHECK(rep3f.residual <= 1e-10);
}

TEST_CASE("strong-form failure: lambda|V = 0 kills B on span(e1,e2,e3) exactly") {
  // All brackets of X1,X2,X3 lie in V6, so the top-left 3x3 block of every
  // component matrix vanishes identically: any covector annihilating V(0)
  // restricted to that subspace is zero. This is exact linear algebra.
  const auto f = build_catalog_model("free33");
  const auto B = bracket_form(f.structure, Point::origin_exact(14));
  for (const auto& M : B.components_exact)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(M(i, j) == 0);
}

TEST_CASE("null-subspace germs: brackets at x stay in V(x) exactly") {
  // Validation of the pointwise-B reduction: random polynomial germs through
  // the found null subspace have brackets at x inside V(x).
  const auto f = build_catalog_model("free33");
  const Point origin = Point::origin_exact(14);
  const auto rep3 = h_noninvolutive_at(f.structure, origin, 3);
  REQUIRE(rep3.witness_subspace.has_value());

  Rng rng(derive_seed(11, "inv-germs"));
  const int n = 14, k = 6, h = 3;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<PolyVectorField> germ;
    for (int a = 0; a < h; ++a) {
      PolyVectorField Y(n);
      for (int j = 0; j < k; ++j) {
        // p_{aj} = W(j,a) + random linear polynomial vanishing at x=0
        Polynomial p = Polynomial::constant(
            n, Rational(static_cast<long>(std::lround((*rep3.witness_subspace)(j, a)))));
        for (int v = 0; v < 4; ++v) {
          const int var = rng.int_in(0, n - 1);
          p += Polynomial::variable(n, var) * Rational(rng.int_in(-2, 2));
        }
        Y = Y + p * f.structure.distribution.frame[j];
      }
      germ.push_back(std::move(Y));
    }
    // Brackets evaluated at the origin must lie in V(0) = span(e1..e6).
    for (int a = 0; a < h; ++a)
      for (int b = a + 1; b < h; ++b) {
        const auto br = calc::lie_bracket(germ[a], germ[b]);
        const auto v = br.evaluate(std::span<const Rational>(origin.exact()));
        for (int c = 6; c < 14; ++c) CHECK(v[c] == 0);
      }
  }
}

TEST_CASE("min_noninvolutive_order: heisenberg 2, free33 V3 2, V6 4, flat involutive") {
  const auto h = build_catalog_model("heisenberg1");
  const auto r1 = min_noninvolutive_order(h.structure, Point::origin_exact(3));
  CHECK_FALSE(r1.involutive);
  CHECK(r1.order == 2);

  const auto v3 = build_catalog_model("free33_v3");
  CHECK(min_noninvolutive_order(v3.structure, Point::origin_exact(14)).order == 2);

  const auto f = build_catalog_model("free33");
  const auto r2 = min_noninvolutive_order(f.structure, Point::origin_exact(14));
  CHECK(r2.order == 4);

  const auto flat = build_catalog_model("flat");
  const auto r3 = min_noninvolutive_order(flat.structure, Point::origin_exact(3));
  CHECK(r3.involutive);
}

TEST_CASE("verdicts invariant under frame reparametrization and complement rescaling") {
  const auto f = build_catalog_model("free33");
  const Point x = Point::origin_exact(14);
  Rng rng(derive_seed(11, "inv-verdict-invariance"));

  for (int trial = 0; trial < 3; ++trial) {
    ComplementedStructure S2 = f.structure;
    // Random well-conditioned frame change: identity plus small noise.
    RationalMatrix G(6, 6);
    do {
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          G(i, j) = make_rational((i == j) ? 4 : rng.int_in(-1, 1), 4);
    } while (!inverse(G).has_value());
    std::vector<PolyVectorField> frame2;
    for (int j = 0; j < 6; ++j) {
      PolyVectorField acc(14);
      for (int i = 0; i < 6; ++i) acc = acc + f.structure.distribution.frame[i] * G(i, j);
      frame2.push_back(std::move(acc));
    }
    S2.distribution.frame = frame2;
    // Rescale complement fields by assorted nonzero factors.
    for (std::size_t l = 0; l < S2.complement.size(); ++l)
      S2.complement[l] = S2.complement[l] * make_rational(rng.int_in(1, 4), rng.int_in(1, 2));

    CHECK(noninvolutive_at(S2, x).verdict == Verdict::NonInvolutive);
    CHECK(h_noninvolutive_at(S2, x, 4).verdict == Verdict::NonInvolutive);
    // Null subspaces survive the reparametrization (as G^{-1}-images).
    CHECK(h_noninvolutive_at(S2, x, 3).verdict == Verdict::InvolutiveAtX);
  }
}

TEST_CASE("optimization verdict agrees with the grid oracle on random distributions") {
  // k <= 4 frames with constant complements; h = 2. The exact kernel path is
  // bypassed by using float points, so the multistart search is what gets
  // cross-checked (the oracle runs inside h_noninvolutive_at for k <= 4).
  Rng rng(derive_seed(11, "inv-oracle"));
  int decisive = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int k = rng.int_in(2, 4);
    const int n = k + rng.int_in(1, 2);
    ComplementedStructure S;
    S.distribution.n = n;
    S.distribution.k = k;
    bool ok = true;
    for (int j = 0; j < k; ++j) {
      PolyVectorField X(n);
      X.component(j) = Polynomial::constant(n, Rational(1));
      for (int c = 0; c < n; ++c) {
        // sparse random linear perturbations keep frames well conditioned
        if (rng.uniform() < 0.5) {
          X.component(c) += Polynomial::variable(n, rng.int_in(0, n - 1)) *
                            Rational(rng.int_in(-2, 2));
        }
      }
      S.distribution.frame.push_back(std::move(X));
    }
    for (int j = k; j < n; ++j) {
      S.complement.push_back(PolyVectorField::basis(n, j));
      S.complement_recipes.emplace_back(std::nullopt);
    }
    S.degrees.assign(n, 1);
    for (int j = k; j < n; ++j) S.degrees[j] = 2;

    std::vector<double> xd(n, 0.0);
    for (auto& v : xd) v = rng.uniform(-0.2, 0.2);
    DecisionOptions opts;
    opts.restarts = 16;
    opts.seed = derive_seed(11, "inv-oracle-pt", trial);
    InvolutivityReport rep;
    try {
      rep = h_noninvolutive_at(S, Point(xd), 2, opts);
    } catch (const std::runtime_error&) {
      continue;  // singular frame draw
    }
    if (rep.verdict == Verdict::Undecided) continue;
    if (rep.min_restart_residual < 0) continue;  // decided without a search
    CHECK(rep.oracle_checked);
    CHECK(rep.oracle_agrees);
    ++decisive;
  }
  CHECK(decisive >= 25);
}
