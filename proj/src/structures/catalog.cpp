#include "ccgeo/structures/catalog.hpp"

#include <sstream>
#include <stdexcept>

namespace ccgeo::structures {

void StructureConstants::set(int i, int j, std::vector<std::pair<int, Rational>> combo) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("bad structure-constant indices");
  if (i > j) {
    for (auto& [l, c] : combo) c = -c;
    std::swap(i, j);
  }
  table_[{i, j}] = std::move(combo);
}

PolyVectorField left_invariant_field(const StructureConstants& c, int index) {
  const int n = c.dim();
  std::vector<Polynomial> x(n, Polynomial(n));
  for (int i = 0; i < n; ++i) x[i] = Polynomial::variable(n, i);
  std::vector<Polynomial> v(n, Polynomial(n));
  v[index] = Polynomial::constant(n, Rational(1));

  const Polynomial zero(n);
  const auto ad1 = c.bracket(x, v, zero);    // [x, v]
  const auto ad2 = c.bracket(x, ad1, zero);  // [x, [x, v]]

  PolyVectorField X(n);
  for (int i = 0; i < n; ++i)
    X.component(i) = v[i] + ad1[i] * Rational(1, 2) + ad2[i] * Rational(1, 12);
  return X;
}

Distribution CarnotModel::generator_distribution() const {
  Distribution D;
  D.n = n;
  D.k = generators;
  D.name = name + "-generators";
  for (int i = 0; i < generators; ++i) D.frame.push_back(fields[i]);
  return D;
}

namespace {

struct ModelSpec {
  int n = 0;
  int frame_size = 0;  // rank of the complemented structure
  int generators = 0;
  int step = 1;
  StructureConstants constants{0};
  std::vector<Recipe> complement_recipes;  // for fields frame_size+1..n, over the structure frame
  std::vector<Recipe> generator_recipes;   // for fields generators+1..n, over the generators
  WorkingBox box{-1.0, 1.0};
};

ModelSpec heisenberg_spec(int d) {
  // Generators X_1..X_{2d}, centre X_{2d+1}; [X_i, X_{d+i}] = X_{2d+1}.
  ModelSpec s;
  s.n = 2 * d + 1;
  s.frame_size = 2 * d;
  s.generators = 2 * d;
  s.step = 2;
  s.constants = StructureConstants(s.n);
  for (int i = 0; i < d; ++i) s.constants.set(i, d + i, {{2 * d, Rational(1)}});
  s.complement_recipes.push_back(recipe_bracket(recipe_leaf(1), recipe_leaf(d + 1)));
  return s;
}

ModelSpec engel_spec() {
  // [X1,X2] = X3, [X1,X3] = X4.
  ModelSpec s;
  s.n = 4;
  s.frame_size = 2;
  s.generators = 2;
  s.step = 3;
  s.constants = StructureConstants(4);
  s.constants.set(0, 1, {{2, Rational(1)}});
  s.constants.set(0, 2, {{3, Rational(1)}});
  s.complement_recipes.push_back(recipe_bracket(recipe_leaf(1), recipe_leaf(2)));
  s.complement_recipes.push_back(
      recipe_bracket(recipe_leaf(1), recipe_bracket(recipe_leaf(1), recipe_leaf(2))));
  return s;
}

// Free nilpotent algebra of rank 3 and step 3 realised on R^14. The printed
// table in the reference example assigns X8 = [X1,X5] and X9 = [X1,X6], but
// together with [X3,X4] = -X8 + X11 that assignment violates the Jacobi
// identity ([X3,[X1,X2]] = [X2,[X1,X3]] - [X1,[X2,X3]]). The free algebra is
// realised here with X8 := [X1,X6] and X9 := [X1,X5], which keeps the
// dependent relation [X3,X4] = -X8 + X11 exact.
//
// The generated complemented structure is V6 = span(X1..X6) with the eight
// degree-3 fields as complement; those are degree-2 commutators of the V6
// frame (X7 = [X1,X4] and so on).
ModelSpec free33_spec() {
  ModelSpec s;
  s.n = 14;
  s.frame_size = 6;
  s.generators = 3;
  s.step = 3;
  s.constants = StructureConstants(14);
  // Degree 2.
  s.constants.set(0, 1, {{3, Rational(1)}});  // [X1,X2] = X4
  s.constants.set(0, 2, {{4, Rational(1)}});  // [X1,X3] = X5
  s.constants.set(1, 2, {{5, Rational(1)}});  // [X2,X3] = X6
  // Degree 3.
  s.constants.set(0, 3, {{6, Rational(1)}});   // [X1,X4] = X7
  s.constants.set(0, 4, {{8, Rational(1)}});   // [X1,X5] = X9
  s.constants.set(0, 5, {{7, Rational(1)}});   // [X1,X6] = X8
  s.constants.set(1, 3, {{9, Rational(1)}});   // [X2,X4] = X10
  s.constants.set(1, 4, {{10, Rational(1)}});  // [X2,X5] = X11
  s.constants.set(1, 5, {{11, Rational(1)}});  // [X2,X6] = X12
  s.constants.set(2, 3, {{7, Rational(-1)}, {10, Rational(1)}});  // [X3,X4] = -X8 + X11
  s.constants.set(2, 4, {{12, Rational(1)}});  // [X3,X5] = X13
  s.constants.set(2, 5, {{13, Rational(1)}});  // [X3,X6] = X14
  // Complement recipes over the V6 frame.
  s.complement_recipes = {recipe_bracket(recipe_leaf(1), recipe_leaf(4)),   // X7
                          recipe_bracket(recipe_leaf(1), recipe_leaf(6)),   // X8
                          recipe_bracket(recipe_leaf(1), recipe_leaf(5)),   // X9
                          recipe_bracket(recipe_leaf(2), recipe_leaf(4)),   // X10
                          recipe_bracket(recipe_leaf(2), recipe_leaf(5)),   // X11
                          recipe_bracket(recipe_leaf(2), recipe_leaf(6)),   // X12
                          recipe_bracket(recipe_leaf(3), recipe_leaf(5)),   // X13
                          recipe_bracket(recipe_leaf(3), recipe_leaf(6))};  // X14
  const Recipe g12 = recipe_bracket(recipe_leaf(1), recipe_leaf(2));
  const Recipe g13 = recipe_bracket(recipe_leaf(1), recipe_leaf(3));
  const Recipe g23 = recipe_bracket(recipe_leaf(2), recipe_leaf(3));
  s.generator_recipes = {g12,
                         g13,
                         g23,
                         recipe_bracket(recipe_leaf(1), g12),   // X7
                         recipe_bracket(recipe_leaf(1), g23),   // X8
                         recipe_bracket(recipe_leaf(1), g13),   // X9
                         recipe_bracket(recipe_leaf(2), g12),   // X10
                         recipe_bracket(recipe_leaf(2), g13),   // X11
                         recipe_bracket(recipe_leaf(2), g23),   // X12
                         recipe_bracket(recipe_leaf(3), g13),   // X13
                         recipe_bracket(recipe_leaf(3), g23)};  // X14
  s.box = WorkingBox{-0.5, 0.5};
  return s;
}

std::string relation_string(int i, int j, const std::vector<std::pair<int, Rational>>& combo) {
  std::ostringstream os;
  os << "[X" << (i + 1) << ",X" << (j + 1) << "] =";
  if (combo.empty()) {
    os << " 0";
    return os.str();
  }
  bool first = true;
  for (const auto& [l, c] : combo) {
    if (c == 1) {
      os << (first ? " " : " + ");
    } else if (c == -1) {
      os << (first ? " -" : " - ");
    } else {
      os << (first ? " " : " + ") << c.get_str() << " ";
    }
    os << "X" << (l + 1);
    first = false;
  }
  return os.str();
}

CarnotModel finish_model(const std::string& name, ModelSpec spec) {
  CarnotModel m;
  m.name = name;
  m.n = spec.n;
  m.k = spec.frame_size;
  m.generators = spec.generators;
  m.step = spec.step;
  m.constants = spec.constants;

  for (int i = 0; i < spec.n; ++i) m.fields.push_back(left_invariant_field(spec.constants, i));

  // Structure-constant regression: brackets of the constructed fields must
  // reproduce the table as polynomial identities everywhere, and brackets
  // outside the table must vanish identically (nilpotency).
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i + 1; j < spec.n; ++j) {
      auto it = spec.constants.table().find({i, j});
      std::vector<std::pair<int, Rational>> combo;
      if (it != spec.constants.table().end()) combo = it->second;
      PolyVectorField expected(spec.n);
      for (const auto& [l, c] : combo) expected = expected + m.fields[l] * c;
      const bool pass = calc::lie_bracket(m.fields[i], m.fields[j]) == expected;
      if (!combo.empty())
        m.relations.push_back({relation_string(i, j, combo), pass});
      else if (!pass)
        m.relations.push_back({relation_string(i, j, combo) + " (nilpotency)", false});
    }
  }

  auto make_structure = [&](int rank, const std::vector<Recipe>& recipes,
                            const std::string& sname) {
    ComplementedStructure S;
    S.distribution.n = spec.n;
    S.distribution.k = rank;
    S.distribution.name = sname;
    for (int i = 0; i < rank; ++i) S.distribution.frame.push_back(m.fields[i]);
    for (int i = rank; i < spec.n; ++i) S.complement.push_back(m.fields[i]);
    for (const auto& r : recipes) S.complement_recipes.emplace_back(r);
    S.box = spec.box;
    S.degrees.assign(spec.n, 1);
    bool mixed = false;
    for (int j = 0; j < spec.n - rank; ++j) {
      S.degrees[rank + j] = recipes[j].degree();
      if (recipes[j].degree() > 2) mixed = true;
    }
    if (mixed)
      S.warnings.push_back(
          "complement mixes degrees beyond 2; the eta-box construction is stated for degree-2 "
          "complements, handle eta-squeezing results with care");
    return S;
  };

  m.structure = make_structure(spec.frame_size, spec.complement_recipes, name);
  if (spec.generators == spec.frame_size) {
    m.generator_structure = m.structure;
  } else {
    m.generator_structure =
        make_structure(spec.generators, spec.generator_recipes, name + "-generators");
  }
  return m;
}

CarnotModel flat_model(int n, int k) {
  CarnotModel m;
  m.name = "flat";
  m.n = n;
  m.k = k;
  m.generators = k;
  m.step = 1;
  m.constants = StructureConstants(n);
  for (int i = 0; i < n; ++i) m.fields.push_back(PolyVectorField::basis(n, i));
  ComplementedStructure S;
  S.distribution.n = n;
  S.distribution.k = k;
  S.distribution.name = "flat";
  for (int i = 0; i < k; ++i) S.distribution.frame.push_back(PolyVectorField::basis(n, i));
  // The flat complement is not a commutator (all brackets vanish); complement
  // fields are declared directly with the conventional degree 2 so gauges and
  // eta-lengths stay well defined.
  for (int i = k; i < n; ++i) {
    S.complement.push_back(PolyVectorField::basis(n, i));
    S.complement_recipes.emplace_back(std::nullopt);
  }
  S.degrees.assign(n, 1);
  for (int i = k; i < n; ++i) S.degrees[i] = 2;
  S.box = WorkingBox{-1.0, 1.0};
  m.structure = S;
  m.generator_structure = std::move(S);
  return m;
}

}  // namespace

CarnotModel build_catalog_model(const std::string& name) {
  if (name == "heisenberg1") return finish_model(name, heisenberg_spec(1));
  if (name == "free33_v3") {
    auto m = finish_model("free33", free33_spec());
    m.name = "free33_v3";
    m.structure = m.generator_structure;
    return m;
  }
  if (name == "heisenberg_d" || name == "heisenberg2")
    return finish_model(name, heisenberg_spec(2));
  if (name.rfind("heisenberg", 0) == 0 && name.size() > 10) {
    const std::string suffix = name.substr(10);
    if (!suffix.empty() && suffix.find_first_not_of("0123456789") == std::string::npos) {
      const int d = std::stoi(suffix);
      if (d >= 1 && d <= 6) return finish_model(name, heisenberg_spec(d));
    }
  }
  if (name == "engel") return finish_model(name, engel_spec());
  if (name == "free33") return finish_model(name, free33_spec());
  if (name == "flat") return flat_model(3, 2);
  if (name.rfind("flat", 0) == 0) {
    // flat<n>_<k>, e.g. flat5_3
    const auto us = name.find('_');
    if (us != std::string::npos && us > 4) {
      const int n = std::stoi(name.substr(4, us - 4));
      const int k = std::stoi(name.substr(us + 1));
      if (n > 1 && k >= 1 && k < n) return flat_model(n, k);
    }
  }
  throw std::invalid_argument("unknown catalog model '" + name + "'");
}

}  // namespace ccgeo::structures
