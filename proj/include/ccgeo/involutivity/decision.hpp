#ifndef CCGEO_INVOLUTIVITY_DECISION_HPP
#define CCGEO_INVOLUTIVITY_DECISION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccgeo/involutivity/bracket_form.hpp"

namespace ccgeo::involutivity {

enum class Verdict { NonInvolutive, InvolutiveAtX, Undecided };

std::string to_string(Verdict v);

struct DecisionOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  double involutive_threshold = 1e-10;  // residual below => null subspace found
  double noninvolutive_threshold = 1e-4;  // all restarts above => no null subspace
  int max_iterations = 400;
};

struct InvolutivityReport {
  Verdict verdict = Verdict::Undecided;
  int h = 0;  // queried sub-distribution dimension (k for the plain test)

  // Witness for NonInvolutive at h = k: a frame pair and an annihilating
  // covector lambda with lambda|V(x) = 0, lambda([X_a,X_b](x)) != 0.
  std::optional<std::pair<int, int>> witness_pair;  // 1-based
  std::vector<double> witness_covector;

  // Witness for InvolutiveAtX: columns span the B-null subspace of V(x)
  // in frame coordinates.
  std::optional<Eigen::MatrixXd> witness_subspace;

  double residual = 0.0;              // quantity the thresholds act on
  double min_restart_residual = -1.0; // min over restarts; -1 if none ran
  std::vector<double> restart_residuals;
  bool exact_certificate = false;
  bool oracle_checked = false;
  bool oracle_agrees = true;

  int restarts = 0;
  std::uint64_t seed = 0;
  // The paper quantifies over C^1 sub-distributions; this module decides the
  // point-wise bracket-form reduction and says so in every report.
  std::string criterion = "pointwise-B reduction";
  std::string notes;
};

// Non-involutivity of V at x: some bracket-form matrix is nonzero.
InvolutivityReport noninvolutive_at(const ComplementedStructure& S, const Point& x);

// h-non-involutivity at x via the bracket form on subspaces: verdict
// NonInvolutive iff no h-dimensional B_x-null subspace exists. Exact
// decomposable-kernel analysis handles h = 2 with dim ker beta <= 1;
// otherwise multistart minimisation over orthonormal h-frames, cross-checked
// against a brute-force grid oracle when k <= 4 and h = 2.
InvolutivityReport h_noninvolutive_at(const ComplementedStructure& S, const Point& x, int h,
                                      const DecisionOptions& opts = {});

struct MinOrderResult {
  bool involutive = false;  // B_x == 0: every order fails
  bool undecided = false;
  int order = 0;            // smallest h with h-non-involutivity
  int first_undecided_h = 0;
  std::vector<InvolutivityReport> reports;
};

MinOrderResult min_noninvolutive_order(const ComplementedStructure& S, const Point& x,
                                       const DecisionOptions& opts = {});

// Objective used by the search: f(W) = sum_l ||W^T Mhat_l W||_F^2 with
// per-component normalised matrices (invariant under complement rescaling).
double null_subspace_objective(const BracketForm& B, const Eigen::MatrixXd& W);

}  // namespace ccgeo::involutivity

#endif
