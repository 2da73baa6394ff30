#ifndef CCGEO_REPORT_ACCEPTANCE_HPP
#define CCGEO_REPORT_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccgeo/support/emit.hpp"

namespace ccgeo::report {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  double total_seconds = 0.0;
  std::uint64_t seed = 0;
  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return !criteria.empty();
  }
};

// Runs the full acceptance suite; criteria and tolerances are pinned in the
// implementation. Prints one pass/fail line per criterion to stdout when
// `verbose` is set.
AcceptanceReport run_acceptance(std::uint64_t seed, bool verbose);

Json acceptance_to_json(const AcceptanceReport& rep);

// Lattice dynamic-programming oracle for the heisenberg1 vertical distance
// d_V(0,(0,0,s)): Dijkstra over exact horizontal moves on the grid
// x = i h, y = j h, t = k h^2/2 (the drift closes on the lattice). Returns
// the best lattice path length; an upper approximation of d_V with small
// angular excess. 2s/h^2 must be an integer.
double heisenberg_vertical_dp(double s, double h, double xy_radius);

}  // namespace ccgeo::report

#endif
