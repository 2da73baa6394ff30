#ifndef CCGEO_TANGENCY_CONTACT_HPP
#define CCGEO_TANGENCY_CONTACT_HPP

#include <Eigen/Dense>

#include "ccgeo/structures/structure.hpp"

namespace ccgeo::tangency {

using calc::Polynomial;
using structures::ComplementedStructure;

// Polynomial graph surface q -> (q, phi(q)) with symbolic derivative.
class SurfaceGraph {
 public:
  SurfaceGraph(int domain_dim, int ambient_dim, std::vector<Polynomial> phi, double domain_lo,
               double domain_hi);

  static SurfaceGraph from_toml(const std::string& text);
  static SurfaceGraph from_toml_file(const std::string& path);

  int domain_dim() const { return kp_; }
  int ambient_dim() const { return n_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }

  std::vector<double> embed(std::span<const double> q) const;  // Phi(q)
  // Columns span Tan(im Phi, Phi(q)): (e_i, d_i phi(q)).
  Eigen::MatrixXd tangent_frame(std::span<const double> q) const;

 private:
  int kp_;
  int n_;
  std::vector<Polynomial> phi_;                  // n - k' components in k' vars
  std::vector<std::vector<Polynomial>> dphi_;    // (n-k') x k'
  double lo_, hi_;
};

// Largest principal-angle sine between Tan(S, Phi(q)) and V(Phi(q)):
// the operator norm of (I - P_V) restricted to the tangent plane, with P_V
// the orthogonal projection onto V. Zero iff the tangent sits inside V.
double contact_deficiency(const ComplementedStructure& S, const SurfaceGraph& surf,
                          std::span<const double> q);

struct ContactCloud {
  std::vector<std::vector<double>> grid;       // all grid points (domain coords)
  std::vector<double> deficiency;              // delta per grid point
  std::vector<std::size_t> contact_indices;    // delta <= tau
  double tau = 0.0;
  int grid_per_axis = 0;
  std::vector<int> histogram;                  // log10-binned delta counts
  std::vector<double> histogram_edges;

  std::vector<std::vector<double>> contact_points() const;
};

ContactCloud contact_set(const ComplementedStructure& S, const SurfaceGraph& surf,
                         int grid_per_axis, double tau);

}  // namespace ccgeo::tangency

#endif
