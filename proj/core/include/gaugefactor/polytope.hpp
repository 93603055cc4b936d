#pragma once

// H- and V-representations of small polytopes and conversion between them.

#include <Eigen/Dense>
#include <vector>

namespace gaugefactor {

/// Vertex deduplication tolerance.
inline constexpr double kGeomTolerance = 1e-8;

/// Dimension cap for vertex enumeration.
inline constexpr int kMaxEnumerationDim = 6;
/// Facet cap for vertex enumeration.
inline constexpr int kMaxEnumerationFacets = 1024;

/// { x : normals.row(j) · x <= offsets(j) }.
struct HPolytope {
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;

  int dim() const { return static_cast<int>(normals.cols()); }
  int num_facets() const { return static_cast<int>(normals.rows()); }
  bool contains(const Eigen::VectorXd& x, double tol = kGeomTolerance) const;
};

struct VPolytope {
  int dim = 0;
  std::vector<Eigen::VectorXd> vertices;
};

/// Exact vertex set of a bounded, nonempty H-polytope via the double
/// description method on the homogenized cone. Degenerate vertices are
/// reported once. Throws ScaleLimit past the dimension/facet caps and
/// Unbounded if the polytope has a recession direction.
VPolytope vertex_enumeration(const HPolytope& polytope);

/// Drops points that are convex combinations of the others (one LP each).
VPolytope remove_interior_points(const VPolytope& polytope);

/// Facet description of conv(points). The hull must be full-dimensional.
HPolytope facet_enumeration(const VPolytope& polytope);

}  // namespace gaugefactor
