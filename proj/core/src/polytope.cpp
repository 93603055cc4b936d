#include "gaugefactor/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "gaugefactor/error.hpp"
#include "gaugefactor/lp.hpp"

namespace gaugefactor {
namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  Bitset operator&(const Bitset& other) const {
    Bitset out = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] &= other.words_[k];
    return out;
  }

  bool contains(const Bitset& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((other.words_[k] & ~words_[k]) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Eigen::VectorXd z;
  Bitset active;
};

void normalize(Eigen::VectorXd& z) {
  const double scale = z.cwiseAbs().maxCoeff();
  if (scale > 0.0) z /= scale;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - kGeomTolerance) return true;
    if (a(i) > b(i) + kGeomTolerance) return false;
  }
  return false;
}

std::vector<Eigen::VectorXd> dedupe(std::vector<Eigen::VectorXd> points) {
  std::vector<Eigen::VectorXd> out;
  for (auto& p : points) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& q) {
      return (p - q).cwiseAbs().maxCoeff() <= kGeomTolerance;
    });
    if (!seen) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

bool HPolytope::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "point/polytope dimension");
  return ((normals * x - offsets).array() <= tol).all();
}

VPolytope vertex_enumeration(const HPolytope& polytope) {
  const int d = polytope.dim();
  const int facets = polytope.num_facets();
  if (polytope.offsets.size() != facets) {
    throw Error(ErrorCode::DimensionMismatch, "H-rep normals/offsets row count");
  }
  if (d < 1 || d > kMaxEnumerationDim || facets > kMaxEnumerationFacets) {
    throw Error(ErrorCode::ScaleLimit, "vertex enumeration supports d<=" +
                                           std::to_string(kMaxEnumerationDim) + " and <=" +
                                           std::to_string(kMaxEnumerationFacets) + " facets (got d=" +
                                           std::to_string(d) + ", " + std::to_string(facets) + ")");
  }

  // Homogenized cone { (x,t) : a_j x - b_j t <= 0, -t <= 0 }.
  const int dim = d + 1;
  const int rows = facets + 1;
  Eigen::MatrixXd cone(rows, dim);
  cone.topLeftCorner(facets, d) = polytope.normals;
  cone.col(d).head(facets) = -polytope.offsets;
  for (int j = 0; j < facets; ++j) {
    const double s = cone.row(j).cwiseAbs().maxCoeff();
    if (s > 0.0) cone.row(j) /= s;
  }
  cone.row(facets).setZero();
  cone(facets, d) = -1.0;

  // Greedy choice of `dim` independent rows for the initial simplicial cone;
  // the t >= 0 row goes first so the starting cone lives in t >= 0.
  std::vector<int> order;
  order.push_back(facets);
  for (int j = 0; j < facets; ++j) order.push_back(j);
  std::vector<int> initial;
  Eigen::MatrixXd basis(0, dim);
  for (int r : order) {
    Eigen::MatrixXd trial(basis.rows() + 1, dim);
    trial << basis, cone.row(r);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
    lu.setThreshold(1e-10);
    if (lu.rank() == trial.rows()) {
      basis = trial;
      initial.push_back(r);
      if (static_cast<int>(initial.size()) == dim) break;
    }
  }
  if (static_cast<int>(initial.size()) < dim) {
    throw Error(ErrorCode::Unbounded, "H-rep has a lineality direction (not a bounded polytope)");
  }

  const double eps = 1e-10;
  std::vector<Ray> rays;
  {
    const Eigen::MatrixXd inv = basis.inverse();
    for (int k = 0; k < dim; ++k) {
      Ray ray{-inv.col(k), Bitset(static_cast<std::size_t>(rows))};
      normalize(ray.z);
      for (int i = 0; i < dim; ++i) {
        if (i != k) ray.active.set(static_cast<std::size_t>(initial[i]));
      }
      rays.push_back(std::move(ray));
    }
  }

  std::vector<bool> used(static_cast<std::size_t>(rows), false);
  for (int r : initial) used[static_cast<std::size_t>(r)] = true;

  for (int h = 0; h < rows; ++h) {
    if (used[static_cast<std::size_t>(h)]) continue;
    const Eigen::RowVectorXd normal = cone.row(h);
    std::vector<double> val(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = normal.dot(rays[k].z);
      if (val[k] > eps) {
        pos.push_back(k);
      } else if (val[k] < -eps) {
        neg.push_back(k);
      } else {
        zero.push_back(k);
      }
    }

    std::vector<Ray> next;
    next.reserve(zero.size() + neg.size());
    for (std::size_t k : zero) {
      Ray ray = rays[k];
      ray.active.set(static_cast<std::size_t>(h));
      next.push_back(std::move(ray));
    }
    for (std::size_t k : neg) next.push_back(rays[k]);

    const std::size_t needed = static_cast<std::size_t>(dim - 2);
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bitset common = rays[p].active & rays[q].active;
        if (common.count() < needed) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (rays[k].active.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray ray{val[p] * rays[q].z - val[q] * rays[p].z, common};
        normalize(ray.z);
        ray.active.set(static_cast<std::size_t>(h));
        next.push_back(std::move(ray));
      }
    }
    rays = std::move(next);
  }

  std::vector<Eigen::VectorXd> vertices;
  for (const Ray& ray : rays) {
    const double t = ray.z(d);
    if (t <= eps) {
      if (ray.z.head(d).cwiseAbs().maxCoeff() > eps) {
        throw Error(ErrorCode::Unbounded, "H-rep polytope is unbounded");
      }
      continue;
    }
    Eigen::VectorXd x = ray.z.head(d) / t;
    const double cutoff = 1e-13 * x.cwiseAbs().maxCoeff();
    x = x.unaryExpr([cutoff](double c) { return std::abs(c) <= cutoff ? 0.0 : c; });
    vertices.push_back(std::move(x));
  }
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "H-rep polytope is empty");

  std::sort(vertices.begin(), vertices.end(), lex_less);
  return VPolytope{d, dedupe(std::move(vertices))};
}

VPolytope remove_interior_points(const VPolytope& polytope) {
  std::vector<Eigen::VectorXd> kept = dedupe(polytope.vertices);
  const int d = polytope.dim;
  for (std::size_t i = 0; i < kept.size();) {
    if (kept.size() == 1) break;
    lp::LinearProgram program;
    const std::size_t k = kept.size() - 1;
    program.objective.assign(k, 0.0);
    program.bounds.assign(k, lp::Bound{0.0, lp::kInf});
    for (int row = 0; row < d; ++row) {
      std::vector<double> coeffs;
      coeffs.reserve(k);
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (j != i) coeffs.push_back(kept[j](row));
      }
      program.add(std::move(coeffs), lp::Relation::Equal, kept[i](row));
    }
    program.add(std::vector<double>(k, 1.0), lp::Relation::Equal, 1.0);
    if (lp::solve(program).optimal()) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return VPolytope{d, std::move(kept)};
}

HPolytope facet_enumeration(const VPolytope& polytope) {
  const int d = polytope.dim;
  if (polytope.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
  Eigen::VectorXd center = Eigen::VectorXd::Zero(d);
  for (const auto& v : polytope.vertices) center += v;
  center /= static_cast<double>(polytope.vertices.size());

  Eigen::MatrixXd shifted(static_cast<Eigen::Index>(polytope.vertices.size()), d);
  for (std::size_t i = 0; i < polytope.vertices.size(); ++i) {
    shifted.row(static_cast<Eigen::Index>(i)) = (polytope.vertices[i] - center).transpose();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
  lu.setThreshold(1e-10);
  if (lu.rank() < d) throw Error(ErrorCode::InvalidArgument, "point set is not full-dimensional");

  // Facets of the hull are the vertices of the polar body around the centroid.
  HPolytope polar{shifted, Eigen::VectorXd::Ones(shifted.rows())};
  const VPolytope polar_vertices = vertex_enumeration(polar);
  HPolytope out;
  out.normals.resize(static_cast<Eigen::Index>(polar_vertices.vertices.size()), d);
  out.offsets.resize(static_cast<Eigen::Index>(polar_vertices.vertices.size()));
  for (std::size_t k = 0; k < polar_vertices.vertices.size(); ++k) {
    const auto& y = polar_vertices.vertices[k];
    out.normals.row(static_cast<Eigen::Index>(k)) = y.transpose();
    out.offsets(static_cast<Eigen::Index>(k)) = 1.0 + y.dot(center);
  }
  return out;
}

}  // namespace gaugefactor
