#pragma once

#include <functional>
#include <vector>

#include "kdens/geometry.hpp"

namespace kdens {

/// Volume of some nonnegative function restricted to a rectangle.
using VolumeOracle = std::function<double(const Rect&)>;

struct QuadNode {
  Rect region;
  int level = 0;
  int parent = -1;
  int first_child = -1;  // index of child 0; children are contiguous
  double mass = 0.0;     // V(v)
  double height = 0.0;   // h(v) = mass / s(v)^2, meaningful for leaves

  bool is_leaf() const { return first_child < 0; }
  double side() const { return region.width(); }
};

/// Step function f_T backed by a volume-based quadtree: a node was
/// subdivided while its restricted volume exceeded rho, and every leaf
/// carries the average of f over its cell.
class StepFunction {
 public:
  StepFunction(std::vector<QuadNode> nodes, double domain, double rho);

  double domain() const { return domain_; }
  double rho() const { return rho_; }
  const std::vector<QuadNode>& nodes() const { return nodes_; }
  const QuadNode& node(int i) const { return nodes_[i]; }

  std::vector<int> leaves() const;
  int depth() const;

  /// Leaf containing (x,y) under the half-open convention (cells are
  /// [x0,x1) x [y0,y1), closed on the domain's top/right edges). Rejects
  /// out-of-domain queries.
  int leaf_at(double x, double y) const;

  /// f_T(x,y), the height of the containing leaf.
  double eval(double x, double y) const;

  /// All leaves u != v whose closed regions intersect R(v); corner-only
  /// contact counts.
  std::vector<int> neighbors(int leaf) const;

  /// Leaves v with h(v) >= h(w) for every neighbor w (weak local maxima).
  std::vector<int> local_maxima() const;

 private:
  std::vector<QuadNode> nodes_;
  double domain_;
  double rho_;
};

/// Subdivides while the oracle volume exceeds rho; leaf height is the cell
/// average mass/s^2. The oracle must be normalized (volume over the full
/// domain equal to 1 within 1e-8) and nonnegative. Aborts past depth 60,
/// which cannot happen for oracles with bounded density.
StepFunction build_volume_quadtree(const VolumeOracle& volume, double D,
                                   double rho);

/// Per-cell approximation error bound: min( (2*sqrt(2)/3) * lambda * side,
/// cbrt(6 * lambda^2 * rho) ).
double quadtree_error_bound(double side, double lambda, double rho);

}  // namespace kdens
