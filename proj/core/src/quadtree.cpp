#include "kdens/quadtree.hpp"

#include <cmath>
#include <stdexcept>

namespace kdens {

StepFunction::StepFunction(std::vector<QuadNode> nodes, double domain,
                           double rho)
    : nodes_(std::move(nodes)), domain_(domain), rho_(rho) {}

std::vector<int> StepFunction::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
    if (nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

int StepFunction::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.level);
  return d;
}

int StepFunction::leaf_at(double x, double y) const {
  if (x < 0.0 || x > domain_ || y < 0.0 || y > domain_)
    throw std::out_of_range("StepFunction: query outside the domain");
  int cur = 0;
  while (!nodes_[cur].is_leaf()) {
    const Rect& r = nodes_[cur].region;
    const double cx = 0.5 * (r.x0 + r.x1);
    const double cy = 0.5 * (r.y0 + r.y1);
    const int q = (x >= cx ? 1 : 0) | (y >= cy ? 2 : 0);
    cur = nodes_[cur].first_child + q;
  }
  return cur;
}

double StepFunction::eval(double x, double y) const {
  return nodes_[leaf_at(x, y)].height;
}

std::vector<int> StepFunction::neighbors(int leaf) const {
  const Rect& target = nodes_[leaf].region;
  std::vector<int> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    const QuadNode& n = nodes_[cur];
    if (!n.region.touches(target)) continue;
    if (n.is_leaf()) {
      if (cur != leaf) out.push_back(cur);
    } else {
      for (int q = 0; q < 4; ++q) stack.push_back(n.first_child + q);
    }
  }
  return out;
}

std::vector<int> StepFunction::local_maxima() const {
  std::vector<int> out;
  for (int v : leaves()) {
    bool is_max = true;
    for (int w : neighbors(v)) {
      if (nodes_[w].height > nodes_[v].height) {
        is_max = false;
        break;
      }
    }
    if (is_max) out.push_back(v);
  }
  return out;
}

StepFunction build_volume_quadtree(const VolumeOracle& volume, double D,
                                   double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("quadtree: rho must be > 0");
  if (!(D > 0.0)) throw std::invalid_argument("quadtree: D must be > 0");
  const double total = volume(Rect{0.0, 0.0, D, D});
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument(
        "quadtree: oracle volume over the domain must be 1");

  std::vector<QuadNode> nodes;
  nodes.push_back(QuadNode{Rect{0.0, 0.0, D, D}, 0, -1, -1, total, 0.0});
  // Breadth-first so children of one node stay contiguous.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].mass < 0.0)
      throw std::runtime_error("quadtree: oracle returned negative volume");
    if (nodes[i].mass <= rho) continue;
    if (nodes[i].level >= 60)
      throw std::runtime_error("quadtree: depth cap exceeded (bad oracle?)");
    const Rect r = nodes[i].region;
    const double cx = 0.5 * (r.x0 + r.x1);
    const double cy = 0.5 * (r.y0 + r.y1);
    nodes[i].first_child = static_cast<int>(nodes.size());
    const Rect quads[4] = {{r.x0, r.y0, cx, cy},
                           {cx, r.y0, r.x1, cy},
                           {r.x0, cy, cx, r.y1},
                           {cx, cy, r.x1, r.y1}};
    for (int q = 0; q < 4; ++q) {
      nodes.push_back(QuadNode{quads[q], nodes[i].level + 1,
                               static_cast<int>(i), -1, volume(quads[q]),
                               0.0});
    }
  }
  for (auto& n : nodes)
    if (n.is_leaf()) n.height = n.mass / (n.side() * n.side());
  return StepFunction(std::move(nodes), D, rho);
}

double quadtree_error_bound(double side, double lambda, double rho) {
  const double linear = (2.0 * std::sqrt(2.0) / 3.0) * lambda * side;
  const double cubic = std::cbrt(6.0 * lambda * lambda * rho);
  return std::min(linear, cubic);
}

}  // namespace kdens
