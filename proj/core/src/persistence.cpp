#include "kdens/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kdens {

CellComplex CellComplex::from_grid(int width, int height,
                                   std::vector<double> values) {
  if (width <= 0 || height <= 0 ||
      values.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("CellComplex: bad grid dimensions");
  CellComplex c;
  c.heights_ = std::move(values);
  c.grid_w_ = width;
  c.grid_h_ = height;
  return c;
}

CellComplex CellComplex::from_cells(std::vector<double> heights,
                                    std::vector<std::pair<int, int>> edges) {
  CellComplex c;
  const int n = static_cast<int>(heights.size());
  c.heights_ = std::move(heights);
  std::vector<int> degree(n, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw std::invalid_argument("CellComplex: bad edge");
    ++degree[a];
    ++degree[b];
  }
  c.adj_offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) c.adj_offsets_[i + 1] = c.adj_offsets_[i] + degree[i];
  c.adj_.resize(c.adj_offsets_[n]);
  std::vector<int> cursor(c.adj_offsets_.begin(), c.adj_offsets_.end() - 1);
  for (auto [a, b] : edges) {
    c.adj_[cursor[a]++] = b;
    c.adj_[cursor[b]++] = a;
  }
  return c;
}

void CellComplex::append_neighbors(int i, std::vector<int>& out) const {
  if (grid_w_ > 0) {
    const int x = i % grid_w_, y = i / grid_w_;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx >= 0 && nx < grid_w_ && ny >= 0 && ny < grid_h_)
          out.push_back(ny * grid_w_ + nx);
      }
  } else {
    for (int k = adj_offsets_[i]; k < adj_offsets_[i + 1]; ++k)
      out.push_back(adj_[k]);
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
};

}  // namespace

PersistenceDiagram maxima_persistence(const CellComplex& complex) {
  const int n = complex.size();
  PersistenceDiagram diagram;
  if (n == 0) return diagram;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (complex.height(a) != complex.height(b))
      return complex.height(a) > complex.height(b);
    return a < b;
  });

  UnionFind uf(n);
  std::vector<int> rep(n, -1);  // root -> birth cell of its component
  std::vector<char> processed(n, 0);
  // older = born higher; ties by lower representative index
  auto older = [&](int ra, int rb) {
    const double ha = complex.height(rep[ra]);
    const double hb = complex.height(rep[rb]);
    if (ha != hb) return ha > hb;
    return rep[ra] < rep[rb];
  };

  std::vector<int> nbrs;
  std::vector<int> roots;
  for (int c : order) {
    nbrs.clear();
    complex.append_neighbors(c, nbrs);
    roots.clear();
    for (int w : nbrs) {
      if (!processed[w]) continue;
      const int r = uf.find(w);
      if (std::find(roots.begin(), roots.end(), r) == roots.end())
        roots.push_back(r);
    }
    processed[c] = 1;
    if (roots.empty()) {
      rep[c] = c;  // a new maximum is born
      continue;
    }
    int survivor = roots[0];
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (older(roots[i], survivor)) survivor = roots[i];
    for (int r : roots) {
      if (r == survivor) continue;
      // Same-height merges inside a plateau are diagonal points of the
      // diagram and stay implicit.
      if (complex.height(rep[r]) != complex.height(c))
        diagram.pairs.push_back(PersistencePair{
            complex.height(rep[r]), complex.height(c), rep[r], c, false});
      uf.parent[r] = survivor;
    }
    uf.parent[c] = survivor;
  }

  const int final_root = uf.find(order[0]);
  const double global_min = complex.height(order[n - 1]);
  diagram.pairs.push_back(PersistencePair{complex.height(rep[final_root]),
                                          global_min, rep[final_root], -1,
                                          true});
  std::sort(diagram.pairs.begin(), diagram.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.birth != b.birth) return a.birth > b.birth;
              if (a.death != b.death) return a.death < b.death;
              return a.birth_cell < b.birth_cell;
            });
  return diagram;
}

std::vector<PersistencePair> persistent_maxima(const PersistenceDiagram& d,
                                               double threshold) {
  if (threshold < 0.0)
    throw std::invalid_argument("persistent_maxima: negative threshold");
  std::vector<PersistencePair> out;
  for (const auto& p : d.pairs)
    if (p.persistence() > threshold) out.push_back(p);
  return out;
}

namespace {

double linf(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Perfect-matching feasibility at radius r with diagonal proxies: left
// nodes are a-points then b-proxies, right nodes are b-points then
// a-proxies. Kuhn's augmenting paths; graph sizes here are small.
struct Matcher {
  const std::vector<PersistencePair>& a;
  const std::vector<PersistencePair>& b;
  int na, nb;
  std::vector<int> match_right;  // right node -> left node
  std::vector<char> visited;

  Matcher(const std::vector<PersistencePair>& a_,
          const std::vector<PersistencePair>& b_)
      : a(a_), b(b_), na(static_cast<int>(a_.size())),
        nb(static_cast<int>(b_.size())) {}

  bool edge(int left, int right, double r) const {
    const bool left_real = left < na;
    const bool right_real = right < nb;
    if (left_real && right_real) return linf(a[left], b[right]) <= r;
    if (left_real)  // a-point to its own diagonal proxy
      return right - nb == left && a[left].persistence() / 2.0 <= r;
    if (right_real)  // b-proxy to its own b-point
      return left - na == right && b[right].persistence() / 2.0 <= r;
    return true;  // proxy to proxy
  }

  bool augment(int left, double r) {
    for (int right = 0; right < nb + na; ++right) {
      if (visited[right] || !edge(left, right, r)) continue;
      visited[right] = 1;
      if (match_right[right] < 0 || augment(match_right[right], r)) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  }

  bool feasible(double r, std::vector<int>* partner_out) {
    match_right.assign(nb + na, -1);
    for (int left = 0; left < na + nb; ++left) {
      visited.assign(nb + na, 0);
      if (!augment(left, r)) return false;
    }
    if (partner_out) {
      partner_out->assign(na, -1);
      for (int right = 0; right < nb; ++right) {
        const int left = match_right[right];
        if (left >= 0 && left < na) (*partner_out)[left] = right;
      }
    }
    return true;
  }
};

}  // namespace

BottleneckMatching bottleneckMatchingImpl(const PersistenceDiagram& da,
                                          const PersistenceDiagram& db) {
  const auto& a = da.pairs;
  const auto& b = db.pairs;
  BottleneckMatching out;
  out.partner.assign(a.size(), -1);
  if (a.empty() && b.empty()) return out;

  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(p.persistence() / 2.0);
  for (const auto& q : b) candidates.push_back(q.persistence() / 2.0);
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  Matcher m(a, b);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (!m.feasible(candidates[hi], nullptr)) {
    // cannot happen: matching everything to the diagonal is feasible at
    // the largest half-persistence
    ++hi;
    if (hi >= candidates.size())
      throw std::logic_error("bottleneck: no feasible radius");
  }
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (m.feasible(candidates[mid], nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  out.distance = candidates[lo];
  m.feasible(candidates[lo], &out.partner);
  return out;
}

BottleneckMatching bottleneck_matching(const PersistenceDiagram& a,
                                       const PersistenceDiagram& b) {
  return bottleneckMatchingImpl(a, b);
}

double bottleneck_distance(const PersistenceDiagram& a,
                           const PersistenceDiagram& b) {
  return bottleneckMatchingImpl(a, b).distance;
}

InjectionReport check_injection(const CellComplex& f, const CellComplex& fhat,
                                double epsilon) {
  if (f.size() != fhat.size())
    throw std::invalid_argument("check_injection: rasters differ in size");
  InjectionReport report;
  for (int i = 0; i < f.size(); ++i)
    report.max_gap = std::max(report.max_gap,
                              std::abs(f.height(i) - fhat.height(i)));
  report.gap_within_epsilon = report.max_gap < epsilon;

  const PersistenceDiagram df = maxima_persistence(f);
  const PersistenceDiagram dfh = maxima_persistence(fhat);
  const BottleneckMatching m = bottleneck_matching(df, dfh);
  report.bottleneck = m.distance;
  report.bottleneck_within_gap = m.distance <= report.max_gap + 1e-12;

  for (std::size_t i = 0; i < df.pairs.size(); ++i) {
    if (df.pairs[i].persistence() <= 2.0 * epsilon) continue;
    const int partner = m.partner[i];
    if (partner < 0)
      report.unmatched.push_back(df.pairs[i]);
    else
      report.matched.push_back({df.pairs[i], dfh.pairs[partner]});
  }
  return report;
}

}  // namespace kdens
