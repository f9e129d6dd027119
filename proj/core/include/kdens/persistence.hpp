#pragma once

#include <vector>

#include "kdens/geometry.hpp"

namespace kdens {

/// Birth-death pair in the maxima filtration (birth >= death). The one
/// essential pair carries the global maximum paired with the global
/// minimum height so its persistence is finite.
struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;
  int birth_cell = -1;  // plateau representative of the maximum
  int death_cell = -1;  // merge (saddle) cell, -1 for the essential pair
  bool essential = false;

  double persistence() const { return birth - death; }
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
};

/// Piecewise-constant field on a finite set of cells with symmetric
/// adjacency. Grid complexes use 8-connectivity (edge or corner), the same
/// neighbor semantics as quadtree leaves.
class CellComplex {
 public:
  static CellComplex from_grid(int width, int height,
                               std::vector<double> values);
  static CellComplex from_cells(std::vector<double> heights,
                                std::vector<std::pair<int, int>> edges);

  int size() const { return static_cast<int>(heights_.size()); }
  double height(int i) const { return heights_[i]; }
  const std::vector<double>& heights() const { return heights_; }
  int grid_width() const { return grid_w_; }
  int grid_height() const { return grid_h_; }

  void append_neighbors(int i, std::vector<int>& out) const;

 private:
  std::vector<double> heights_;
  int grid_w_ = 0, grid_h_ = 0;    // grid mode when > 0
  std::vector<int> adj_offsets_;   // CSR adjacency otherwise
  std::vector<int> adj_;
};

/// Sweep cells in decreasing height (ties by cell index) with union-find;
/// merging kills the younger component at the merge height.
PersistenceDiagram maxima_persistence(const CellComplex& complex);

/// Pairs with birth - death > threshold, essential pair included.
std::vector<PersistencePair> persistent_maxima(const PersistenceDiagram& d,
                                               double threshold);

/// Optimal bottleneck matching: partner[i] is the index in b matched to
/// a.pairs[i], or -1 for the diagonal.
struct BottleneckMatching {
  double distance = 0.0;
  std::vector<int> partner;
};

BottleneckMatching bottleneck_matching(const PersistenceDiagram& a,
                                       const PersistenceDiagram& b);

double bottleneck_distance(const PersistenceDiagram& a,
                           const PersistenceDiagram& b);

/// Lemma-style injection check between a field and its approximation on a
/// shared raster: verifies the pointwise gap, diagram stability, and that
/// every maximum of f with persistence > 2*epsilon has a distinct matched
/// maximum of fhat. Failures are reported, not thrown.
struct InjectionReport {
  double max_gap = 0.0;
  double bottleneck = 0.0;
  bool gap_within_epsilon = false;
  bool bottleneck_within_gap = false;
  struct Match {
    PersistencePair from;
    PersistencePair to;
  };
  std::vector<Match> matched;
  std::vector<PersistencePair> unmatched;

  bool ok() const {
    return gap_within_epsilon && bottleneck_within_gap && unmatched.empty();
  }
};

InjectionReport check_injection(const CellComplex& f, const CellComplex& fhat,
                                double epsilon);

}  // namespace kdens
