#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kdens/kernel.hpp"

namespace kdens {

/// Grid-based sampling of a kernel: cell c of the r x r grid over [-1,1]^2
/// holds ceil(r * z(c)) offsets at its center, z(c) the average kernel
/// value over c.
struct GridSampling {
  int r = 0;
  std::vector<Vec2> offsets;
  std::vector<long long> cell_counts;  // r*r, row-major
};

GridSampling grid_sample(const Kernel& kernel, int r);

struct Parameters {
  double rho = 0.0;
  double eps_cor = 0.0;
  double eps_dsc = 0.0;
};

/// rho = eps^3 / (6 lambda^2 (8 + 2 eps z*)),
/// eps_cor = eps^4 z* / (48 lambda^2 (8 + 2 eps z*)), eps_dsc = eps_cor / 3.
Parameters choose_parameters(double epsilon, double lambda, double z_star);

struct RangeProbe {
  Rect square;
  double t = 0.0;
};

/// Canonical verification probes: squares anchored at the source points at
/// 16 evenly spaced times, dyadic quadtree-aligned cells, and seeded random
/// squares. Recorded with every coreset via its digest.
struct ProbeFamily {
  std::vector<RangeProbe> probes;
  std::vector<double> times;
  std::uint64_t digest = 0;
};

ProbeFamily make_probe_family(const std::vector<MovingPoint>& points,
                              double D, double T, double min_side,
                              std::uint64_t seed, int random_count = 10000);

/// Static squares in the kernel frame, for per-kernel stage verification.
std::vector<Rect> kernel_probe_squares(std::uint64_t seed, int count = 4000);

/// Deterministic point approximation of the kernel volume: recursive
/// weighted-median mass partition of the support, one point per leaf cell.
std::vector<Vec2> kernel_mass_partition(const Kernel& kernel, int k);

struct CoresetSample {
  int id = 0;
  int source = 0;  // index into sources
  Vec2 offset;     // fixed offset from the source trajectory
};

/// Moving sample points standing in for the volume under KDE_P: every
/// sample is its source point's trajectory translated by a fixed offset,
/// so samples inherit the source velocity at all times.
class Coreset {
 public:
  std::vector<MovingPoint> sources;
  std::vector<CoresetSample> samples;
  double eps_cor = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t probe_digest = 0;

  std::size_t size() const { return samples.size(); }
  Vec2 position(std::size_t i, double t) const {
    const CoresetSample& s = samples[i];
    const Vec2 p = sources[s.source].position_at(t);
    return {p.x + s.offset.x, p.y + s.offset.y};
  }
  Vec2 velocity(std::size_t i, double t) const {
    return sources[samples[i].source].velocity_at(t);
  }
};

struct CoresetReport {
  int per_kernel_size = 0;
  double per_kernel_error = 0.0;     // measured vs exact kernel volumes
  std::vector<double> level_increments;  // per halving level, measured
  int merge_depth = 0;
  double final_error = 0.0;          // measured vs KDE volumes, full family
  std::size_t size = 0;
  double eps_cor = 0.0;
  bool verified = false;
};

struct CoresetBuildOptions {
  std::uint64_t seed = 1;
  double domain = 0.0;          // 0: inferred from the trajectories
  double min_probe_side = 0.0;  // 0: domain/64
  int random_probes = 10000;
  int per_kernel_min = 1 << 11;
  int per_kernel_max = 1 << 19;
  std::size_t target_size = 32768;
  int internal_probes = 2048;   // increment checks during merge-reduce
  int max_retries = 64;
  int max_restarts = 4;
};

struct CoresetBuildResult {
  Coreset coreset;
  CoresetReport report;
  ProbeFamily probes;
};

/// Three verified stages: a per-kernel cloud within 2/3 of the error
/// budget, then merge-reduce halvings over the translated copies within
/// the final third, then a full-family verification that gates the result.
CoresetBuildResult build_coreset_full(const std::vector<MovingPoint>& points,
                                      const Kernel& kernel, double eps_cor,
                                      double horizon,
                                      const CoresetBuildOptions& options = {});

Coreset build_coreset(const std::vector<MovingPoint>& points,
                      const Kernel& kernel, double eps_cor, double horizon,
                      const CoresetBuildOptions& options = {});

/// Halves a set of moving samples; the weight-doubled half stays within
/// error_budget of the full set on every probe. Pairs same-velocity
/// samples by spatial proximity and retries the random keep choices a
/// bounded number of times before failing.
std::vector<MovingPoint> halve(const std::vector<MovingPoint>& samples,
                               double error_budget,
                               const std::vector<RangeProbe>& probes,
                               std::uint64_t seed = 1);

/// Max over probes of | |Q ∩ R| / |Q| - V_R(KDE_P(t)) |, half-open square
/// membership.
double verify_range_error(const Coreset& coreset,
                          const std::vector<MovingPoint>& points,
                          const Kernel& kernel,
                          const std::vector<RangeProbe>& probes);

/// Same, against precomputed per-probe KDE volumes.
double verify_range_error(const Coreset& coreset,
                          const std::vector<RangeProbe>& probes,
                          const std::vector<double>& kde_volumes);

/// Exact counting of half-open square probes against arbitrary moving
/// positions: one sort + Fenwick sweep per distinct probe time.
class ProbeCounter {
 public:
  explicit ProbeCounter(const std::vector<RangeProbe>& probes);

  /// pos(i, t) -> Vec2 for i in [0, n)
  template <typename PosFn>
  std::vector<long long> count(std::size_t n, PosFn&& pos) const;

 private:
  struct Group {
    double t;
    std::vector<int> probe_idx;
  };
  std::vector<Group> groups_;
  std::vector<RangeProbe> probes_;
};

namespace detail {

struct Fenwick {
  std::vector<int> tree;
  explicit Fenwick(std::size_t n) : tree(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree.size(); i += i & (~i + 1)) ++tree[i];
  }
  long long prefix(std::size_t count) const {  // sum of first `count` slots
    long long s = 0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree[i];
    return s;
  }
};

}  // namespace detail

template <typename PosFn>
std::vector<long long> ProbeCounter::count(std::size_t n, PosFn&& pos) const {
  std::vector<long long> out(probes_.size(), 0);
  std::vector<double> xs(n), ys(n);
  std::vector<int> order(n);
  std::vector<double> sorted_y(n);
  for (const Group& g : groups_) {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = pos(i, g.t);
      xs[i] = p.x;
      ys[i] = p.y;
    }
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return xs[a] < xs[b]; });
    sorted_y.assign(ys.begin(), ys.end());
    std::sort(sorted_y.begin(), sorted_y.end());

    struct Corner {
      double x, y;
      int sign;
      int probe;
    };
    std::vector<Corner> corners;
    corners.reserve(g.probe_idx.size() * 4);
    for (int j : g.probe_idx) {
      const Rect& r = probes_[j].square;
      corners.push_back({r.x1, r.y1, +1, j});
      corners.push_back({r.x0, r.y1, -1, j});
      corners.push_back({r.x1, r.y0, -1, j});
      corners.push_back({r.x0, r.y0, +1, j});
    }
    std::sort(corners.begin(), corners.end(),
              [](const Corner& a, const Corner& b) { return a.x < b.x; });

    detail::Fenwick bit(n);
    std::size_t next = 0;
    for (const Corner& c : corners) {
      while (next < n && xs[order[next]] < c.x) {
        const double y = ys[order[next]];
        // duplicates share the first slot of their value; prefix queries
        // below stay consistent with strict y < Y
        bit.add(std::lower_bound(sorted_y.begin(), sorted_y.end(), y) -
                sorted_y.begin());
        ++next;
      }
      const std::size_t rank =
          std::lower_bound(sorted_y.begin(), sorted_y.end(), c.y) -
          sorted_y.begin();
      out[c.probe] += c.sign * bit.prefix(rank);
    }
  }
  return out;
}

}  // namespace kdens
