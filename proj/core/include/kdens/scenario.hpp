#pragma once

#include <cstdint>
#include <vector>

#include "kdens/kernel.hpp"
#include "kdens/persistence.hpp"
#include "kdens/trajectory.hpp"

namespace kdens {

struct ScenarioSpec {
  int n = 1;
  int clusters = 1;
  double speed = 0.0;     // cluster drift speed (domain units per time)
  double D = 8.0;
  double T = 1.0;
  std::uint64_t seed = 0;
  double spread = 0.25;   // in-cluster position scatter
  double jitter = 0.1;    // per-point velocity scatter, relative to speed
  bool converge = false;  // drift clusters toward the domain center
  KernelKind kernel = KernelKind::pyramid;
  double epsilon = 0.5;
};

struct Scenario {
  std::vector<MovingPoint> points;
  KernelKind kernel = KernelKind::pyramid;
  double D = 8.0;
  double T = 1.0;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
};

/// Deterministic clustered linear trajectories. Points keep a full kernel
/// width of clearance from the domain boundary over [0,T], so KDE volume
/// over the domain stays exactly 1; an infeasible spec is rejected.
Scenario generate_scenario(const ScenarioSpec& spec);

/// The canonical two-cluster configuration used throughout the validation
/// suites; mild converging drift merges the clusters near the horizon.
Scenario two_cluster_scenario(int n, double D, double T, double epsilon,
                              std::uint64_t seed, KernelKind kind,
                              double speed = 0.35);

struct RasterKde {
  int resolution = 0;
  double D = 0.0;
  double t = 0.0;
  std::vector<double> heights;  // row-major, pixel centers
  double interpolation_slack = 0.0;  // lambda * pixel diagonal

  double at(int ix, int iy) const { return heights[iy * resolution + ix]; }
  CellComplex to_complex() const {
    return CellComplex::from_grid(resolution, resolution, heights);
  }
};

/// Pixel-center evaluation of KDE_P at time t.
RasterKde rasterize(const Scenario& scenario, double t, int resolution);

double raster_max(const RasterKde& r);

}  // namespace kdens
