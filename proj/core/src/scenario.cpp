#include "kdens/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kdens {

Scenario generate_scenario(const ScenarioSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("scenario: n must be >= 1");
  if (spec.clusters < 1 || spec.clusters > spec.n)
    throw std::invalid_argument("scenario: bad cluster count");
  if (spec.D <= 0.0 || spec.T < 0.0)
    throw std::invalid_argument("scenario: bad domain or horizon");

  // margin keeps every kernel support inside the domain for all of [0,T]
  const double margin = 1.0 + 2.0 * spec.spread +
                        spec.speed * (1.0 + spec.jitter) * spec.T + 0.05;
  if (2.0 * margin >= spec.D)
    throw std::invalid_argument(
        "scenario: infeasible spec, speed/spread push points out of the domain");

  std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + 12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uang(0.0, 2.0 * std::numbers::pi);

  const double cx = spec.D / 2.0, cy = spec.D / 2.0;
  const double ring = std::max(0.0, (spec.D - 2.0 * margin) / 2.0);

  std::vector<Vec2> centers(spec.clusters);
  std::vector<Vec2> drifts(spec.clusters);
  for (int c = 0; c < spec.clusters; ++c) {
    if (spec.clusters == 1) {
      centers[c] = {cx, cy};
    } else {
      const double ang = 2.0 * std::numbers::pi * c / spec.clusters;
      centers[c] = {cx + ring * std::cos(ang), cy + ring * std::sin(ang)};
    }
    if (spec.speed == 0.0) {
      drifts[c] = {0.0, 0.0};
    } else if (spec.converge) {
      Vec2 to_center{cx - centers[c].x, cy - centers[c].y};
      const double len = to_center.norm();
      drifts[c] = len > 1e-12 ? to_center * (spec.speed / len) : Vec2{0, 0};
    } else {
      const double ang = uang(rng);
      drifts[c] = {spec.speed * std::cos(ang), spec.speed * std::sin(ang)};
    }
  }

  Scenario out;
  out.kernel = spec.kernel;
  out.D = spec.D;
  out.T = spec.T;
  out.epsilon = spec.epsilon;
  out.seed = spec.seed;
  out.points.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const int c = i % spec.clusters;
    auto clamp2 = [&](double v) {
      return std::clamp(v, -2.0 * spec.spread, 2.0 * spec.spread);
    };
    Vec2 pos{centers[c].x + clamp2(gauss(rng) * spec.spread),
             centers[c].y + clamp2(gauss(rng) * spec.spread)};
    Vec2 vel{drifts[c].x + gauss(rng) * spec.speed * spec.jitter,
             drifts[c].y + gauss(rng) * spec.speed * spec.jitter};
    // cap the jittered speed so the margin argument still applies
    const double cap = spec.speed * (1.0 + spec.jitter);
    vel.x = std::clamp(vel.x, -cap, cap);
    vel.y = std::clamp(vel.y, -cap, cap);
    out.points.push_back(MovingPoint::linear(i, pos, vel));
  }
  for (const auto& p : out.points) {
    for (double t : {0.0, spec.T}) {
      const Vec2 q = p.position_at(t);
      if (q.x < 1.0 || q.x > spec.D - 1.0 || q.y < 1.0 || q.y > spec.D - 1.0)
        throw std::invalid_argument("scenario: generated point too close to the boundary");
    }
  }
  return out;
}

Scenario two_cluster_scenario(int n, double D, double T, double epsilon,
                              std::uint64_t seed, KernelKind kind,
                              double speed) {
  ScenarioSpec spec;
  spec.n = n;
  spec.clusters = 2;
  spec.speed = speed;
  spec.D = D;
  spec.T = T;
  spec.seed = seed;
  spec.spread = 0.22;
  spec.jitter = 0.15;
  spec.converge = true;
  spec.kernel = kind;
  spec.epsilon = epsilon;
  return generate_scenario(spec);
}

RasterKde rasterize(const Scenario& scenario, double t, int resolution) {
  if (resolution < 2) throw std::invalid_argument("rasterize: resolution < 2");
  Kernel kernel(scenario.kernel);
  RasterKde r;
  r.resolution = resolution;
  r.D = scenario.D;
  r.t = t;
  r.heights.resize(static_cast<std::size_t>(resolution) * resolution);
  const double step = scenario.D / resolution;
  std::vector<Vec2> at_t(scenario.points.size());
  for (std::size_t i = 0; i < scenario.points.size(); ++i)
    at_t[i] = scenario.points[i].position_at(t);
  const double inv_n = 1.0 / static_cast<double>(scenario.points.size());
  for (int iy = 0; iy < resolution; ++iy) {
    const double y = (iy + 0.5) * step;
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = (ix + 0.5) * step;
      double sum = 0.0;
      for (const Vec2& p : at_t) sum += kernel.eval(x - p.x, y - p.y);
      r.heights[static_cast<std::size_t>(iy) * resolution + ix] = sum * inv_n;
    }
  }
  r.interpolation_slack =
      kernel.constants().lipschitz * step * std::numbers::sqrt2;
  return r;
}

double raster_max(const RasterKde& r) {
  double m = 0.0;
  for (double h : r.heights) m = std::max(m, h);
  return m;
}

}  // namespace kdens
