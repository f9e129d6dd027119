#pragma once

#include <stdexcept>
#include <vector>

#include "kdens/geometry.hpp"

namespace kdens {

/// One piece of piecewise-linear motion, valid from start_time until the
/// next segment takes over (or forever for the last segment).
struct MotionSegment {
  double start_time = 0.0;
  Vec2 pos;  // position at start_time
  Vec2 vel;  // displacement per unit time
};

class MovingPoint {
 public:
  MovingPoint() = default;
  MovingPoint(int id, std::vector<MotionSegment> segments)
      : id_(id), segments_(std::move(segments)) {
    if (segments_.empty())
      throw std::invalid_argument("MovingPoint: no segments");
    for (std::size_t i = 1; i < segments_.size(); ++i) {
      if (!(segments_[i].start_time > segments_[i - 1].start_time))
        throw std::invalid_argument(
            "MovingPoint: segment start times must be strictly increasing");
    }
  }

  static MovingPoint linear(int id, Vec2 pos, Vec2 vel, double t0 = 0.0) {
    return MovingPoint(id, {MotionSegment{t0, pos, vel}});
  }

  int id() const { return id_; }
  const std::vector<MotionSegment>& segments() const { return segments_; }

  const MotionSegment& segment_at(double t) const {
    if (t < segments_.front().start_time)
      throw std::out_of_range("MovingPoint: time before first segment");
    std::size_t i = segments_.size() - 1;
    while (i > 0 && segments_[i].start_time > t) --i;
    return segments_[i];
  }

  Vec2 position_at(double t) const {
    const MotionSegment& s = segment_at(t);
    return {s.pos.x + s.vel.x * (t - s.start_time),
            s.pos.y + s.vel.y * (t - s.start_time)};
  }

  Vec2 velocity_at(double t) const { return segment_at(t).vel; }

  /// Largest |velocity component| over all segments.
  double max_speed_component() const {
    double m = 0.0;
    for (const auto& s : segments_)
      m = std::max({m, std::abs(s.vel.x), std::abs(s.vel.y)});
    return m;
  }

  /// Position continuity across segment boundaries and containment in
  /// [0,D]^2 over [t0, horizon]. Linear pieces only need endpoint checks.
  void validate(double domain, double horizon, double tol = 1e-9) const {
    for (std::size_t i = 1; i < segments_.size(); ++i) {
      const auto& prev = segments_[i - 1];
      const auto& cur = segments_[i];
      Vec2 end{prev.pos.x + prev.vel.x * (cur.start_time - prev.start_time),
               prev.pos.y + prev.vel.y * (cur.start_time - prev.start_time)};
      if (std::abs(end.x - cur.pos.x) > tol || std::abs(end.y - cur.pos.y) > tol)
        throw std::invalid_argument("MovingPoint: discontinuous trajectory");
    }
    auto check = [&](Vec2 p) {
      if (p.x < 0.0 || p.x > domain || p.y < 0.0 || p.y > domain)
        throw std::invalid_argument("MovingPoint: leaves the domain");
    };
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& s = segments_[i];
      if (s.start_time > horizon) break;
      check(s.pos);
      double t_end = (i + 1 < segments_.size())
                         ? std::min(segments_[i + 1].start_time, horizon)
                         : horizon;
      if (t_end > s.start_time)
        check({s.pos.x + s.vel.x * (t_end - s.start_time),
               s.pos.y + s.vel.y * (t_end - s.start_time)});
    }
  }

 private:
  int id_ = 0;
  std::vector<MotionSegment> segments_;
};

}  // namespace kdens
