#pragma once

#include <span>
#include <string>

#include "kdens/geometry.hpp"
#include "kdens/trajectory.hpp"

namespace kdens {

enum class KernelKind { cone, pyramid, truncated_gaussian };

std::string to_string(KernelKind k);
KernelKind kernel_kind_from_string(const std::string& s);

/// lipschitz is the maximum absolute slope of the normalized kernel in any
/// direction; peak is its maximum value (attained at the origin).
struct KernelConstants {
  double lipschitz = 0.0;
  double peak = 0.0;
};

/// Normalized density bump supported inside the square [-1,1]^2 (kernel
/// width scaled to 1). Total volume over the support is 1, peak <= 1.
///
/// The truncated Gaussian is the radial shift-truncation
///   c * max(0, exp(-r^2/2) - exp(-1/2)),
/// which vanishes continuously on the unit circle; a hard clip to the
/// square would have unbounded slope at the support boundary and break
/// every Lipschitz-based bound downstream.
class Kernel {
 public:
  explicit Kernel(KernelKind kind);

  KernelKind kind() const { return kind_; }
  double normalization() const { return norm_; }
  const KernelConstants& constants() const { return consts_; }

  /// Normalized kernel value at offset (dx,dy) from the center; 0 outside
  /// the support.
  double eval(double dx, double dy) const;

  /// Exact volume under the kernel restricted to rect (rect may lie partly
  /// or fully outside the support). The pyramid uses a closed form; cone
  /// and truncated Gaussian use adaptive quadrature to 1e-9 absolute.
  double cell_volume(const Rect& rect) const;

 private:
  KernelKind kind_;
  double norm_ = 1.0;
  KernelConstants consts_;
};

/// (1/n) * sum over points of eval at the offset from the point's position
/// at time t. Rejects an empty point set.
double kde_eval(std::span<const MovingPoint> points, const Kernel& kernel,
                double t, double x, double y);

/// Exact volume under KDE_P at time t restricted to rect.
double kde_cell_volume(std::span<const MovingPoint> points,
                       const Kernel& kernel, double t, const Rect& rect);

}  // namespace kdens
