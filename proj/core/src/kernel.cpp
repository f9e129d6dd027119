#include "kdens/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kdens {
namespace {

constexpr double kPi = std::numbers::pi;

// Raw (unnormalized) kernel profiles on [-1,1]^2.
double raw_cone(double dx, double dy) {
  const double r = std::hypot(dx, dy);
  return r < 1.0 ? 1.0 - r : 0.0;
}

double raw_pyramid(double dx, double dy) {
  const double m = std::max(std::abs(dx), std::abs(dy));
  return m < 1.0 ? 1.0 - m : 0.0;
}

const double kExpHalf = std::exp(-0.5);

double raw_tgauss(double dx, double dy) {
  const double r2 = dx * dx + dy * dy;
  if (r2 >= 1.0) return 0.0;
  return std::exp(-0.5 * r2) - kExpHalf;
}

// Cumulative of the raw pyramid over [0,x]x[0,y] for 0<=x,y<=1.
double pyramid_corner_integral(double x, double y) {
  if (x > y) std::swap(x, y);
  return x * y - x * y * y / 2.0 - x * x * x / 6.0;
}

// Signed cumulative over [0,x]x[0,y] for arbitrary x,y, using that the
// pyramid is even in both coordinates and zero outside [-1,1]^2.
double pyramid_signed_integral(double x, double y) {
  const double sx = x < 0 ? -1.0 : 1.0;
  const double sy = y < 0 ? -1.0 : 1.0;
  const double ax = std::min(std::abs(x), 1.0);
  const double ay = std::min(std::abs(y), 1.0);
  return sx * sy * pyramid_corner_integral(ax, ay);
}

// Inner integrals in y over [c,d] clipped to the unit-disk slice at x,
// in closed form. The outer x-integration is a 1D adaptive Simpson over
// pieces that avoid the circle crossings, so the integrand stays smooth.

double cone_inner(double x, double c, double d) {
  const double s2 = 1.0 - x * x;
  if (s2 <= 0.0) return 0.0;
  const double s = std::sqrt(s2);
  const double lo = std::max(c, -s);
  const double hi = std::min(d, s);
  if (hi <= lo) return 0.0;
  auto anti = [&](double y) {
    // antiderivative of 1 - sqrt(x^2 + y^2)
    if (x == 0.0) return y - (y < 0 ? -1.0 : 1.0) * y * y / 2.0;
    const double h = std::hypot(x, y);
    return y - 0.5 * (y * h + x * x * std::log(y + h));
  };
  return anti(hi) - anti(lo);
}

const double kSqrtHalfPi = std::sqrt(kPi / 2.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double tgauss_inner(double x, double c, double d) {
  const double s2 = 1.0 - x * x;
  if (s2 <= 0.0) return 0.0;
  const double s = std::sqrt(s2);
  const double lo = std::max(c, -s);
  const double hi = std::min(d, s);
  if (hi <= lo) return 0.0;
  const double gauss = std::exp(-0.5 * x * x) * kSqrtHalfPi *
                       (std::erf(hi * kInvSqrt2) - std::erf(lo * kInvSqrt2));
  return gauss - kExpHalf * (hi - lo);
}

template <typename G>
double adaptive_simpson(G&& g, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth >= 40 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

template <typename G>
double integrate_1d(G&& g, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = g(a), fm = g(m), fb = g(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 0);
}

// Integrate inner(x, c, d) over [a,b], splitting at the x-coordinates
// where the unit circle meets the lines y=c and y=d.
template <typename Inner>
double radial_volume(Inner&& inner, const Rect& r, double tol) {
  double cuts[8] = {r.x0, r.x1};
  int n = 2;
  auto add = [&](double x) {
    if (x > r.x0 && x < r.x1) cuts[n++] = x;
  };
  for (double y : {r.y0, r.y1}) {
    const double s2 = 1.0 - y * y;
    if (s2 > 0.0) {
      const double s = std::sqrt(s2);
      add(-s);
      add(s);
    }
  }
  add(0.0);
  std::sort(cuts, cuts + n);
  double total = 0.0;
  auto g = [&](double x) { return inner(x, r.y0, r.y1); };
  for (int i = 0; i + 1 < n; ++i) {
    const double w = cuts[i + 1] - cuts[i];
    if (w <= 0.0) continue;
    total += integrate_1d(g, cuts[i], cuts[i + 1],
                          tol * std::max(w / (r.x1 - r.x0), 1e-3));
  }
  return total;
}

}  // namespace

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::cone: return "cone";
    case KernelKind::pyramid: return "pyramid";
    case KernelKind::truncated_gaussian: return "gaussian";
  }
  return "?";
}

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "cone") return KernelKind::cone;
  if (s == "pyramid") return KernelKind::pyramid;
  if (s == "gaussian" || s == "truncated-gaussian")
    return KernelKind::truncated_gaussian;
  throw std::invalid_argument("unknown kernel kind: " + s);
}

Kernel::Kernel(KernelKind kind) : kind_(kind) {
  switch (kind_) {
    case KernelKind::cone:
      // raw volume pi/3, max slope 1
      norm_ = 3.0 / kPi;
      consts_ = {norm_, norm_};
      break;
    case KernelKind::pyramid:
      // raw volume 4/3, max slope 1 (along the axes)
      norm_ = 0.75;
      consts_ = {norm_, norm_};
      break;
    case KernelKind::truncated_gaussian: {
      // raw volume 2*pi*(1 - 3/2 e^{-1/2}); |d/dr| maximal at r = 1
      const double raw_volume = 2.0 * kPi * (1.0 - 1.5 * kExpHalf);
      norm_ = 1.0 / raw_volume;
      consts_ = {norm_ * kExpHalf, norm_ * (1.0 - kExpHalf)};
      break;
    }
  }
}

double Kernel::eval(double dx, double dy) const {
  switch (kind_) {
    case KernelKind::cone: return norm_ * raw_cone(dx, dy);
    case KernelKind::pyramid: return norm_ * raw_pyramid(dx, dy);
    case KernelKind::truncated_gaussian: return norm_ * raw_tgauss(dx, dy);
  }
  return 0.0;
}

double Kernel::cell_volume(const Rect& rect) const {
  if (!rect.valid()) throw std::invalid_argument("cell_volume: invalid rect");
  const Rect clipped = rect.intersect(Rect{-1.0, -1.0, 1.0, 1.0});
  if (clipped.degenerate()) return 0.0;
  if (kind_ == KernelKind::pyramid) {
    const double v = pyramid_signed_integral(clipped.x1, clipped.y1) -
                     pyramid_signed_integral(clipped.x0, clipped.y1) -
                     pyramid_signed_integral(clipped.x1, clipped.y0) +
                     pyramid_signed_integral(clipped.x0, clipped.y0);
    return norm_ * v;
  }
  const double tol = 1e-9 / norm_;
  if (kind_ == KernelKind::cone)
    return norm_ * radial_volume(cone_inner, clipped, tol);
  return norm_ * radial_volume(tgauss_inner, clipped, tol);
}

double kde_eval(std::span<const MovingPoint> points, const Kernel& kernel,
                double t, double x, double y) {
  if (points.empty()) throw std::invalid_argument("kde_eval: empty point set");
  double sum = 0.0;
  for (const auto& p : points) {
    const Vec2 pos = p.position_at(t);
    sum += kernel.eval(x - pos.x, y - pos.y);
  }
  return sum / static_cast<double>(points.size());
}

double kde_cell_volume(std::span<const MovingPoint> points,
                       const Kernel& kernel, double t, const Rect& rect) {
  if (points.empty())
    throw std::invalid_argument("kde_cell_volume: empty point set");
  if (!rect.valid())
    throw std::invalid_argument("kde_cell_volume: invalid rect");
  double sum = 0.0;
  for (const auto& p : points) {
    const Vec2 pos = p.position_at(t);
    // Shift the rect into kernel-centered coordinates.
    const Rect local{rect.x0 - pos.x, rect.y0 - pos.y, rect.x1 - pos.x,
                     rect.y1 - pos.y};
    if (local.x1 <= -1.0 || local.x0 >= 1.0 || local.y1 <= -1.0 ||
        local.y0 >= 1.0)
      continue;
    sum += kernel.cell_volume(local);
  }
  return sum / static_cast<double>(points.size());
}

}  // namespace kdens
