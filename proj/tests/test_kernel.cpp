#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kdens/kernel.hpp"

using namespace kdens;

namespace {

const KernelKind kAllKinds[] = {KernelKind::cone, KernelKind::pyramid,
                                KernelKind::truncated_gaussian};

// Midpoint-rule reference integrator, independent of the adaptive path.
double midpoint_volume(const Kernel& k, const Rect& r, int cells) {
  const double dx = r.width() / cells;
  const double dy = r.height() / cells;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      sum += k.eval(r.x0 + (i + 0.5) * dx, r.y0 + (j + 0.5) * dy);
  return sum * dx * dy;
}

}  // namespace

TEST_CASE("eval matches the analytic normalizations") {
  Kernel pyramid(KernelKind::pyramid);
  CHECK(pyramid.eval(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
  Kernel cone(KernelKind::cone);
  CHECK(cone.eval(1, 0) == 0.0);
  CHECK(cone.eval(0, 0) ==
        doctest::Approx(3.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(cone.eval(0.97, 0.97) == 0.0);  // outside the unit disk
}

TEST_CASE("total volume is 1 and peak at most 1") {
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    CHECK(k.cell_volume(Rect{-1, -1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(k.constants().peak <= 1.0);
    CHECK(k.constants().peak > 0.0);
    CHECK(k.eval(0, 0) == doctest::Approx(k.constants().peak).epsilon(1e-12));
    // zero outside support
    CHECK(k.eval(1.001, 0.0) == 0.0);
    CHECK(k.eval(-2.0, 0.5) == 0.0);
  }
}

TEST_CASE("constants match numeric probing") {
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    // Directional slope probe along rays, central differences.
    double max_slope = 0.0;
    const double h = 1e-6;
    for (int a = 0; a < 16; ++a) {
      const double ang = a * std::numbers::pi / 16.0;
      const double cx = std::cos(ang), cy = std::sin(ang);
      for (int i = 1; i < 2000; ++i) {
        const double r = i * (1.0 - 1e-4) / 2000.0;
        const double s =
            std::abs(k.eval((r + h) * cx, (r + h) * cy) -
                     k.eval((r - h) * cx, (r - h) * cy)) /
            (2 * h);
        max_slope = std::max(max_slope, s);
      }
    }
    CHECK(max_slope == doctest::Approx(k.constants().lipschitz).epsilon(1e-6));
    CHECK(k.eval(0, 0) == doctest::Approx(k.constants().peak).epsilon(1e-9));
  }
}

TEST_CASE("Lipschitz bound holds for random offset pairs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    const double lam = k.constants().lipschitz;
    for (int i = 0; i < 10000; ++i) {
      const double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng);
      const double lhs = std::abs(k.eval(ax, ay) - k.eval(bx, by));
      const double rhs = lam * std::hypot(ax - bx, ay - by) + 1e-9;
      REQUIRE(lhs <= rhs);
    }
  }
}

TEST_CASE("cell_volume analytic examples") {
  Kernel pyramid(KernelKind::pyramid);
  CHECK(pyramid.cell_volume(Rect{-1, -1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pyramid.cell_volume(Rect{0, -1, 1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
  Kernel cone(KernelKind::cone);
  CHECK(cone.cell_volume(Rect{0, 0, 1, 1}) == doctest::Approx(0.25).epsilon(1e-9));
  // degenerate and disjoint rects
  CHECK(pyramid.cell_volume(Rect{0.3, -0.2, 0.3, 0.9}) == 0.0);
  CHECK(cone.cell_volume(Rect{2, 2, 3, 3}) == 0.0);
}

TEST_CASE("pyramid closed form agrees with quadrature-free reference") {
  Kernel pyramid(KernelKind::pyramid);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  for (int i = 0; i < 50; ++i) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    const Rect r{a, c, b, d};
    const double closed = pyramid.cell_volume(r);
    const double ref = midpoint_volume(pyramid, r, 700);
    CHECK(closed == doctest::Approx(ref).epsilon(0).scale(1).epsilon(2e-5));
  }
}

TEST_CASE("cell_volume is additive over a 2x2 split") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    for (int i = 0; i < 20; ++i) {
      double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      if (a > b) std::swap(a, b);
      if (c > d) std::swap(c, d);
      const double xm = 0.5 * (a + b), ym = 0.5 * (c + d);
      const double whole = k.cell_volume(Rect{a, c, b, d});
      const double parts = k.cell_volume(Rect{a, c, xm, ym}) +
                           k.cell_volume(Rect{xm, c, b, ym}) +
                           k.cell_volume(Rect{a, ym, xm, d}) +
                           k.cell_volume(Rect{xm, ym, b, d});
      REQUIRE(std::abs(whole - parts) <= 2e-9);
    }
  }
}

TEST_CASE("cell_volume is monotone under rect growth") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::uniform_real_distribution<double> grow(0.0, 0.4);
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    for (int i = 0; i < 30; ++i) {
      double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      if (a > b) std::swap(a, b);
      if (c > d) std::swap(c, d);
      const Rect small{a, c, b, d};
      const Rect big{a - grow(rng), c - grow(rng), b + grow(rng), d + grow(rng)};
      REQUIRE(k.cell_volume(big) >= k.cell_volume(small) - 1e-9);
    }
  }
}

TEST_CASE("kde_eval basics") {
  Kernel k(KernelKind::pyramid);
  std::vector<MovingPoint> one{MovingPoint::linear(0, {0, 0}, {0, 0})};
  CHECK(kde_eval(one, k, 0.0, 0, 0) ==
        doctest::Approx(k.constants().peak).epsilon(1e-12));

  std::vector<MovingPoint> two{MovingPoint::linear(0, {2, 2}, {0, 0}),
                               MovingPoint::linear(1, {2, 2}, {0, 0})};
  CHECK(kde_eval(two, k, 0.0, 2, 2) ==
        doctest::Approx(k.constants().peak).epsilon(1e-12));
  // farther than one kernel width in Chebyshev distance from every point
  CHECK(kde_eval(two, k, 0.0, 3.5, 2.0) == 0.0);

  std::vector<MovingPoint> none;
  CHECK_THROWS_AS(kde_eval(none, k, 0.0, 0, 0), std::invalid_argument);
}

TEST_CASE("kde_eval follows motion") {
  Kernel k(KernelKind::cone);
  std::vector<MovingPoint> pts{MovingPoint::linear(0, {1, 1}, {1, 0})};
  CHECK(kde_eval(pts, k, 2.0, 3, 1) ==
        doctest::Approx(k.constants().peak).epsilon(1e-12));
}

TEST_CASE("kde_cell_volume normalization and halves") {
  const double D = 6.0;
  for (KernelKind kind : kAllKinds) {
    Kernel k(kind);
    std::vector<MovingPoint> pts{
        MovingPoint::linear(0, {2.0, 2.0}, {0.05, 0.02}),
        MovingPoint::linear(1, {4.0, 3.5}, {-0.04, 0.01}),
        MovingPoint::linear(2, {3.0, 4.0}, {0.0, -0.05})};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int i = 0; i < 20; ++i) {
      const double t = ut(rng);
      const double v = kde_cell_volume(pts, k, t, Rect{0, 0, D, D});
      REQUIRE(std::abs(v - 1.0) <= 1e-8);
    }
  }
  // one point, rect = its kernel support
  Kernel k(KernelKind::pyramid);
  std::vector<MovingPoint> center{MovingPoint::linear(0, {3, 3}, {0, 0})};
  CHECK(kde_cell_volume(center, k, 0.0, Rect{2, 2, 4, 4}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // two disjointly supported kernels; rect covers exactly one support
  std::vector<MovingPoint> two{MovingPoint::linear(0, {1.5, 3}, {0, 0}),
                               MovingPoint::linear(1, {4.5, 3}, {0, 0})};
  CHECK(kde_cell_volume(two, k, 0.0, Rect{0.5, 2, 2.5, 4}) ==
        doctest::Approx(0.5).epsilon(1e-9));
}
