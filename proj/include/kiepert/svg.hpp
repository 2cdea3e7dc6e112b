#pragma once

// Standalone SVG figures: the hyperbola sampled per branch in its principal
// frame (so polylines never jump across an asymptote), the two circles, the
// triangles, and the axis lines, all mapped into a y-up viewport.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kiepert/kiepert.hpp"

namespace kiepert {

struct Viewport {
  double xmin = -10, xmax = 10, ymin = -10, ymax = 10;
  int width = 640, height = 640;

  bool valid() const { return xmax > xmin && ymax > ymin && width > 0 && height > 0; }
  double sx(double x) const { return (x - xmin) / (xmax - xmin) * width; }
  double sy(double y) const { return (ymax - y) / (ymax - ymin) * height; }
  double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

struct FigureStyle {
  std::string conic = "stroke:#1f4e9c;stroke-width:1.6;fill:none";
  std::string circles = "stroke:#777777;stroke-width:1;fill:none;stroke-dasharray:5 3";
  std::string reference = "stroke:#222222;stroke-width:1.4;fill:none";
  std::string inscribed = "stroke:#b03030;stroke-width:1.4;fill:none";
  std::string axis = "stroke:#2d8a4a;stroke-width:1;stroke-dasharray:2 3;fill:none";
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline void polyline(std::ostringstream& os, const Viewport& vp,
                     const std::vector<std::pair<double, double>>& pts, const std::string& style,
                     const std::string& cls) {
  if (pts.size() < 2) return;
  os << "  <polyline class=\"" << cls << "\" style=\"" << style << "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << fmt(vp.sx(pts[i].first)) << ',' << fmt(vp.sy(pts[i].second));
  }
  os << "\"/>\n";
}

// sample one hyperbola branch in the principal frame and map back
inline std::vector<std::pair<double, double>> branch(double cx, double cy, double cth, double sth,
                                                     double rx, double ry, int dir, bool x_opens,
                                                     double reach, int n = 256) {
  double umax = std::acosh(std::max(reach, 1.5));
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    double u = -umax + 2 * umax * i / n;
    double px = dir * rx * std::cosh(u), py = ry * std::sinh(u);
    if (!x_opens) std::swap(px, py);
    pts.emplace_back(cx + cth * px - sth * py, cy + sth * px + cth * py);
  }
  return pts;
}

}  // namespace detail

// Conic as two polylines (hyperbola) or one (ellipse), in world coordinates.
inline std::vector<std::vector<std::pair<double, double>>> sample_conic(
    const Conic<ApproxReal>& k, const Point<ApproxReal>& center, const Viewport& vp) {
  double A = approx(k.A()), B = approx(k.B()), C = approx(k.C());
  double cx = approx(center.ax()), cy = approx(center.ay());

  // rotate to principal axes: angle th with tan(2 th) = B / (A - C)
  double th = 0.5 * std::atan2(B, A - C);
  double cth = std::cos(th), sth = std::sin(th);
  // rotated quadratic coefficients
  double a = A * cth * cth + B * cth * sth + C * sth * sth;
  double c = A * sth * sth - B * cth * sth + C * cth * cth;
  // constant at the center: evaluate the original conic there
  Point<ApproxReal> ctr{ApproxReal(cx), ApproxReal(cy)};
  double f = approx(k.eval(ctr));
  std::vector<std::vector<std::pair<double, double>>> out;
  if (a * c < 0) {  // hyperbola
    bool x_opens = (-f / a) > 0;
    double rx = std::sqrt(std::abs(f / a)), ry = std::sqrt(std::abs(f / c));
    if (!x_opens) std::swap(rx, ry);
    double reach = vp.diag() / std::min(rx, ry) + 2;
    for (int dir : {1, -1})
      out.push_back(detail::branch(cx, cy, cth, sth, rx, ry, dir, x_opens, reach));
  } else if (a * c > 0 && f * a < 0) {  // ellipse
    double rx = std::sqrt(-f / a), ry = std::sqrt(-f / c);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 256; ++i) {
      double u = 2 * M_PI * i / 256;
      double px = rx * std::cos(u), py = ry * std::sin(u);
      pts.emplace_back(cx + cth * px - sth * py, cy + sth * px + cth * py);
    }
    out.push_back(pts);
  }
  return out;
}

inline Viewport viewport_for(const KiepertScene<ApproxReal>& scene, double margin = 1.3) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  auto take = [&](const Point<ApproxReal>& p) {
    if (p.at_infinity()) return;
    lo_x = std::min(lo_x, approx(p.ax()));
    hi_x = std::max(hi_x, approx(p.ax()));
    lo_y = std::min(lo_y, approx(p.ay()));
    hi_y = std::max(hi_y, approx(p.ay()));
  };
  for (int i = 0; i < 3; ++i) take(scene.reference.v[i]);
  take(scene.fermat.f1);
  take(scene.fermat.f2);
  // the circles have squared radius 4 / |m|^2 around the Fermat points
  double r = 2 / std::sqrt(std::abs(approx(scene.frame.scale_sq())));
  lo_x -= r;
  hi_x += r;
  lo_y -= r;
  hi_y += r;
  double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
  double half = margin * std::max(hi_x - lo_x, hi_y - lo_y) / 2;
  if (half <= 0) half = 1;
  return Viewport{cx - half, cx + half, cy - half, cy + half, 640, 640};
}

inline std::string render_svg(const KiepertScene<ApproxReal>& scene, const YiuTriangles& yiu,
                              const Line<ApproxReal>& perspector_axis,
                              const FigureStyle& style = {}, Viewport vp = {}) {
  if (!vp.valid()) vp = viewport_for(scene);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.width
     << "\" height=\"" << vp.height << "\" viewBox=\"0 0 " << vp.width << ' ' << vp.height
     << "\">\n";

  for (const auto& br : sample_conic(scene.conic, scene.center, vp))
    detail::polyline(os, vp, br, style.conic, "conic");

  double r = 2 / std::sqrt(std::abs(approx(scene.frame.scale_sq())));
  for (const Point<ApproxReal>* f : {&scene.fermat.f2, &scene.fermat.f1}) {
    os << "  <circle class=\"circle\" style=\"" << style.circles << "\" cx=\""
       << detail::fmt(vp.sx(approx(f->ax()))) << "\" cy=\"" << detail::fmt(vp.sy(approx(f->ay())))
       << "\" r=\"" << detail::fmt(r / (vp.xmax - vp.xmin) * vp.width) << "\"/>\n";
  }

  auto polygon = [&](const Triangle<ApproxReal>& t, const std::string& st, const std::string& cls) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 4; ++i) {
      const auto& p = t.v[i % 3];
      pts.emplace_back(approx(p.ax()), approx(p.ay()));
    }
    detail::polyline(os, vp, pts, st, cls);
  };
  polygon(scene.reference, style.reference, "reference");
  polygon(yiu.pqr, style.inscribed, "inscribed");
  polygon(yiu.pqr_prime, style.inscribed, "inscribed");

  // axis lines clipped to the viewport box
  auto draw_line = [&](const Line<ApproxReal>& l, const std::string& cls) {
    double a = approx(l.a), b = approx(l.b), c = approx(l.c);
    if (a == 0 && b == 0) return;
    std::vector<std::pair<double, double>> hits;
    auto try_hit = [&](double x, double y) {
      if (x >= vp.xmin - 1e-9 && x <= vp.xmax + 1e-9 && y >= vp.ymin - 1e-9 && y <= vp.ymax + 1e-9)
        hits.emplace_back(x, y);
    };
    if (b != 0) {
      try_hit(vp.xmin, -(a * vp.xmin + c) / b);
      try_hit(vp.xmax, -(a * vp.xmax + c) / b);
    }
    if (a != 0) {
      try_hit(-(b * vp.ymin + c) / a, vp.ymin);
      try_hit(-(b * vp.ymax + c) / a, vp.ymax);
    }
    if (hits.size() >= 2) detail::polyline(os, vp, {hits.front(), hits.back()}, style.axis, cls);
  };
  // radical axis of the two circles = perpendicular bisector of the Fermat pair
  Circle<ApproxReal> c1(scene.fermat.f2, ApproxReal(r * r));
  Circle<ApproxReal> c2(scene.fermat.f1, ApproxReal(r * r));
  draw_line(radical_axis(c1, c2), "radical_axis");
  draw_line(perspector_axis, "perspector_axis");

  os << "</svg>\n";
  return os.str();
}

}  // namespace kiepert
