#include "randers/geodesics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace randers {

namespace {

struct FlowState {
  Point x;
  Vector d;  // Euclidean unit direction
};

// Unit-F-speed velocity for direction d at x: v = d / (1 + t beta(d)).
Vector velocity_of(const RandersMetric& m, const Point& x, const Vector& d) {
  return d / (1.0 + m.scaled_form(x).dot(d));
}

FlowState derivative(const RandersMetric& m, const FlowState& s) {
  const double speed = 1.0 / (1.0 + m.scaled_form(s.x).dot(s.d));
  const double omega = m.t() * m.form().curl(s.x);
  FlowState ds;
  ds.x = speed * s.d;
  ds.d = (speed * omega) * Vector(s.d[1], -s.d[0]);
  return ds;
}

// 5-point Gauss-Legendre nodes/weights on [0, 1].
constexpr int kGaussN = 5;
constexpr double kGaussNode[kGaussN] = {0.046910077030668, 0.230765344947158, 0.5,
                                        0.769234655052841, 0.953089922969332};
constexpr double kGaussWeight[kGaussN] = {0.118463442528095, 0.239314335249683,
                                          0.284444444444444, 0.239314335249683,
                                          0.118463442528095};

double segment_length(const RandersMetric& m, const Point& a, const Point& b) {
  const Vector delta = b - a;
  const double base = delta.norm();
  double form_part = 0.0;
  for (int g = 0; g < kGaussN; ++g) {
    const Point xg = a + kGaussNode[g] * delta;
    form_part += kGaussWeight[g] * m.scaled_form(xg).dot(delta);
  }
  return base + form_part;
}

}  // namespace

GeodesicTrace integrate_geodesic(const RandersMetric& m, const GeodesicState& start,
                                 double total_time, double dt) {
  if (!m.base().flat())
    throw std::invalid_argument("integrate_geodesic: flat base required");
  if (!(dt > 0.0 && dt <= 1e-2))
    throw std::invalid_argument("integrate_geodesic: dt must lie in (0, 1e-2]");

  FlowState s;
  s.x = start.position;
  const double vnorm = start.velocity.norm();
  if (!(vnorm > 0.0))
    throw std::invalid_argument("integrate_geodesic: zero start direction");
  s.d = start.velocity / vnorm;

  GeodesicTrace trace;
  const int steps = static_cast<int>(std::ceil(total_time / dt - 1e-12));
  trace.reserve(steps + 1);
  auto record = [&](double time) {
    trace.push_back({s.x, velocity_of(m, s.x, s.d), time});
  };
  record(0.0);

  for (int n = 0; n < steps; ++n) {
    const double h = std::min(dt, total_time - n * dt);
    const FlowState k1 = derivative(m, s);
    const FlowState k2 = derivative(m, {s.x + 0.5 * h * k1.x, s.d + 0.5 * h * k1.d});
    const FlowState k3 = derivative(m, {s.x + 0.5 * h * k2.x, s.d + 0.5 * h * k2.d});
    const FlowState k4 = derivative(m, {s.x + h * k3.x, s.d + h * k3.d});
    s.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.d += (h / 6.0) * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d);

    const double drift = std::abs(s.d.norm() - 1.0);
    if (drift > 1e-6)
      throw StepSizeError("integrate_geodesic: unit-speed drift " + std::to_string(drift) +
                          " exceeds 1e-6 in one step; reduce dt");
    s.d /= s.d.norm();
    record(std::min((n + 1) * dt, total_time));
  }
  return trace;
}

double curve_length(const RandersMetric& m, const std::vector<Point>& vertices) {
  if (vertices.size() < 2)
    throw std::invalid_argument("curve_length: need at least two vertices");
  const Vector gap = vertices.back() - vertices.front();
  if (std::abs(gap[0] - std::round(gap[0])) > 1e-9 ||
      std::abs(gap[1] - std::round(gap[1])) > 1e-9)
    throw std::invalid_argument("curve_length: curve is not closed (endpoint != start mod 1)");

  double total = 0.0;
  for (size_t i = 0; i + 1 < vertices.size(); ++i)
    total += segment_length(m, vertices[i], vertices[i + 1]);
  return total;
}

std::vector<Point> straight_loop(const HomotopyClass& c, int samples, const Point& basepoint) {
  std::vector<Point> pts;
  pts.reserve(samples + 1);
  const Vector w(static_cast<double>(c.p), static_cast<double>(c.q));
  for (int i = 0; i <= samples; ++i)
    pts.push_back(basepoint + (static_cast<double>(i) / samples) * w);
  return pts;
}

double class_length(const RandersMetric& m, const HomotopyClass& c, const Point& basepoint) {
  if (c.p == 0 && c.q == 0)
    throw std::invalid_argument("class_length: (0, 0) is not a homotopy class of loops");
  const int samples = 256 * std::max(std::abs(c.p), std::abs(c.q));
  return curve_length(m, straight_loop(c, samples, basepoint));
}

void export_trace_csv(std::ostream& os, const GeodesicTrace& trace) {
  os << "t,x,y,vx,vy\n";
  char buf[160];
  for (const auto& s : trace) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", s.time,
                  s.position[0], s.position[1], s.velocity[0], s.velocity[1]);
    os << buf;
  }
}

}  // namespace randers
