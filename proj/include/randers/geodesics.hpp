#pragma once

// Randers geodesics on the flat torus: Euler-Lagrange integration in
// (position, direction) variables at unit F-speed, curve lengths by
// composite quadrature, and marked-length-spectrum probes.

#include "randers/metric.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace randers {

struct GeodesicState {
  Point position;     // lifted coordinates (universal cover)
  Vector velocity;    // unit F-speed: F(x, v) = 1
  double time = 0.0;  // F-arclength parameter
};

using GeodesicTrace = std::vector<GeodesicState>;

struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer winding pair (p, q), not both zero; (2,0) and (1,0) are distinct
// classes.
struct HomotopyClass {
  int p = 0;
  int q = 0;
};

// Integrates the Euler-Lagrange flow of F from the given state for F-time T
// with fixed step dt (classic RK4 on position and direction, direction
// renormalized after each step). The direction equation is
//   d' = t * curl(beta)(x) * (d2, -d1) / (1 + t beta(d)),
// so closed forms transport the direction exactly and the lifted path is a
// straight line. Throws StepSizeError if the per-step unit-speed drift
// exceeds 1e-6. Requires a flat base and a form with a jacobian.
GeodesicTrace integrate_geodesic(const RandersMetric& m, const GeodesicState& start,
                                 double total_time, double dt);

// F-length of a closed polyline given by lifted vertices v_0 .. v_n with
// v_n = v_0 mod Z^2 (rejected otherwise). Each straight segment is
// integrated with 5-point Gauss-Legendre, so the dh part of an exact form
// telescopes to quadrature accuracy and closed-polygon lengths obey
// l_F >= |winding| exactly.
double curve_length(const RandersMetric& m, const std::vector<Point>& vertices);

// F-length of the straight representative of the class (p, q); for closed
// beta this representative is a geodesic and, for exact beta, its length is
// sqrt(p^2 + q^2) = the flat class length.
double class_length(const RandersMetric& m, const HomotopyClass& c,
                    const Point& basepoint = Point::Zero());

// CSV export `t,x,y,vx,vy`, lifted coordinates.
void export_trace_csv(std::ostream& os, const GeodesicTrace& trace);

// Uniformly sampled straight loop from basepoint winding (p, q).
std::vector<Point> straight_loop(const HomotopyClass& c, int samples,
                                 const Point& basepoint = Point::Zero());

}  // namespace randers
