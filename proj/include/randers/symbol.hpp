#pragma once

// Symbol metric of the BF-Laplacian for F = F_bar + t*beta, computed by
// fiber quadrature over the unit circle, together with the Holmes-Thompson
// volume density and the flip-symmetry diagnostics.

#include "randers/metric.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace randers {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform (trapezoidal) quadrature on the circle: theta_j = 2 pi j / Q,
// w_j = 2 pi / Q. Spectrally accurate for smooth periodic integrands and
// exact for trigonometric polynomials of degree < Q. Q must be even so the
// node set is symmetric under v -> -v.
class AngleQuadrature {
 public:
  explicit AngleQuadrature(int q) : q_(q) {
    if (q < 4 || q % 2 != 0)
      throw std::invalid_argument("AngleQuadrature: Q must be even and >= 4");
    nodes_.reserve(q);
    for (int j = 0; j < q; ++j) nodes_.push_back(2.0 * M_PI * j / q);
    weight_ = 2.0 * M_PI / q;
  }

  int size() const { return q_; }
  double angle(int j) const { return nodes_[j]; }
  double weight() const { return weight_; }
  static Vector direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

  // Sum_j w_j f(theta_j).
  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (double th : nodes_) acc += f(th);
    return weight_ * acc;
  }

 private:
  int q_;
  double weight_;
  std::vector<double> nodes_;
};

// Symmetric positive definite 2x2 symbol acting on covector components.
using SymbolMatrix = Matrix2;

// sigma^F at a point, given the scaled form tb = t*beta_x in an orthonormal
// frame of the base metric (the coordinate frame on the flat torus):
//
//   sigma_ij = (n / vol(S^1)) Sum_j w_j v_i v_j / (1 - (tb . v)^2),  n = 2,
//
// over the full circle; by evenness of the integrand under v -> -v this
// equals twice the half-fiber integral over H^+ = { v | beta(v) >= 0 }.
SymbolMatrix symbol_from_form(const Covector& tb, const AngleQuadrature& q);

inline SymbolMatrix symbol_at(const RandersMetric& m, const Point& x,
                              const AngleQuadrature& q) {
  return symbol_from_form(m.scaled_form(x), q);
}

// Sum_j w_j beta_x(v_j): vanishes for every even quadrature by the flip
// symmetry of the angle measure.
double fiber_average(const RandersMetric& m, const Point& x, const AngleQuadrature& q);

// Area of the dual unit ball divided by pi: the density of the
// Holmes-Thompson volume against the base Riemannian volume. Identically 1
// for Randers metrics (the dual ball is a translated unit disk).
double holmes_thompson_density(const RandersMetric& m, const Point& x,
                               const AngleQuadrature& q);

// sigma^F sampled on the N x N periodic grid with nodes (i/N, j/N),
// row-major with x fastest: node index = j*N + i.
class SymbolField {
 public:
  SymbolField(int n, std::vector<SymbolMatrix> values)
      : n_(n), values_(std::move(values)) {}

  int grid_n() const { return n_; }
  int size() const { return static_cast<int>(values_.size()); }
  const SymbolMatrix& at(int ix, int iy) const { return values_[iy * n_ + ix]; }
  const std::vector<SymbolMatrix>& values() const { return values_; }
  Point node(int ix, int iy) const {
    return {static_cast<double>(ix) / n_, static_cast<double>(iy) / n_};
  }

 private:
  int n_;
  std::vector<SymbolMatrix> values_;
};

// One symbol matrix per node; deterministic for fixed inputs. Throws
// QuadratureError with the node coordinates attached if a denominator
// degenerates (unreachable for admissible metrics).
SymbolField build_symbol_field(const RandersMetric& m, int grid_n,
                               const AngleQuadrature& q);

// Plain-text export, one row per node in row-major node order:
// x,y,s11,s12,s22
void export_symbol_csv(std::ostream& os, const SymbolField& field);

}  // namespace randers
