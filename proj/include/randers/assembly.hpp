#pragma once

// Galerkin discretization of the energy E^F(f) = int |df|_sigma^2 Omega and
// of the L^2 pairing int f^2 Omega on the periodic grid, with bilinear
// quadrilateral elements and 2x2 Gauss points per cell. Omega = Omega_bar
// for Randers metrics, so the mass matrix is the flat one.

#include "randers/symbol.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <iosfwd>

namespace randers {

using SparseSymmetric = Eigen::SparseMatrix<double>;

// N x N periodic node layout with spacing 1/N; node (i, j) at (i/N, j/N)
// maps to row j*N + i (x fastest). Neighbors wrap around.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n) : n_(n) {
    if (n < 8) throw std::invalid_argument("PeriodicGrid: N must be >= 8");
  }

  int n() const { return n_; }
  int size() const { return n_ * n_; }
  double spacing() const { return 1.0 / n_; }
  int wrap(int i) const { return ((i % n_) + n_) % n_; }
  int index(int ix, int iy) const { return wrap(iy) * n_ + wrap(ix); }
  Point node(int ix, int iy) const {
    return {static_cast<double>(wrap(ix)) / n_, static_cast<double>(wrap(iy)) / n_};
  }

  // Sample a function at the nodes, in row-major node order.
  template <class F>
  Eigen::VectorXd sample(F&& f) const {
    Eigen::VectorXd v(size());
    for (int iy = 0; iy < n_; ++iy)
      for (int ix = 0; ix < n_; ++ix) v[index(ix, iy)] = f(node(ix, iy));
    return v;
  }

 private:
  int n_;
};

// Stiffness K (energy) and mass M (volume pairing) of the generalized
// eigenproblem K v = lambda M v. K is PSD with kernel spanned by the
// constant vector; M is PD.
struct OperatorPair {
  SparseSymmetric stiffness;
  SparseSymmetric mass;
  int grid_n = 0;
};

struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-cell symbol is the arithmetic mean of the four corner node matrices,
// which preserves the PSD ordering of symbol fields in t. The reduction
// order over cells is fixed, so assembly is bit-reproducible.
// lumped_mass replaces the consistent mass by its row-sum diagonal.
OperatorPair assemble(const SymbolField& symbols, const PeriodicGrid& grid,
                      bool lumped_mass = false);

// f^T K f; zero iff f is constant.
double energy(const OperatorPair& pair, const Eigen::VectorXd& f);

// Coordinate-format text export: `row col value` per line, 0-based, in
// stored (compressed) order; deterministic for a fixed matrix.
void export_coordinate(std::ostream& os, const SparseSymmetric& m);

}  // namespace randers
