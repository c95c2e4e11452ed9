#include "randers/assembly.hpp"

#include <array>
#include <cstdio>
#include <ostream>
#include <vector>

namespace randers {

namespace {

// Reference bilinear shape functions on [0,1]^2, corner order
// (0,0), (1,0), (1,1), (0,1).
void shape_gradients(double xi, double eta, std::array<Eigen::Vector2d, 4>& grad) {
  grad[0] = {-(1.0 - eta), -(1.0 - xi)};
  grad[1] = {1.0 - eta, -xi};
  grad[2] = {eta, xi};
  grad[3] = {-eta, 1.0 - xi};
}

void shape_values(double xi, double eta, std::array<double, 4>& val) {
  val[0] = (1.0 - xi) * (1.0 - eta);
  val[1] = xi * (1.0 - eta);
  val[2] = xi * eta;
  val[3] = (1.0 - xi) * eta;
}

}  // namespace

OperatorPair assemble(const SymbolField& symbols, const PeriodicGrid& grid,
                      bool lumped_mass) {
  const int n = grid.n();
  if (symbols.grid_n() != n)
    throw AssemblyError("assemble: symbol field and grid dimensions differ");
  const double h = grid.spacing();

  // 2x2 Gauss points on [0,1], weight 1/2 each.
  const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};

  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(static_cast<size_t>(n) * n * 16);
  mt.reserve(static_cast<size_t>(n) * n * 16);

  std::array<Eigen::Vector2d, 4> grad;
  std::array<double, 4> val;

  for (int cy = 0; cy < n; ++cy) {
    for (int cx = 0; cx < n; ++cx) {
      const int nodes[4] = {grid.index(cx, cy), grid.index(cx + 1, cy),
                            grid.index(cx + 1, cy + 1), grid.index(cx, cy + 1)};

      SymbolMatrix sigma = 0.25 * (symbols.at(cx, cy) +
                                   symbols.at(grid.wrap(cx + 1), cy) +
                                   symbols.at(grid.wrap(cx + 1), grid.wrap(cy + 1)) +
                                   symbols.at(cx, grid.wrap(cy + 1)));
      if (sigma.determinant() <= 0.0 || sigma(0, 0) <= 0.0)
        throw AssemblyError("assemble: cell symbol is not positive definite at cell (" +
                            std::to_string(cx) + ", " + std::to_string(cy) + ")");

      Eigen::Matrix4d klocal = Eigen::Matrix4d::Zero();
      Eigen::Matrix4d mlocal = Eigen::Matrix4d::Zero();
      for (double gxi : gp) {
        for (double geta : gp) {
          shape_gradients(gxi, geta, grad);
          shape_values(gxi, geta, val);
          const double wq = 0.25;  // (1/2)*(1/2) Gauss weight on [0,1]^2
          for (int a = 0; a < 4; ++a) {
            // Physical gradient = reference gradient / h; cell area h^2.
            const Eigen::Vector2d sga = sigma * grad[a];
            for (int b = 0; b < 4; ++b) {
              klocal(a, b) += wq * grad[b].dot(sga);
              mlocal(a, b) += wq * h * h * val[a] * val[b];
            }
          }
        }
      }

      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          kt.emplace_back(nodes[a], nodes[b], klocal(a, b));
          if (lumped_mass)
            mt.emplace_back(nodes[a], nodes[a], mlocal(a, b));
          else
            mt.emplace_back(nodes[a], nodes[b], mlocal(a, b));
        }
      }
    }
  }

  OperatorPair pair;
  pair.grid_n = n;
  pair.stiffness.resize(grid.size(), grid.size());
  pair.mass.resize(grid.size(), grid.size());
  pair.stiffness.setFromTriplets(kt.begin(), kt.end());
  pair.mass.setFromTriplets(mt.begin(), mt.end());
  pair.stiffness.makeCompressed();
  pair.mass.makeCompressed();
  return pair;
}

double energy(const OperatorPair& pair, const Eigen::VectorXd& f) {
  if (f.size() != pair.stiffness.rows())
    throw AssemblyError("energy: vector dimension does not match the grid");
  return f.dot(pair.stiffness * f);
}

void export_coordinate(std::ostream& os, const SparseSymmetric& m) {
  char buf[96];
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseSymmetric::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", static_cast<int>(it.row()),
                    static_cast<int>(it.col()), it.value());
      os << buf;
    }
  }
}

}  // namespace randers
