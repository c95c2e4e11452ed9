#include "randers/symbol.hpp"

#include <cstdio>
#include <ostream>

namespace randers {

namespace {
constexpr double kDenominatorFloor = 1e-12;
}

SymbolMatrix symbol_from_form(const Covector& tb, const AngleQuadrature& q) {
  // n / vol(S^1) = 2 / (2 pi); the weight 2 pi / Q folds in to give 2 / Q.
  double s11 = 0.0, s12 = 0.0, s22 = 0.0;
  for (int j = 0; j < q.size(); ++j) {
    const double th = q.angle(j);
    const double c = std::cos(th), s = std::sin(th);
    const double bv = tb[0] * c + tb[1] * s;
    const double den = 1.0 - bv * bv;
    if (den < kDenominatorFloor)
      throw QuadratureError("symbol quadrature: singular weight, 1 - (t beta(v))^2 = " +
                            std::to_string(den));
    s11 += c * c / den;
    s12 += c * s / den;
    s22 += s * s / den;
  }
  const double scale = 2.0 / q.size();
  SymbolMatrix m;
  m << scale * s11, scale * s12, scale * s12, scale * s22;
  return m;
}

double fiber_average(const RandersMetric& m, const Point& x, const AngleQuadrature& q) {
  const Covector b = m.form().at(x);
  return q.integrate([&](double th) { return b[0] * std::cos(th) + b[1] * std::sin(th); });
}

double holmes_thompson_density(const RandersMetric& m, const Point& x,
                               const AngleQuadrature& q) {
  const double acc = q.integrate([&](double th) {
    const double fs = dual_norm(m, x, AngleQuadrature::direction(th));
    return 1.0 / (fs * fs);
  });
  return acc / (2.0 * M_PI);
}

SymbolField build_symbol_field(const RandersMetric& m, int grid_n,
                               const AngleQuadrature& q) {
  if (grid_n < 8) throw std::invalid_argument("build_symbol_field: grid N must be >= 8");
  std::vector<SymbolMatrix> values;
  values.reserve(static_cast<size_t>(grid_n) * grid_n);
  for (int iy = 0; iy < grid_n; ++iy) {
    for (int ix = 0; ix < grid_n; ++ix) {
      const Point x(static_cast<double>(ix) / grid_n, static_cast<double>(iy) / grid_n);
      try {
        values.push_back(symbol_at(m, x, q));
      } catch (const QuadratureError& e) {
        throw QuadratureError(std::string(e.what()) + " at node (" +
                              std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")");
      }
    }
  }
  return SymbolField(grid_n, std::move(values));
}

void export_symbol_csv(std::ostream& os, const SymbolField& field) {
  os << "x,y,s11,s12,s22\n";
  char buf[160];
  const int n = field.grid_n();
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const Point x = field.node(ix, iy);
      const SymbolMatrix& s = field.at(ix, iy);
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", x[0], x[1],
                    s(0, 0), s(0, 1), s(1, 1));
      os << buf;
    }
  }
}

}  // namespace randers
