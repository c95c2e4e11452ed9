#pragma once

// Randers metrics F = F_bar + t*beta on the unit-square torus (and the
// Poincare disk for the curved checks): base metrics, 1-form fields,
// Finsler norms and their duals.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace randers {

using Point = Eigen::Vector2d;
using Vector = Eigen::Vector2d;    // tangent components
using Covector = Eigen::Vector2d;  // 1-form components
using Matrix2 = Eigen::Matrix2d;

struct AdmissibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Margin below which t*b_max is rejected; keeps the quadrature
// denominators 1 - t^2 beta(v)^2 away from zero.
inline constexpr double kAdmissibilityMargin = 1e-9;

inline double wrap_unit(double u) {
  double w = u - std::floor(u);
  return w >= 1.0 ? 0.0 : w;
}

inline Point wrap_torus(const Point& x) { return {wrap_unit(x[0]), wrap_unit(x[1])}; }

// ---------------------------------------------------------------------------
// Base (reversible) metric: flat torus or Poincare disk.
// ---------------------------------------------------------------------------

class BaseMetric {
 public:
  enum class Kind { FlatTorus, HyperbolicDisk };

  static BaseMetric flat_torus() { return BaseMetric(Kind::FlatTorus); }
  static BaseMetric hyperbolic_disk() { return BaseMetric(Kind::HyperbolicDisk); }

  Kind kind() const { return kind_; }
  bool flat() const { return kind_ == Kind::FlatTorus; }

  // Conformal factor lambda(x): g = lambda^2 (dx^2 + dy^2).
  double conformal_factor(const Point& x) const {
    if (kind_ == Kind::FlatTorus) return 1.0;
    const double r2 = x.squaredNorm();
    if (r2 >= 1.0) throw std::domain_error("BaseMetric: point outside the Poincare disk");
    return 2.0 / (1.0 - r2);
  }

  Matrix2 tensor(const Point& x) const {
    const double l = conformal_factor(x);
    return l * l * Matrix2::Identity();
  }

  Matrix2 dual_tensor(const Point& x) const {
    const double l = conformal_factor(x);
    return Matrix2::Identity() / (l * l);
  }

  double norm(const Point& x, const Vector& v) const {
    return conformal_factor(x) * v.norm();
  }

 private:
  explicit BaseMetric(Kind k) : kind_(k) {}
  Kind kind_;
};

// ---------------------------------------------------------------------------
// Smoothed tent profile f_eps on the circle R/Z.
//
// f_eps has slope +1 on [eps, 1/2-eps], slope -1 on [1/2+eps, 1-eps]; inside
// the two eps-windows the derivative follows the odd ramp sin(pi w / 2),
// w in [-1,1], which matches slopes C^1 at the window edges, so f_eps is C^2.
// Values are fixed by f_eps(eps) = eps, giving sup|f_eps - f_0| = (1-2/pi) eps.
// ---------------------------------------------------------------------------

enum class RampProfile { SinePi2 };

class SmoothedTent {
 public:
  explicit SmoothedTent(double eps, RampProfile profile = RampProfile::SinePi2)
      : eps_(eps), profile_(profile) {
    if (!(eps > 0.0 && eps < 0.25))
      throw std::invalid_argument("SmoothedTent: eps must lie in (0, 1/4)");
  }

  double eps() const { return eps_; }
  RampProfile profile() const { return profile_; }

  double derivative(double u) const {
    u = wrap_unit(u);
    if (u < eps_) return ramp(u / eps_);
    if (u <= 0.5 - eps_) return 1.0;
    if (u < 0.5 + eps_) return -ramp((u - 0.5) / eps_);
    if (u <= 1.0 - eps_) return -1.0;
    return ramp((u - 1.0) / eps_);
  }

  double value(double u) const {
    u = wrap_unit(u);
    const double c = 2.0 * eps_ / M_PI;
    if (u < eps_) return eps_ - c * ramp_cos(u / eps_);
    if (u <= 0.5 - eps_) return u;
    if (u < 0.5 + eps_) return 0.5 - eps_ + c * ramp_cos((u - 0.5) / eps_);
    if (u <= 1.0 - eps_) return 1.0 - u;
    return eps_ - c * ramp_cos((u - 1.0) / eps_);
  }

  // d2f/du2; continuous across window edges (the ramp has zero slope there).
  double second_derivative(double u) const {
    u = wrap_unit(u);
    const double s = M_PI / (2.0 * eps_);
    if (u < eps_) return s * ramp_cos(u / eps_);
    if (u <= 0.5 - eps_) return 0.0;
    if (u < 0.5 + eps_) return -s * ramp_cos((u - 0.5) / eps_);
    if (u <= 1.0 - eps_) return 0.0;
    return s * ramp_cos((u - 1.0) / eps_);
  }

  std::pair<double, double> eval(double u) const { return {value(u), derivative(u)}; }

  // The piecewise-linear tent being approximated.
  static double tent(double u) {
    u = wrap_unit(u);
    return u <= 0.5 ? u : 1.0 - u;
  }

 private:
  static double ramp(double w) { return std::sin(0.5 * M_PI * w); }
  static double ramp_cos(double w) { return std::cos(0.5 * M_PI * w); }

  double eps_;
  RampProfile profile_;
};

// ---------------------------------------------------------------------------
// 1-form fields beta on the torus.
// ---------------------------------------------------------------------------

class OneFormField {
 public:
  using Evaluator = std::function<Covector(const Point&)>;
  using Potential = std::function<double(const Point&)>;
  using Jacobian = std::function<Matrix2(const Point&)>;  // d beta_j / d x_i

  // Generic field; b_max must dominate the Euclidean-dual norm of beta.
  OneFormField(Evaluator eval, double b_max, bool exact,
               Potential potential = nullptr, Jacobian jacobian = nullptr)
      : eval_(std::move(eval)),
        potential_(std::move(potential)),
        jacobian_(std::move(jacobian)),
        b_max_(b_max),
        exact_(exact) {
    if (exact_ && !potential_)
      throw std::invalid_argument("OneFormField: exact form requires a potential");
  }

  static OneFormField zero() {
    return OneFormField([](const Point&) { return Covector::Zero(); }, 0.0, true,
                        [](const Point&) { return 0.0; },
                        [](const Point&) { return Matrix2::Zero(); });
  }

  // Constant covector field; closed, exact only when zero.
  static OneFormField constant(const Covector& c) {
    return OneFormField([c](const Point&) { return c; }, c.norm(), false, nullptr,
                        [](const Point&) { return Matrix2::Zero(); });
  }

  // beta = cos(rho) dx + sin(rho) dy. Closed, not exact; the dual vector
  // field points in the rho direction, whose orbits are dense when the
  // slope is irrational (caller's responsibility).
  static OneFormField direction_form(double rho) {
    return constant(Covector(std::cos(rho), std::sin(rho)));
  }

  // beta_eps = dh_eps with h_eps(x,y) = cos(rho) f_eps(x) + sin(rho) f_eps(y).
  // |beta_eps| = 1 exactly off the four eps-annuli, so b_max = 1.
  static OneFormField h_eps(double eps, double rho) {
    SmoothedTent f(eps);
    const double cr = std::cos(rho), sr = std::sin(rho);
    Evaluator ev = [f, cr, sr](const Point& x) {
      return Covector(cr * f.derivative(x[0]), sr * f.derivative(x[1]));
    };
    Potential pot = [f, cr, sr](const Point& x) {
      return cr * f.value(x[0]) + sr * f.value(x[1]);
    };
    Jacobian jac = [f, cr, sr](const Point& x) {
      Matrix2 j = Matrix2::Zero();
      j(0, 0) = cr * f.second_derivative(x[0]);
      j(1, 1) = sr * f.second_derivative(x[1]);
      return j;
    };
    return OneFormField(std::move(ev), 1.0, true, std::move(pot), std::move(jac));
  }

  Covector at(const Point& x) const { return eval_(wrap_torus(x)); }
  bool exact() const { return exact_; }
  double b_max() const { return b_max_; }

  bool has_potential() const { return static_cast<bool>(potential_); }
  double potential(const Point& x) const {
    if (!potential_) throw std::logic_error("OneFormField: no potential available");
    return potential_(wrap_torus(x));
  }

  bool has_jacobian() const { return static_cast<bool>(jacobian_); }
  // d(beta) = curl dx ^ dy with curl = d b2/dx - d b1/dy.
  double curl(const Point& x) const {
    if (!jacobian_) throw std::logic_error("OneFormField: no jacobian available");
    const Matrix2 j = jacobian_(wrap_torus(x));
    return j(0, 1) - j(1, 0);
  }

 private:
  Evaluator eval_;
  Potential potential_;
  Jacobian jacobian_;
  double b_max_;
  bool exact_;
};

// ---------------------------------------------------------------------------
// Randers metric F = F_bar + t*beta.
// ---------------------------------------------------------------------------

class RandersMetric {
 public:
  RandersMetric(BaseMetric base, OneFormField form, double t)
      : base_(std::move(base)), form_(std::move(form)), t_(t) {
    if (t_ < 0.0) throw AdmissibilityError("RandersMetric: t must be nonnegative");
    if (t_ * form_.b_max() >= 1.0 - kAdmissibilityMargin)
      throw AdmissibilityError("RandersMetric: t*b_max = " +
                               std::to_string(t_ * form_.b_max()) +
                               " violates t*b_max < 1 - 1e-9");
  }

  static RandersMetric flat(OneFormField form, double t) {
    return RandersMetric(BaseMetric::flat_torus(), std::move(form), t);
  }
  static RandersMetric flat_reversible() { return flat(OneFormField::zero(), 0.0); }

  const BaseMetric& base() const { return base_; }
  const OneFormField& form() const { return form_; }
  double t() const { return t_; }

  // t*beta at x, the covector actually entering F.
  Covector scaled_form(const Point& x) const { return t_ * form_.at(x); }

 private:
  BaseMetric base_;
  OneFormField form_;
  double t_;
};

// F(x, v) = sqrt(g_x(v,v)) + t*beta_x(v). Positively 1-homogeneous in v,
// zero iff v = 0.
inline double finsler_norm(const RandersMetric& m, const Point& x, const Vector& v) {
  return m.base().norm(x, v) + m.scaled_form(x).dot(v);
}

// Dual norm F*(x, l) = sup { l(v) | F(x,v) = 1 }. Closed Randers form:
// with b = |t beta|_{g*} and p = <t beta, l>_{g*},
//   F*(l) = (sqrt((1-b^2) |l|_{g*}^2 + p^2) - p) / (1 - b^2).
inline double dual_norm(const RandersMetric& m, const Point& x, const Covector& l) {
  const Matrix2 gd = m.base().dual_tensor(x);
  const Covector tb = m.scaled_form(x);
  const double b2 = tb.dot(gd * tb);
  const double p = tb.dot(gd * l);
  const double l2 = l.dot(gd * l);
  return (std::sqrt((1.0 - b2) * l2 + p * p) - p) / (1.0 - b2);
}

}  // namespace randers
