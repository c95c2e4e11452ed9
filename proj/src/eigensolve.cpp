#include "randers/eigensolve.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace randers {

namespace {

// Knuth MMIX linear-congruential stream; doubles in [-0.5, 0.5).
class LcgStream {
 public:
  explicit LcgStream(uint64_t seed) : state_(seed) {}
  double next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state_ >> 11) / 9007199254740992.0 - 0.5;
  }

 private:
  uint64_t state_;
};

Eigen::MatrixXd seeded_block(int rows, int cols, uint64_t seed) {
  LcgStream lcg(seed);
  Eigen::MatrixXd v(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) v(i, j) = lcg.next();
  return v;
}

// M-orthonormalize the columns of y in place (Cholesky of the Gram matrix,
// eigendecomposition fallback when the block is near rank-deficient).
void m_orthonormalize(Eigen::MatrixXd& y, const SparseSymmetric& m) {
  Eigen::MatrixXd my = m * y;
  Eigen::MatrixXd gram = y.transpose() * my;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) {
    const Eigen::MatrixXd r = llt.matrixU();
    y = r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(y);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double floor = std::max(es.eigenvalues().maxCoeff(), 1.0) * 1e-14;
  Eigen::VectorXd inv_sqrt(gram.rows());
  for (int i = 0; i < gram.rows(); ++i)
    inv_sqrt[i] = 1.0 / std::sqrt(std::max(es.eigenvalues()[i], floor));
  y = y * es.eigenvectors() * inv_sqrt.asDiagonal();
}

void sign_normalize(Eigen::MatrixXd& v) {
  for (int j = 0; j < v.cols(); ++j) {
    const double thresh = 1e-12 * v.col(j).cwiseAbs().maxCoeff();
    for (int i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > thresh) {
        if (v(i, j) < 0.0) v.col(j) = -v.col(j);
        break;
      }
    }
  }
}

}  // namespace

SpectrumResult smallest_eigenpairs(const OperatorPair& pair, int k,
                                   const EigenOptions& opts) {
  const auto& K = pair.stiffness;
  const auto& M = pair.mass;
  const int dim = static_cast<int>(K.rows());
  const int nev = k + 1;
  if (k < 1) throw std::invalid_argument("smallest_eigenpairs: k must be >= 1");
  if (nev + 1 > dim) throw std::invalid_argument("smallest_eigenpairs: k + 1 exceeds dimension");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("smallest_eigenpairs: tol must be positive");

  Eigen::SimplicialLLT<SparseSymmetric> mass_chol(M);
  if (mass_chol.info() != Eigen::Success)
    throw SolverError("smallest_eigenpairs: mass matrix is not positive definite");

  // Shift keeps K + shift*M positive definite across the constant kernel;
  // scaled to the mean generalized eigenvalue so the inverse iteration
  // contracts uniformly.
  const double trace_ratio = K.diagonal().sum() / M.diagonal().sum();
  const double shift = std::max(1e-3 * trace_ratio, 1e-8);
  SparseSymmetric shifted = K + SparseSymmetric(shift * M);
  Eigen::SimplicialLDLT<SparseSymmetric> solver(shifted);
  if (solver.info() != Eigen::Success)
    throw SolverError("smallest_eigenpairs: factorization of K + shift*M failed");

  const int extra = opts.extra_block > 0 ? opts.extra_block : std::max(4, nev);
  const int block = std::min(dim, nev + extra);

  const double knorm = K.diagonal().cwiseAbs().maxCoeff();

  Eigen::MatrixXd v = seeded_block(dim, block, opts.seed);
  Eigen::VectorXd theta(block);
  Eigen::VectorXd best(nev);
  best.setConstant(std::numeric_limits<double>::infinity());

  auto residual_of = [&](const Eigen::VectorXd& x, double lambda) {
    const Eigen::VectorXd kx = K * x;
    const Eigen::VectorXd r = kx - lambda * (M * x);
    const double scale = knorm * x.norm();
    const double denom = std::max(kx.norm(), scale * 1e-10);
    // A numerically exact kernel vector has |Kx| at rounding level; measure
    // it against the operator scale instead of the vanishing |Kx|.
    if (kx.norm() < scale * 1e-10) return r.norm() / std::max(scale, 1e-300);
    return r.norm() / denom;
  };

  int it = 0;
  for (it = 1; it <= opts.max_iterations; ++it) {
    Eigen::MatrixXd y = solver.solve(M * v);
    m_orthonormalize(y, M);
    Eigen::MatrixXd h = y.transpose() * (K * y).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (h + h.transpose()));
    theta = ritz.eigenvalues();
    v = y * ritz.eigenvectors();

    bool done = true;
    for (int i = 0; i < nev; ++i) {
      const double r = residual_of(v.col(i), theta[i]);
      best[i] = r;
      if (r > opts.tol) done = false;
    }
    if (done) break;
  }
  if (it > opts.max_iterations) {
    std::vector<double> res(best.data(), best.data() + nev);
    throw SolverError("smallest_eigenpairs: no convergence after " +
                          std::to_string(opts.max_iterations) + " iterations",
                      res);
  }

  SpectrumResult out;
  out.eigenvalues = theta.head(nev);
  out.eigenvectors = v.leftCols(nev);
  out.residuals = best;
  out.iterations = it;
  sign_normalize(out.eigenvectors);

  // Cluster by relative 1e-6 gap; order inside a cluster by lexicographic
  // comparison of the sign-normalized vectors.
  out.cluster.assign(nev, 0);
  int cid = 0;
  for (int i = 1; i < nev; ++i) {
    const double scale = std::max({std::abs(out.eigenvalues[i]),
                                   std::abs(out.eigenvalues[i - 1]), 1.0});
    if (out.eigenvalues[i] - out.eigenvalues[i - 1] > 1e-6 * scale) ++cid;
    out.cluster[i] = cid;
  }
  for (int lo = 0; lo < nev;) {
    int hi = lo + 1;
    while (hi < nev && out.cluster[hi] == out.cluster[lo]) ++hi;
    for (int a = lo; a < hi; ++a) {
      for (int b = a + 1; b < hi; ++b) {
        const auto& va = out.eigenvectors.col(a);
        const auto& vb = out.eigenvectors.col(b);
        for (int r = 0; r < dim; ++r) {
          if (va[r] == vb[r]) continue;
          if (vb[r] < va[r]) {
            out.eigenvectors.col(a).swap(out.eigenvectors.col(b));
            std::swap(out.eigenvalues[a], out.eigenvalues[b]);
            std::swap(out.residuals[a], out.residuals[b]);
          }
          break;
        }
      }
    }
    lo = hi;
  }
  return out;
}

double rayleigh_quotient(const OperatorPair& pair, const Eigen::VectorXd& f) {
  const double mnorm = f.dot(pair.mass * f);
  if (!(mnorm > 0.0))
    throw std::invalid_argument("rayleigh_quotient: input has zero M-norm");
  return f.dot(pair.stiffness * f) / mnorm;
}

double subspace_max_rayleigh(const OperatorPair& pair, const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd kr = basis.transpose() * (pair.stiffness * basis).eval();
  Eigen::MatrixXd mr = basis.transpose() * (pair.mass * basis).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (kr + kr.transpose()), 0.5 * (mr + mr.transpose()));
  return es.eigenvalues().maxCoeff();
}

}  // namespace randers
