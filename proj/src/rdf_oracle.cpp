// Log-barrier Newton solver for the block rate-distortion program, used as an
// independent oracle. It never diagonalizes C_X.
//
// With C_S = C_X^{1/2} Y C_X^{1/2} the program becomes
//
//   min  -log det Y
//   s.t. Y <= I,  tr(C_X Y) <= l D,  Y symmetric,
//
// (Y > 0 is implied by the objective). Y is parametrized by its upper
// triangle; the barrier is -log det(I - Y) - log(l D - tr(C_X Y)).

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cyclordf/errors.hpp"
#include "cyclordf/rdf_solver.hpp"

namespace cyclordf {

namespace {

struct Basis {
  int a;
  int b;
  double scale;  // E = scale * (e_a e_b^T + e_b e_a^T)
};

std::vector<Basis> symmetric_basis(int l) {
  std::vector<Basis> out;
  for (int a = 0; a < l; ++a)
    for (int b = a; b < l; ++b) out.push_back({a, b, a == b ? 0.5 : 1.0});
  return out;
}

// tr(A E_k A E_m) for symmetric A.
double quad_term(const Matrix& A, const Basis& k, const Basis& m) {
  const int a = k.a, b = k.b, c = m.a, d = m.b;
  return k.scale * m.scale *
         (A(b, c) * A(d, a) + A(b, d) * A(c, a) + A(a, c) * A(d, b) + A(a, d) * A(c, b));
}

// tr(G E_k) for symmetric G.
double lin_term(const Matrix& G, const Basis& k) { return k.scale * 2.0 * G(k.a, k.b); }

class BarrierProblem {
 public:
  BarrierProblem(const Matrix& cx, double budget)
      : cx_(cx), budget_(budget), l_(static_cast<int>(cx.rows())), basis_(symmetric_basis(l_)) {}

  int dim() const { return static_cast<int>(basis_.size()); }

  Matrix unpack(const Vector& y) const {
    Matrix Y = Matrix::Zero(l_, l_);
    for (int k = 0; k < dim(); ++k) {
      const auto& e = basis_[k];
      Y(e.a, e.b) = y(k);
      Y(e.b, e.a) = y(k);
    }
    return Y;
  }

  Vector pack(const Matrix& Y) const {
    Vector y(dim());
    for (int k = 0; k < dim(); ++k) y(k) = Y(basis_[k].a, basis_[k].b);
    return y;
  }

  /// Barrier objective; +inf outside the strict interior.
  double value(const Vector& y, double t) const {
    const Matrix Y = unpack(y);
    Eigen::LLT<Matrix> ly(Y);
    const Matrix Z = Matrix::Identity(l_, l_) - Y;
    Eigen::LLT<Matrix> lz(Z);
    const double slack = budget_ - (cx_.cwiseProduct(Y)).sum();
    if (ly.info() != Eigen::Success || lz.info() != Eigen::Success || !(slack > 0.0))
      return std::numeric_limits<double>::infinity();
    return -t * logdet(ly) - logdet(lz) - std::log(slack);
  }

  /// -log det Y, the rate objective in nats times 2l.
  double objective(const Vector& y) const {
    Eigen::LLT<Matrix> ly(unpack(y));
    return -logdet(ly);
  }

  void derivatives(const Vector& y, double t, Vector& grad, Matrix& hess) const {
    const Matrix Y = unpack(y);
    const Matrix I = Matrix::Identity(l_, l_);
    const Matrix Yi = Y.llt().solve(I);
    const Matrix Zi = (I - Y).llt().solve(I);
    const double slack = budget_ - (cx_.cwiseProduct(Y)).sum();
    const Matrix G = -t * Yi + Zi + cx_ / slack;

    const int n = dim();
    grad.resize(n);
    hess.resize(n, n);
    Vector cterm(n);
    for (int k = 0; k < n; ++k) {
      grad(k) = lin_term(G, basis_[k]);
      cterm(k) = lin_term(cx_, basis_[k]);
    }
    for (int k = 0; k < n; ++k)
      for (int m = k; m < n; ++m) {
        const double h = t * quad_term(Yi, basis_[k], basis_[m]) +
                         quad_term(Zi, basis_[k], basis_[m]) +
                         cterm(k) * cterm(m) / (slack * slack);
        hess(k, m) = h;
        hess(m, k) = h;
      }
  }

 private:
  static double logdet(const Eigen::LLT<Matrix>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }

  Matrix cx_;
  double budget_;
  int l_;
  std::vector<Basis> basis_;
};

Vector newton_center(const BarrierProblem& prob, Vector y, double t) {
  Vector g;
  Matrix h;
  for (int it = 0; it < 200; ++it) {
    prob.derivatives(y, t, g, h);
    const Vector step = -h.ldlt().solve(g);
    const double decrement2 = -g.dot(step);
    if (!(decrement2 > 1e-14)) break;
    const double f0 = prob.value(y, t);
    double s = 1.0;
    while (s > 1e-14) {
      const Vector cand = y + s * step;
      const double f = prob.value(cand, t);
      if (std::isfinite(f) && f <= f0 - 0.25 * s * decrement2) break;
      s *= 0.5;
    }
    if (s <= 1e-14) break;
    y += s * step;
  }
  return y;
}

}  // namespace

double rdf_oracle_small(const CovarianceMatrix& source, double distortion, int starts,
                        std::uint64_t seed) {
  const int l = source.order();
  if (l < 1 || l > 8)
    throw Error(ErrorKind::InvalidArgument, "oracle: order must lie in [1, 8]");
  if (!(distortion > 0.0))
    throw Error(ErrorKind::NonPositiveDistortion, "distortion must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(source.values(), Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (!(top > 0.0) || !(es.eigenvalues().minCoeff() > 1e-12 * top))
    throw Error(ErrorKind::SingularCovariance, "oracle: covariance is not strictly PD");

  const Matrix& cx = source.values();
  const double budget = l * distortion;
  BarrierProblem prob(cx, budget);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.1, 0.9);

  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(1, starts); ++s) {
    // Random strictly feasible start: random orthogonal basis, spectrum in
    // (0.1, 0.9), then shrunk until the trace constraint has slack.
    Matrix g(l, l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) g(i, j) = gauss(rng);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    Vector spec(l);
    for (int i = 0; i < l; ++i) spec(i) = unif(rng);
    Matrix Y0 = q * spec.asDiagonal() * q.transpose();
    Y0 = 0.5 * (Y0 + Y0.transpose()).eval();
    const double used = cx.cwiseProduct(Y0).sum();
    if (used > 0.5 * budget) Y0 *= 0.5 * budget / used;

    Vector y = prob.pack(Y0);
    for (double t = 1.0; t < 1e13; t *= 8.0) y = newton_center(prob, y, t);
    best = std::min(best, prob.objective(y));
  }
  return std::max(0.0, best / (2.0 * l * std::log(2.0)));
}

}  // namespace cyclordf
