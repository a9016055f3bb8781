#include "support.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace weylwalk::oracle {

Matrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const Complex d = rr(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

Matrix random_projector(std::mt19937_64& rng) {
  const Matrix u = haar_unitary(2, rng);
  return u.col(0) * u.col(0).adjoint();
}

Matrix spin_half_rotation(double theta, const RealVector& axis) {
  Matrix ns = Matrix::Zero(2, 2);
  ns(0, 0) = axis(2);
  ns(1, 1) = -axis(2);
  ns(0, 1) = Complex(axis(0), -axis(1));
  ns(1, 0) = Complex(axis(0), axis(1));
  return std::cos(theta) * Matrix::Identity(2, 2) - kI * std::sin(theta) * ns;
}

namespace {

CoinMap random_conditional_shift(std::mt19937_64& rng, std::size_t axis, bool two_sided) {
  const Matrix p = random_projector(rng);
  const Matrix q = Matrix::Identity(2, 2) - p;
  CoinMap coins;
  coins.emplace(Displacement::unit(3, axis, +1), p);
  if (two_sided) {
    coins.emplace(Displacement::unit(3, axis, -1), q);
  } else {
    coins.emplace(Displacement::zero(3), q);
  }
  return coins;
}

CoinMap single(const Matrix& v, std::size_t dim) {
  CoinMap c;
  c.emplace(Displacement::zero(dim), v);
  return c;
}

}  // namespace

WalkSpec random_massless_walk_3d(std::mt19937_64& rng, LatticeScale scale) {
  std::bernoulli_distribution coin_flip(0.5);
  const Matrix v0 = haar_unitary(2, rng);
  const Matrix v1 = haar_unitary(2, rng);
  const Matrix v2 = haar_unitary(2, rng);
  const Matrix v3 = (v0 * v1 * v2).adjoint();
  CoinMap c = single(v0, 3);
  c = compose(c, random_conditional_shift(rng, 0, coin_flip(rng)));
  c = compose(c, single(v1, 3));
  c = compose(c, random_conditional_shift(rng, 1, coin_flip(rng)));
  c = compose(c, single(v2, 3));
  c = compose(c, random_conditional_shift(rng, 2, coin_flip(rng)));
  c = compose(c, single(v3, 3));
  return WalkSpec(3, 2, std::move(c), scale);
}

WalkSpec random_unitary_walk_1d(std::mt19937_64& rng, LatticeScale scale) {
  std::bernoulli_distribution coin_flip(0.5);
  const Matrix p = random_projector(rng);
  const Matrix q = Matrix::Identity(2, 2) - p;
  CoinMap shift;
  shift.emplace(Displacement{1}, p);
  shift.emplace(coin_flip(rng) ? Displacement{-1} : Displacement{0}, q);
  CoinMap c = compose(compose(single(haar_unitary(2, rng), 1), shift), single(haar_unitary(2, rng), 1));
  return WalkSpec(1, 2, std::move(c), scale);
}

WalkSpec random_walk_1d(std::mt19937_64& rng, int k, LatticeScale scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  CoinMap c;
  for (std::int64_t q = -1; q <= 1; ++q) {
    Matrix m(k, k);
    for (int r = 0; r < k; ++r)
      for (int cc = 0; cc < k; ++cc) m(r, cc) = Complex(g(rng), g(rng)) * 0.4;
    c.emplace(Displacement{q}, m);
  }
  return WalkSpec(1, k, std::move(c), scale);
}

Matrix ring_matrix(const WalkSpec& spec, int sites) {
  const int k = spec.internal_dim();
  Matrix u = Matrix::Zero(sites * k, sites * k);
  for (const auto& [q, aq] : spec.coins()) {
    for (int n = 0; n < sites; ++n) {
      const int target = static_cast<int>(((n + q[0]) % sites + sites) % sites);
      u.block(target * k, n * k, k, k) += aq;
    }
  }
  return u;
}

Matrix ring_fourier_block(const Matrix& ring, int sites, int k, int j) {
  // Columns |p_j> (x) e_alpha with |p> = sum_n exp(i p n a) |n> / sqrt(L).
  Matrix f = Matrix::Zero(sites * k, k);
  for (int n = 0; n < sites; ++n) {
    const Complex phase = std::exp(kI * (2.0 * std::numbers::pi * j * n / sites)) / std::sqrt(double(sites));
    for (int alpha = 0; alpha < k; ++alpha) f(n * k + alpha, alpha) = phase;
  }
  return f.adjoint() * ring * f;
}

double power_iteration_norm(const Matrix& m, int iterations) {
  const Matrix g = m.adjoint() * m;
  ComplexVector v = ComplexVector::Ones(m.cols());
  for (int i = 0; i < m.cols(); ++i) v(i) += Complex(0.1 * i, 0.05 * i * i);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    ComplexVector w = g * v;
    const double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    lambda = nrm;
    v = w / nrm;
  }
  return std::sqrt(lambda);
}

Matrix direct_symbol(const WalkSpec& spec, const RealVector& p) {
  const int k = spec.internal_dim();
  Matrix u = Matrix::Zero(k, k);
  for (const auto& [q, aq] : spec.coins()) {
    double phase = 0.0;
    for (int i = 0; i < spec.dim(); ++i) phase += spec.scale().a * static_cast<double>(q[static_cast<std::size_t>(i)]) * p(i);
    u += aq * Complex(std::cos(phase), -std::sin(phase));
  }
  return u;
}

Matrix finite_difference_b(const WalkSpec& spec, int axis, double eps) {
  const int k = spec.internal_dim();
  Matrix w = Matrix::Zero(k, k);
  for (const auto& [q, aq] : spec.coins()) w += aq;
  RealVector e = RealVector::Zero(spec.dim());
  e(axis) = eps;
  const Matrix diff = w.adjoint() * (direct_symbol(spec, e) - direct_symbol(spec, -e));
  return (kI / spec.scale().dt) * diff / (2.0 * eps);
}

RealMatrix rodrigues(const RealVector& axis, double theta) {
  RealMatrix k = RealMatrix::Zero(3, 3);
  k(0, 1) = -axis(2);
  k(0, 2) = axis(1);
  k(1, 0) = axis(2);
  k(1, 2) = -axis(0);
  k(2, 0) = -axis(1);
  k(2, 1) = axis(0);
  return RealMatrix::Identity(3, 3) + std::sin(theta) * k + (1.0 - std::cos(theta)) * k * k;
}

RealVector random_vector(std::mt19937_64& rng, int dim, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = u(rng);
  return v;
}

RealVector random_unit_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = g(rng);
  return v.normalized();
}

}  // namespace weylwalk::oracle
