#include "itdsim/momentum.hpp"

#include <cmath>

namespace itdsim {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix sigma_z() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

}  // namespace

NumericMomentum momentum_numeric(const std::function<Matrix(double)>& u_of_g,
                                 double g, double step) {
  if (!(step > 0.0) || !std::isfinite(g))
    throw SimError(ErrorCode::BadParams, "need finite g and step > 0");
  const Matrix u = u_of_g(g);
  const Matrix du = (u_of_g(g + step) - u_of_g(g - step)) / (2.0 * step);
  const Matrix raw = kI * (u.adjoint() * du);
  const double residual = 0.5 * max_norm(raw - raw.adjoint());
  if (residual > kMomentumResidualMax)
    throw SimError(ErrorCode::StepTooSmall,
                   "finite-difference momentum dominated by round-off");
  return NumericMomentum{HermitianOperator(0.5 * (raw + raw.adjoint())),
                         residual};
}

HermitianOperator momentum_standard(const HermitianOperator& v_s,
                                    const HermitianOperator& h_s, double t_s,
                                    int quad_points) {
  if (quad_points < 2)
    throw SimError(ErrorCode::BadParams, "need at least 2 quadrature points");
  if (v_s.dim() != h_s.dim())
    throw SimError(ErrorCode::DimensionMismatch,
                   "V and H must act on the same space");
  const Eigen::Index d = v_s.dim();
  if (t_s == 0.0) return HermitianOperator(Matrix::Zero(d, d));

  // Simpson needs an even interval count.
  int intervals = quad_points - 1;
  if (intervals % 2 != 0) ++intervals;
  const double h = t_s / intervals;

  const Spectrum spec = spectral_decompose(h_s);
  const auto u_at = [&](double t) -> Matrix {
    const Vector phases =
        (Complex(0.0, -t) * spec.eigenvalues.cast<Complex>()).array().exp();
    return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
  };
  const auto integrand = [&](double t) -> Matrix {
    const Matrix u = u_at(t);
    return u.adjoint() * v_s.mat() * u;
  };

  Matrix acc = integrand(0.0) + integrand(t_s);
  for (int k = 1; k < intervals; ++k)
    acc += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * h);
  Matrix result = (h / 3.0) * acc;
  return HermitianOperator(0.5 * (result + result.adjoint()));
}

HermitianOperator momentum_sequential_conjugation(const HermitianOperator& k_s,
                                                  const UnitaryOperator& u_s,
                                                  int n) {
  if (n < 1) throw SimError(ErrorCode::BadParams, "need n ≥ 1");
  if (k_s.dim() != u_s.dim())
    throw SimError(ErrorCode::DimensionMismatch,
                   "K and U must act on the same space");
  Matrix acc = k_s.mat();
  Matrix power = Matrix::Identity(k_s.dim(), k_s.dim());
  for (int j = 1; j < n; ++j) {
    power = u_s.mat() * power;
    acc += power.adjoint() * k_s.mat() * power;
  }
  return HermitianOperator(0.5 * (acc + acc.adjoint()));
}

HermitianOperator momentum_itd_analytic(const HermitianOperator& k_s,
                                        double t_c, double t_s) {
  const Eigen::Index d = k_s.dim();
  return HermitianOperator(
      tensor(k_s.mat(), Matrix::Identity(2, 2)) -
      t_c * t_s * tensor(Matrix::Identity(d, d), sigma_z()));
}

HermitianOperator momentum_itd_sequential(const HermitianOperator& k_s_n,
                                          int n, double t_c, double t_s) {
  if (n < 1) throw SimError(ErrorCode::BadParams, "need n ≥ 1");
  const Eigen::Index d = k_s_n.dim();
  const double offset = 0.5 * (double(n) * n + n) * t_c * t_s;
  return HermitianOperator(
      tensor(k_s_n.mat(), Matrix::Identity(2, 2)) -
      offset * tensor(Matrix::Identity(d, d), sigma_z()));
}

double avg_uncertainty(const StateEnsemble& ens, const HermitianOperator& k) {
  if (ens.dim() != k.dim())
    throw SimError(ErrorCode::DimensionMismatch,
                   "ensemble and operator dimensions differ");
  double total = 0.0;
  for (Eigen::Index i = 0; i < ens.size(); ++i) {
    const Vector psi = ens.vectors().col(i);
    const Vector k_psi = k.mat() * psi;
    const double mean = std::real(psi.dot(k_psi));
    const double second = std::real(k_psi.dot(k_psi));
    total += ens.weights()(i) * std::max(second - mean * mean, 0.0);
  }
  return std::sqrt(total);
}

double precision_bound(BoundVariant variant, const BoundParams& p) {
  if (!(p.nu >= 1.0))
    throw SimError(ErrorCode::BadParams, "need nu ≥ 1");
  if (p.dv_max < 0.0)
    throw SimError(ErrorCode::BadParams, "need dv_max ≥ 0");
  const bool uses_t =
      variant == BoundVariant::StandardT || variant == BoundVariant::ItdT;
  if (uses_t && !(p.t > 0.0))
    throw SimError(ErrorCode::BadParams, "need T > 0");
  if (!uses_t && p.n < 1)
    throw SimError(ErrorCode::BadParams, "need N ≥ 1");

  const double sqrt_nu = std::sqrt(p.nu);
  const double dv = p.dv_max;
  const double t = p.t;
  const double n = p.n;
  switch (variant) {
    case BoundVariant::StandardT:
      return 1.0 / (2.0 * sqrt_nu * dv * t);
    case BoundVariant::StandardN:
      return 1.0 / (2.0 * sqrt_nu * dv * n);
    case BoundVariant::ItdT:
      return 1.0 / (2.0 * sqrt_nu * std::sqrt(dv * dv * t * t + t * t * t * t));
    case BoundVariant::ItdN: {
      const double quad = n * n + n;
      return 1.0 / (sqrt_nu * std::sqrt(4.0 * dv * dv * n * n + quad * quad));
    }
  }
  throw SimError(ErrorCode::BadParams, "unknown bound variant");
}

}  // namespace itdsim
