#include "floq/phase_space.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace floq {

namespace {

using special::laguerre;

double two_pi_pow(int n) { return std::pow(2.0 * M_PI, n); }

}  // namespace

CoordinateSpec CoordinateSpec::axis(double min, double max, int count) {
  CoordinateSpec c;
  c.is_pinned = false;
  c.min = min;
  c.max = max;
  c.count = count;
  return c;
}

CoordinateSpec CoordinateSpec::pinned(double value) {
  CoordinateSpec c;
  c.is_pinned = true;
  c.value = value;
  return c;
}

int PhaseSpaceGrid::n_free() const {
  int free_count = 0;
  for (const auto& c : coords) free_count += c.is_pinned ? 0 : 1;
  return free_count;
}

std::size_t PhaseSpaceGrid::n_points() const {
  std::size_t points = 1;
  for (const auto& c : coords) {
    if (!c.is_pinned) points *= static_cast<std::size_t>(c.count);
  }
  return points;
}

double PhaseSpaceGrid::cell_volume() const {
  double vol = 1.0;
  for (const auto& c : coords) {
    if (!c.is_pinned) vol *= c.step();
  }
  return vol;
}

Vector PhaseSpaceGrid::point(std::size_t flat_index) const {
  Vector x(coords.size());
  // Row-major over the free axes in coordinate order: peel from the last.
  std::size_t rest = flat_index;
  for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
    const auto& c = coords[i];
    if (c.is_pinned) {
      x(i) = c.value;
      continue;
    }
    const std::size_t idx = rest % c.count;
    rest /= c.count;
    x(i) = c.min + static_cast<double>(idx) * c.step();
  }
  return x;
}

void PhaseSpaceGrid::validate(int n_modes) const {
  if (static_cast<int>(coords.size()) != 2 * n_modes) {
    throw GridError("phase-space grid must carry 2N coordinate specs");
  }
  for (const auto& c : coords) {
    if (c.is_pinned) {
      if (!std::isfinite(c.value)) throw GridError("non-finite pinned coordinate");
      continue;
    }
    if (c.count < 2) throw GridError("free axes need count >= 2");
    if (!(c.max > c.min)) throw GridError("free axes need max > min");
  }
  if (n_points() > kMaxGridPoints) {
    std::ostringstream msg;
    msg << "grid too large: " << n_points() << " points (limit " << kMaxGridPoints
        << ")";
    throw GridError(msg.str());
  }
}

CVector classical_mode(const FloquetDecomposition& decomp, double t,
                       const Vector& q, const Vector& p) {
  const int n = decomp.n_modes();
  if (q.size() != n || p.size() != n) {
    throw ValidationError("classical_mode: q and p must be N-vectors");
  }
  const IomCoefficients coeff = integrals_of_motion_coefficients(decomp, t);
  Vector x(2 * n);
  x.head(n) = q;
  x.tail(n) = p;
  return coeff.annihilation * x.cast<Complex>();
}

namespace {

// Hoisted per-(decomposition, t, spec) Wigner data; pure per point.
class WignerEvaluator {
 public:
  WignerEvaluator(const FloquetDecomposition& decomp, double t,
                  const StateSpec& spec)
      : n_(decomp.n_modes()), spec_(spec) {
    validate(spec);
    if (spec.n_modes() != n_) {
      throw ValidationError("wigner: spec/decomposition mode mismatch");
    }
    if (!decomp.stable) {
      throw UnstableError("wigner requires a stable decomposition",
                          decomp.stability_margin);
    }
    a_rows_ = integrals_of_motion_coefficients(decomp, t).annihilation;
    prefactor_ = std::pow(2.0, n_);
    laguerre_at_alpha_ = Vector(n_);
    for (int k = 0; k < n_; ++k) {
      laguerre_at_alpha_(k) =
          laguerre(spec.excitations[k], 0, -std::norm(spec.alpha(k)));
    }
  }

  double operator()(const Vector& x) const {
    const CVector a = a_rows_ * x.cast<Complex>();
    double w = prefactor_ * std::exp(-2.0 * (a - spec_.alpha).squaredNorm());
    for (int k = 0; k < n_; ++k) {
      const int m = spec_.excitations[k];
      if (m == 0) continue;
      const double arg = std::norm(2.0 * a(k) - spec_.alpha(k));
      w *= ((m % 2 == 0) ? 1.0 : -1.0) * laguerre(m, 0, arg) / laguerre_at_alpha_(k);
    }
    return w;
  }

 private:
  int n_;
  StateSpec spec_;
  CMatrix a_rows_;
  double prefactor_;
  Vector laguerre_at_alpha_;
};

}  // namespace

double wigner_value(const FloquetDecomposition& decomp, double t,
                    const StateSpec& spec, const Vector& q, const Vector& p) {
  const int n = decomp.n_modes();
  if (q.size() != n || p.size() != n) {
    throw ValidationError("wigner_value: q and p must be N-vectors");
  }
  WignerEvaluator eval(decomp, t, spec);
  Vector x(2 * n);
  x.head(n) = q;
  x.tail(n) = p;
  return eval(x);
}

PhaseSpaceGrid wigner_pacs(const FloquetDecomposition& decomp, double t,
                           const StateSpec& spec, PhaseSpaceGrid grid) {
  grid.validate(decomp.n_modes());
  WignerEvaluator eval(decomp, t, spec);
  const std::size_t points = grid.n_points();
  grid.samples.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.samples[i] = eval(grid.point(i));
  }
  return grid;
}

Complex wavefunction_pacs(const FloquetDecomposition& decomp, double t,
                          const StateSpec& spec, const Vector& q) {
  validate(spec);
  const int n = decomp.n_modes();
  if (spec.n_modes() != n || q.size() != n) {
    throw ValidationError("wavefunction_pacs: dimension mismatch");
  }
  if (!decomp.stable) {
    throw UnstableError("wavefunction requires a stable decomposition",
                        decomp.stability_margin);
  }

  const CMatrix f = flt_at(decomp, t);
  const CMatrix u = f.topLeftCorner(n, n);
  const CMatrix v = f.bottomLeftCorner(n, n);

  Eigen::FullPivLU<CMatrix> lu(u);
  if (!lu.isInvertible()) {
    throw Error("wavefunction_pacs: singular U block (broken decomposition)");
  }
  const CMatrix u_inv = lu.inverse();
  const CMatrix u_inv_t = u_inv.transpose();
  const CMatrix u_inv_conj = u_inv.conjugate();
  const CMatrix m_mat = u.adjoint() * u_inv_t;  // symmetric for canonical F

  const CVector alpha = spec.alpha;
  const CVector qc = q.cast<Complex>();

  // Gaussian exponent S(q) = i/2 q^T U^{-T} V^T q - 1/2 a^T M a + a^T M U^{-*} q.
  const CMatrix k_quad = u_inv_t * v.transpose();
  const Complex s_q = Complex(0.0, 0.5) * (qc.transpose() * (k_quad * qc))(0, 0) -
                      0.5 * (alpha.transpose() * (m_mat * alpha))(0, 0) +
                      (alpha.transpose() * (m_mat * (u_inv_conj * qc)))(0, 0);

  // Closed-form normalization of the Gaussian factor:
  // |psi_a|^2 = N_a^2 e^{-|a|^2} exp(-q^T G q + b^T q - Re a^T M a),
  // G = Im(U^{-T} V^T), b = 2 Re(U^{-dag} M a).
  const Matrix g_quad = 2.0 * k_quad.imag();
  const Vector b_lin = 2.0 * (u_inv.adjoint() * (m_mat * alpha)).real();
  Eigen::LLT<Matrix> llt(g_quad);
  if (llt.info() != Eigen::Success) {
    throw Error("wavefunction_pacs: Gaussian quadratic form not positive definite");
  }
  const Matrix l = llt.matrixL();
  double log_det_g = 0.0;
  for (int i = 0; i < n; ++i) log_det_g += 2.0 * std::log(l(i, i));
  const Vector g_inv_b = llt.solve(b_lin);
  const double re_ama = (alpha.transpose() * (m_mat * alpha))(0, 0).real();

  const double log_norm2 = alpha.squaredNorm() + re_ama + 0.5 * log_det_g -
                           0.5 * n * std::log(2.0 * M_PI) -
                           0.5 * b_lin.dot(g_inv_b);
  const double n_alpha = std::exp(0.5 * log_norm2);  // real-positive convention

  double n_excited = 1.0;
  for (int k = 0; k < n; ++k) {
    double factorial = 1.0;
    for (int j = 2; j <= spec.excitations[k]; ++j) factorial *= j;
    n_excited *= factorial * laguerre(spec.excitations[k], 0, -std::norm(alpha(k)));
  }

  const CVector z = u_inv_conj * qc - alpha;
  const Complex hermite = special::hermite_multidim(m_mat, spec.excitations, z);

  return (n_alpha / std::sqrt(n_excited)) *
         std::exp(-0.5 * alpha.squaredNorm() + s_q) * hermite;
}

NegativityStats negativity_scan(const PhaseSpaceGrid& grid) {
  return negativity_scan(grid, grid.cell_volume());
}

NegativityStats negativity_scan(const PhaseSpaceGrid& grid, double cell_volume) {
  if (grid.samples.empty()) throw GridError("negativity_scan: empty grid");
  const int n_modes = static_cast<int>(grid.coords.size()) / 2;

  NegativityStats stats;
  stats.min_value = grid.samples[0];
  std::size_t min_index = 0;
  double negative_sum = 0.0;
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    const double w = grid.samples[i];
    if (w < stats.min_value) {
      stats.min_value = w;
      min_index = i;
    }
    if (w < 0.0) negative_sum += -w;
  }
  stats.min_location = grid.point(min_index);
  stats.negative_mass = negative_sum * cell_volume / two_pi_pow(n_modes);
  return stats;
}

}  // namespace floq
