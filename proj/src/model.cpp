#include "floq/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace floq {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_square(const Matrix& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream msg;
    msg << what << ": expected " << n << "x" << n << " matrix, got " << m.rows()
        << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entries");
  }
}

double relative_asymmetry(const Matrix& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

// Validates one block series; symmetrizes when require_symmetric.
FourierMatrix check_block(FourierMatrix block, int n, bool require_symmetric,
                          const char* name) {
  if (block.constant.size() == 0) block.constant = Matrix::Zero(n, n);
  require_square(block.constant, n, name);
  require_finite(block.constant, name);

  std::set<int> seen;
  for (const auto& h : block.harmonics) {
    if (h.index <= 0) {
      throw ValidationError(std::string(name) + ": harmonic indices must be positive");
    }
    if (!seen.insert(h.index).second) {
      throw ValidationError(std::string(name) + ": duplicate harmonic index");
    }
    require_square(h.cos_coeff, n, name);
    require_square(h.sin_coeff, n, name);
    require_finite(h.cos_coeff, name);
    require_finite(h.sin_coeff, name);
  }

  if (require_symmetric) {
    auto check = [&](const Matrix& m) {
      if (relative_asymmetry(m) > kSymmetryTol) {
        throw ValidationError(std::string(name) +
                              ": block is not symmetric within 1e-12 relative");
      }
    };
    check(block.constant);
    for (const auto& h : block.harmonics) {
      check(h.cos_coeff);
      check(h.sin_coeff);
    }
    block = block.symmetrized();
  }
  return block;
}

}  // namespace

Matrix symplectic_form(int n_modes) {
  Matrix j = Matrix::Zero(2 * n_modes, 2 * n_modes);
  j.topRightCorner(n_modes, n_modes) = Matrix::Identity(n_modes, n_modes);
  j.bottomLeftCorner(n_modes, n_modes) = -Matrix::Identity(n_modes, n_modes);
  return j;
}

FourierMatrix FourierMatrix::constant_matrix(Matrix value) {
  FourierMatrix out;
  out.constant = std::move(value);
  return out;
}

Matrix FourierMatrix::evaluate(double t, double period) const {
  Matrix out = constant;
  const double base = 2.0 * M_PI * t / period;
  for (const auto& h : harmonics) {
    out += std::cos(h.index * base) * h.cos_coeff +
           std::sin(h.index * base) * h.sin_coeff;
  }
  return out;
}

bool FourierMatrix::is_symmetric(double tol) const {
  if (relative_asymmetry(constant) > tol) return false;
  for (const auto& h : harmonics) {
    if (relative_asymmetry(h.cos_coeff) > tol) return false;
    if (relative_asymmetry(h.sin_coeff) > tol) return false;
  }
  return true;
}

FourierMatrix FourierMatrix::symmetrized() const {
  FourierMatrix out = *this;
  auto sym = [](Matrix& m) { m = 0.5 * (m + m.transpose()).eval(); };
  sym(out.constant);
  for (auto& h : out.harmonics) {
    sym(h.cos_coeff);
    sym(h.sin_coeff);
  }
  return out;
}

Matrix PeriodicConfiguration::hamiltonian_matrix(double t) const {
  const int n = n_modes;
  Matrix s(2 * n, 2 * n);
  const Matrix qq = k_qq.evaluate(t, period);
  const Matrix pp = k_pp.evaluate(t, period);
  const Matrix qp = k_qp.evaluate(t, period);
  s.topLeftCorner(n, n) = qq;
  s.topRightCorner(n, n) = qp;
  s.bottomLeftCorner(n, n) = qp.transpose();
  s.bottomRightCorner(n, n) = pp;
  return s;
}

Matrix PeriodicConfiguration::dynamical_matrix(double t) const {
  // Pi = J S assembled directly: [[k_qp^T, k_pp], [-k_qq, -k_qp]].
  const int n = n_modes;
  Matrix pi(2 * n, 2 * n);
  const Matrix qq = k_qq.evaluate(t, period);
  const Matrix pp = k_pp.evaluate(t, period);
  const Matrix qp = k_qp.evaluate(t, period);
  pi.topLeftCorner(n, n) = qp.transpose();
  pi.topRightCorner(n, n) = pp;
  pi.bottomLeftCorner(n, n) = -qq;
  pi.bottomRightCorner(n, n) = -qp;
  return pi;
}

PeriodicConfiguration build_configuration(int n_modes, double period,
                                          FourierMatrix k_qq, FourierMatrix k_pp,
                                          FourierMatrix k_qp,
                                          int steps_per_period) {
  if (n_modes < 1) throw ValidationError("n_modes must be >= 1");
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ValidationError("period must be positive and finite");
  }
  if (steps_per_period < 1) throw ValidationError("steps_per_period must be >= 1");

  PeriodicConfiguration config;
  config.n_modes = n_modes;
  config.period = period;
  config.steps_per_period = steps_per_period;
  config.k_qq = check_block(std::move(k_qq), n_modes, true, "k_qq");
  config.k_pp = check_block(std::move(k_pp), n_modes, true, "k_pp");
  config.k_qp = check_block(std::move(k_qp), n_modes, false, "k_qp");
  return config;
}

PeriodicConfiguration preset_mathieu_pair(double a1, double a2, double q_drive,
                                          double coupling, double period,
                                          int steps_per_period) {
  for (double v : {a1, a2, q_drive, coupling}) {
    if (!std::isfinite(v)) throw ValidationError("mathieu_pair: non-finite parameter");
  }
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = a1;
  diag(1, 1) = a2;
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = coupling;

  FourierMatrix kqq;
  kqq.constant = diag + off;
  if (q_drive != 0.0) {
    FourierMatrix::Harmonic h;
    h.index = 1;
    h.cos_coeff = -2.0 * q_drive * Matrix::Identity(2, 2);
    h.sin_coeff = Matrix::Zero(2, 2);
    kqq.harmonics.push_back(std::move(h));
  }

  return build_configuration(2, period, std::move(kqq),
                             FourierMatrix::constant_matrix(Matrix::Identity(2, 2)),
                             FourierMatrix::constant_matrix(Matrix::Zero(2, 2)),
                             steps_per_period);
}

}  // namespace floq
