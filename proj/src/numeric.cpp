// Copyright 2026 The fincon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fincon/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fincon/error.hpp"

namespace fincon {

namespace {

constexpr int kTaylorDegree = 18;
constexpr double kScaledNorm = 0.25;

double one_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phi, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

void apply_rotation(const Rotation2& r, Complex& a, Complex& b) {
  const double c = std::cos(r.theta);
  const double s = std::sin(r.theta);
  const Complex up = std::polar(1.0, r.phi);
  const Complex na = c * a - std::conj(up) * s * b;
  const Complex nb = up * s * a + c * b;
  a = na;
  b = nb;
}

Rotation2 givens_zero(Complex a, Complex b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma == 0.0 && mb == 0.0) throw ValidationError("givens_zero: both amplitudes are zero");
  if (ma == 0.0) return {0.0, 0.0};
  if (mb == 0.0) return {std::numbers::pi / 2.0, 0.0};
  // cos(theta) a = e^{-i phi} sin(theta) b  =>  tan(theta) = |a|/|b|, phi = arg b - arg a
  return {std::atan2(ma, mb), wrap_phase(std::arg(b) - std::arg(a))};
}

double skew_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m + m.adjoint());
}

bool is_skew_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return skew_defect(m) <= rel_tol * std::max(max_abs(m), 1e-300);
}

CMatrix expm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("expm: matrix is not square");
  const Index n = m.rows();
  const double norm = one_norm(m);
  int squarings = 0;
  if (norm > kScaledNorm) squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
  const CMatrix scaled = m / std::ldexp(1.0, squarings);

  // Horner: I + X(I + X/2(I + X/3(...)))
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix acc = id;
  for (int k = kTaylorDegree; k >= 1; --k) acc = id + (scaled * acc) / static_cast<double>(k);
  for (int s = 0; s < squarings; ++s) acc = acc * acc;
  return acc;
}

double unitarity_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

CMatrix expm_skew(const CMatrix& m, double t) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "expm_skew: matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw ValidationError(os.str());
  }
  // Frobenius-scale check, ||M + M^dagger|| <= 1e-12 ||M||.
  const double defect = (m + m.adjoint()).norm();
  if (defect > 1e-12 * m.norm()) {
    std::ostringstream os;
    os << "expm_skew: matrix is not skew-Hermitian (||M + M^dagger|| = " << defect << ")";
    throw ValidationError(os.str());
  }
  CMatrix u = expm(t * m);
  const double drift = unitarity_defect(u);
  if (drift > kUnitarityTol) {
    std::ostringstream os;
    os << "expm_skew: result not unitary to tolerance (defect " << drift << ")";
    throw DomainError(os.str());
  }
  return u;
}

double real_inner(const CMatrix& x, const CMatrix& y) {
  // Re tr(X^dagger Y) = sum Re(conj(x_ij) y_ij)
  return (x.array().conjugate() * y.array()).real().sum();
}

CMatrix RealSpan::orthogonal_part(const CMatrix& m) const {
  CMatrix r = m;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis_) r -= real_inner(q, r) * q;
  return r;
}

double RealSpan::residual(const CMatrix& m) const {
  const double n = m.norm();
  if (n == 0.0) return 0.0;
  return orthogonal_part(m).norm() / n;
}

bool RealSpan::try_add(const CMatrix& m) {
  const double n = m.norm();
  if (n == 0.0) return false;
  CMatrix r = orthogonal_part(m / n);
  const double rn = r.norm();
  if (rn <= tol_) return false;
  basis_.push_back(r / rn);
  return true;
}

RankResult orthonormal_rank(std::span<const CMatrix> mats, double tol) {
  RankResult out;
  if (mats.empty()) return out;
  const Index rows = mats.front().rows();
  const Index cols = mats.front().cols();
  double scale = 0.0;
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols)
      throw ValidationError("orthonormal_rank: matrices differ in shape");
    scale = std::max(scale, m.norm());
  }
  if (scale == 0.0) return out;

  std::vector<CMatrix> basis;
  for (const auto& m : mats) {
    CMatrix r = m / scale;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= real_inner(q, r) * q;
    const double rn = r.norm();
    if (rn > tol) basis.push_back(r / rn);
  }
  out.rank = basis.size();
  out.basis = std::move(basis);
  return out;
}

double fidelity(const CVector& psi, const CVector& phi) {
  if (psi.size() != phi.size()) {
    std::ostringstream os;
    os << "fidelity: dimension mismatch (" << psi.size() << " vs " << phi.size() << ")";
    throw ValidationError(os.str());
  }
  if (std::abs(psi.norm() - 1.0) > kFidelityTol || std::abs(phi.norm() - 1.0) > kFidelityTol)
    throw ValidationError("fidelity: inputs must be unit vectors");
  const double f = std::norm(phi.dot(psi));  // dot() conjugates the left operand
  return std::clamp(f, 0.0, 1.0);
}

std::vector<Index> support(const CVector& x, double threshold) {
  std::vector<Index> out;
  for (Index k = 0; k < x.size(); ++k)
    if (std::abs(x[k]) > threshold) out.push_back(k);
  return out;
}

}  // namespace fincon
