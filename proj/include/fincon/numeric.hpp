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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fincon {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kFidelityTol = 1e-9;

/// Two-level rotation acting on an amplitude pair (a, b):
///
///   a' = cos(theta) a - e^{-i phi} sin(theta) b
///   b' = e^{i phi} sin(theta) a + cos(theta) b
///
/// This is the only phase convention used anywhere in the library. theta = pi/2
/// exchanges the populations of the pair completely.
struct Rotation2 {
  double theta = 0.0;
  double phi = 0.0;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

/// Applies `r` to the pair (a, b) in place.
void apply_rotation(const Rotation2& r, Complex& a, Complex& b);

/// Rotation that zeroes `a` and moves the full weight onto `b`.
/// Throws ValidationError when a = b = 0.
Rotation2 givens_zero(Complex a, Complex b);

/// Max-norm distance of M from skew-Hermiticity, ||M + M^dagger||_max.
double skew_defect(const CMatrix& m);
bool is_skew_hermitian(const CMatrix& m, double rel_tol = 1e-12);

/// Dense matrix exponential by scaling and squaring with a degree-18 Taylor
/// kernel. Valid for any square matrix; the norm is scaled below 1/4 first.
CMatrix expm(const CMatrix& m);

/// exp(t M) for skew-Hermitian M. Rejects non-square or non-skew input and
/// checks the result is unitary to kUnitarityTol.
CMatrix expm_skew(const CMatrix& m, double t);

/// Max-norm distance of U^dagger U from the identity.
double unitarity_defect(const CMatrix& u);

/// Real inner product <X, Y> = Re tr(X^dagger Y).
double real_inner(const CMatrix& x, const CMatrix& y);

/// Incrementally grown orthonormal basis of a real-linear span of equally
/// shaped complex matrices. Uses Gram-Schmidt with one reorthogonalisation pass.
class RealSpan {
 public:
  explicit RealSpan(double tol = kRankTol) : tol_(tol) {}

  /// Adds `m` if its component orthogonal to the span exceeds tol * ||m||.
  /// Returns true when the span grew. Zero matrices are never added.
  bool try_add(const CMatrix& m);

  /// Relative norm of the part of `m` outside the span, in [0, 1].
  double residual(const CMatrix& m) const;

  std::size_t dim() const { return basis_.size(); }
  const std::vector<CMatrix>& basis() const { return basis_; }

 private:
  CMatrix orthogonal_part(const CMatrix& m) const;

  double tol_;
  std::vector<CMatrix> basis_;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<CMatrix> basis;
};

/// Dimension of the real span of `mats`. A direction counts when it survives
/// projection by more than tol times the largest input norm.
RankResult orthonormal_rank(std::span<const CMatrix> mats, double tol = kRankTol);

/// |<phi|psi>|^2 for unit vectors. Throws ValidationError on dimension
/// mismatch or when either norm is off by more than kFidelityTol.
double fidelity(const CVector& psi, const CVector& phi);

/// Indices of entries with |x_k| > threshold.
std::vector<Index> support(const CVector& x, double threshold);

}  // namespace fincon
