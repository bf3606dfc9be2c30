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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fincon/numeric.hpp"

namespace fincon {

enum class Family {
  HarmonicOscillator,
  SpinOscillator,
  NLevelOscillator,
  SpinTwoOscillators,
  BlockExample,
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

enum class Spin { Down, Up };

/// Drift frequencies. Only omega_m enters a generator (the oscillator drift);
/// the rest travel with the model as metadata.
struct DriftFrequencies {
  double omega_m = 1.0;
  double omega_0 = 1.0;
  double omega_s = 1.0;
  double omega_c_prime = 1.0;
  double omega_z = 1.0;
};

struct SystemModel {
  Family family = Family::SpinOscillator;
  std::string scheme;  // "carrier+red", "red+blue", "scheme-a", "scheme-b", or "" for fixed families
  double eta = 0.1;    // Lamb-Dicke parameter
  int n_max = 4;       // modelled number states 0..n_max
  int guard = 4;       // extra levels above n_max used to detect leakage
  int levels = 2;      // internal levels
  double mu = 1.0;     // dipole scale, report-time only
  DriftFrequencies drift;

  /// Oscillator levels actually built, n_max + guard + 1 (per oscillator).
  int osc_levels() const { return n_max + guard + 1; }
  Index dim() const;
};

/// Fills family defaults (levels, scheme) and rejects inconsistent parameters.
SystemModel validated(SystemModel m);

SystemModel spin_oscillator(double eta, int n_max, std::string scheme = "carrier+red", int guard = 4);
SystemModel nlevel_oscillator(int levels, double eta, int n_max, std::string scheme = "scheme-a",
                              int guard = 4);
SystemModel trapped_electron(int n_max, int guard = 4);
SystemModel harmonic_oscillator(int n_max, int guard = 4, double omega_m = 1.0);
SystemModel block_example(int dim);

struct HOState {
  int n = 0;
};
struct SpinHOState {
  Spin spin = Spin::Down;
  int n = 0;
};
struct NLevelState {
  int k = 1;  // 1..N
  int n = 0;
};
struct ElectronState {
  int n = 0;  // cyclotron
  int l = 0;  // axial
  Spin spin = Spin::Down;
};
struct BlockState {
  int index = 1;  // e_1 .. e_dim
};

using BasisState = std::variant<HOState, SpinHOState, NLevelState, ElectronState, BlockState>;

/// Position of `s` in the model's basis ordering:
///  - spin-oscillator: |down,0>, |up,0>, |down,1>, |up,1>, ...
///  - N-level: n-major, then k
///  - electron: l-major, then n, then spin (down before up)
Index canonical_index(const SystemModel& model, const BasisState& s);
BasisState basis_state(const SystemModel& model, Index index);

/// Text label of a basis state, e.g. "down,2", "3,1" (k,n), "1,0,up" (n,l,spin),
/// "5" (oscillator), "e3" (block example). parse_label accepts the same grammar.
std::string basis_label(const SystemModel& model, Index index);
Index parse_label(const SystemModel& model, std::string_view label);

/// True for basis states whose oscillator number (either oscillator) exceeds n_max.
bool in_guard_band(const SystemModel& model, Index index);
std::vector<bool> guard_mask(const SystemModel& model);

/// Associated Laguerre polynomial L_n^alpha(x) by three-term recurrence.
double laguerre(int n, int alpha, double x);

/// <n_to| exp(i eta (a + a^dagger)) |n_from>
///   = exp(-eta^2/2) sqrt(n_<!/n_>!) (i eta)^{|n_to - n_from|} L_{n_<}^{|n_to - n_from|}(eta^2)
Complex coupling(int n_from, int n_to, double eta);

struct Edge {
  Index i = 0;  // i < j
  Index j = 0;
  Complex coupling;  // matrix(i, j)
};

/// Truncated skew-Hermitian control generator with its off-diagonal sparsity.
struct ControlOperator {
  std::string id;
  CMatrix matrix;
  std::vector<Edge> edges;

  Index dim() const { return matrix.rows(); }

  /// Builds M with M(i,j) = g and M(j,i) = -conj(g) for every edge.
  static ControlOperator from_edges(std::string id, Index dim, std::vector<Edge> edges);
  /// Takes a skew-Hermitian matrix; edges are its nonzero strict upper triangle.
  static ControlOperator from_matrix(std::string id, CMatrix m);
};

/// Control operators of the model's family and scheme.
std::vector<ControlOperator> build_operators(const SystemModel& model);

/// Oscillator ladder operators on `levels` number states.
CMatrix annihilation(int levels);
CMatrix position(int levels);  // (a + a^dagger)/sqrt(2)

}  // namespace fincon
