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
#include <vector>

#include "fincon/models.hpp"

namespace fincon {

CMatrix bracket(const CMatrix& x, const CMatrix& y);

/// J(T) = [[0, T], [-T^dagger, 0]] and K(T) = [[T, 0], [0, -T]] on H + H.
CMatrix embed_j(const CMatrix& t);
CMatrix embed_k(const CMatrix& t);

struct JKEmbed {
  CMatrix t;
  CMatrix j_of_t;
  CMatrix k_of_t;

  static JKEmbed of(CMatrix t);
};

struct NamedMatrix {
  std::string id;
  CMatrix matrix;
};

std::vector<NamedMatrix> named(const std::vector<ControlOperator>& ops);

/// Indices 0..w-1.
std::vector<Index> leading_window(Index w);
/// Indices 0..w-1 and half..half+w-1: the leading window of each block of a
/// two-block (J/K) embedding with block size `half`.
std::vector<Index> block_window(Index half, Index w);

/// Sub-matrix on `window` x `window`.
CMatrix project(const CMatrix& m, const std::vector<Index>& window);

struct ClosureOptions {
  std::size_t max_dim = 24;
  double tol = kRankTol;
  int depth_cap = 8;
};

struct LieClosureReport {
  std::vector<std::string> generators;
  std::size_t dimension_found = 0;
  bool saturated = false;
  int depth = 0;          // bracket levels evaluated
  Index interior_dim = 0; // size of the projection window
};

/// Breadth-first bracket closure. Every new bracket is computed on the full
/// truncated matrices; independence is decided on the interior window, which
/// drops the rows a finite truncation corrupts.
LieClosureReport closure(const std::vector<NamedMatrix>& gens, const std::vector<Index>& window,
                         const ClosureOptions& opts = {});
LieClosureReport closure(const std::vector<NamedMatrix>& gens, Index interior, const ClosureOptions& opts = {});

/// Closure of {J(iI), eta J(a)} on `levels` oscillator states, independence
/// judged on the leading (levels - depth_cap - 2) levels of each block.
LieClosureReport lamb_dicke_closure(int levels, double eta, const ClosureOptions& opts = {});

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
};

struct LemmaReport {
  bool pass = false;
  double max_residual = 0.0;
  Index interior = 0;  // per block
  std::vector<IdentityResidual> checks;
};

/// Checks the bracket identities generated by J(iI) and J(T), W = i(T + T^dagger):
///   [J(T), J(iI)] = K(W)
///   [J(iI), K(W)] = J(-2iW)
///   ad_{J(W)}^p K(W) = (-2)^p J(W^{p+1})  (p odd)
///                    = (-2)^p K(W^{p+1})  (p even),  p = 1..p_max
/// on the leading (M - 2 p_max) levels of each block. Passes iff the largest
/// residual is <= 1e-9. T must be M x M with M >= 2 p_max + 4.
LemmaReport verify_lemma(const CMatrix& t, int p_max);

}  // namespace fincon
