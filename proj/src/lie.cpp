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

#include "fincon/lie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fincon/error.hpp"

namespace fincon {

CMatrix bracket(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw ValidationError("bracket: operands must be square and equally sized");
  return x * y - y * x;
}

CMatrix embed_j(const CMatrix& t) {
  const Index m = t.rows();
  if (t.cols() != m) throw ValidationError("embed_j: T must be square");
  CMatrix out = CMatrix::Zero(2 * m, 2 * m);
  out.topRightCorner(m, m) = t;
  out.bottomLeftCorner(m, m) = -t.adjoint();
  return out;
}

CMatrix embed_k(const CMatrix& t) {
  const Index m = t.rows();
  if (t.cols() != m) throw ValidationError("embed_k: T must be square");
  CMatrix out = CMatrix::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = t;
  out.bottomRightCorner(m, m) = -t;
  return out;
}

JKEmbed JKEmbed::of(CMatrix t) {
  JKEmbed e;
  e.j_of_t = embed_j(t);
  e.k_of_t = embed_k(t);
  e.t = std::move(t);
  return e;
}

std::vector<NamedMatrix> named(const std::vector<ControlOperator>& ops) {
  std::vector<NamedMatrix> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back({op.id, op.matrix});
  return out;
}

std::vector<Index> leading_window(Index w) {
  std::vector<Index> out(static_cast<std::size_t>(w));
  for (Index k = 0; k < w; ++k) out[static_cast<std::size_t>(k)] = k;
  return out;
}

std::vector<Index> block_window(Index half, Index w) {
  std::vector<Index> out;
  for (Index k = 0; k < w; ++k) out.push_back(k);
  for (Index k = 0; k < w; ++k) out.push_back(half + k);
  return out;
}

CMatrix project(const CMatrix& m, const std::vector<Index>& window) {
  const auto w = static_cast<Index>(window.size());
  CMatrix out(w, w);
  for (Index r = 0; r < w; ++r)
    for (Index c = 0; c < w; ++c) out(r, c) = m(window[static_cast<std::size_t>(r)], window[static_cast<std::size_t>(c)]);
  return out;
}

LieClosureReport closure(const std::vector<NamedMatrix>& gens, const std::vector<Index>& window,
                         const ClosureOptions& opts) {
  if (gens.empty()) throw ValidationError("closure: no generators");
  if (opts.max_dim < gens.size()) throw ValidationError("closure: max_dim is smaller than the generator count");
  const Index dim = gens.front().matrix.rows();
  if (window.empty() || static_cast<Index>(window.size()) >= dim + 1)
    throw ValidationError("closure: interior window must be non-empty and no larger than the matrices");
  for (Index w : window)
    if (w < 0 || w >= dim) throw ValidationError("closure: interior window index out of range");

  LieClosureReport report;
  report.interior_dim = static_cast<Index>(window.size());

  RealSpan span(opts.tol);
  std::vector<CMatrix> elements;  // full truncated matrices, one per span direction
  // `scale` is the size the matrix would have without cancellation, so brackets
  // that vanish up to rounding are recognised as zero.
  auto consider = [&](const CMatrix& m, double scale) {
    const CMatrix p = project(m, window);
    const double full = m.norm();
    if (full == 0.0 || p.norm() <= 1e-12 * std::max(full, scale)) return false;
    if (!span.try_add(p)) return false;
    elements.push_back(m);
    return true;
  };

  for (const auto& g : gens) {
    if (g.matrix.rows() != dim || g.matrix.cols() != dim)
      throw ValidationError("closure: generator '" + g.id + "' has the wrong shape");
    if (!is_skew_hermitian(g.matrix, 1e-10))
      throw ValidationError("closure: generator '" + g.id + "' is not skew-Hermitian");
    report.generators.push_back(g.id);
    consider(g.matrix, 0.0);
  }

  std::size_t frontier_begin = 0;
  report.saturated = false;
  for (int depth = 1; depth <= opts.depth_cap; ++depth) {
    report.depth = depth;
    const std::size_t frontier_end = elements.size();
    bool grew = false;
    for (std::size_t a = frontier_begin; a < frontier_end; ++a) {
      for (std::size_t b = 0; b < frontier_end; ++b) {
        if (b >= frontier_begin && b <= a) continue;  // each unordered frontier pair once
        const CMatrix c = bracket(elements[a], elements[b]);
        if (!is_skew_hermitian(c, 1e-9)) {
          std::ostringstream os;
          os << "closure: bracket lost skew-Hermiticity at depth " << depth;
          throw DomainError(os.str());
        }
        if (consider(c, elements[a].norm() * elements[b].norm())) grew = true;
        if (elements.size() >= opts.max_dim) {
          report.dimension_found = elements.size();
          return report;
        }
      }
    }
    if (!grew) {
      report.saturated = true;
      break;
    }
    frontier_begin = frontier_end;
  }
  report.dimension_found = elements.size();
  return report;
}

LieClosureReport closure(const std::vector<NamedMatrix>& gens, Index interior, const ClosureOptions& opts) {
  if (gens.empty()) throw ValidationError("closure: no generators");
  if (interior < 1 || interior >= gens.front().matrix.rows())
    throw ValidationError("closure: interior must satisfy 0 < interior < dim");
  return closure(gens, leading_window(interior), opts);
}

LieClosureReport lamb_dicke_closure(int levels, double eta, const ClosureOptions& opts) {
  const Index w = levels - opts.depth_cap - 2;
  if (w < 2) throw ValidationError("lamb_dicke_closure: truncation too small for the depth cap");
  const Complex i{0.0, 1.0};
  std::vector<NamedMatrix> gens{{"J(iI)", embed_j(i * CMatrix::Identity(levels, levels))},
                                {"eta*J(a)", embed_j(eta * annihilation(levels))}};
  return closure(gens, block_window(levels, w), opts);
}

LemmaReport verify_lemma(const CMatrix& t, int p_max) {
  const Index m = t.rows();
  if (t.cols() != m) throw ValidationError("verify_lemma: T must be square");
  if (p_max < 1) throw ValidationError("verify_lemma: p_max must be >= 1");
  if (m < 2 * Index{p_max} + 4) {
    std::ostringstream os;
    os << "verify_lemma: truncation " << m << " too small for depth " << p_max << " (need >= " << 2 * p_max + 4 << ")";
    throw ValidationError(os.str());
  }

  LemmaReport rep;
  rep.interior = m - 2 * Index{p_max};
  const auto window = block_window(m, rep.interior);
  auto residual = [&](const CMatrix& got, const CMatrix& want) {
    return project(got - want, window).cwiseAbs().maxCoeff();
  };
  auto record = [&](std::string name, double r) {
    rep.checks.push_back({std::move(name), r});
    rep.max_residual = std::max(rep.max_residual, r);
  };

  const Complex i{0.0, 1.0};
  const CMatrix id = CMatrix::Identity(m, m);
  const CMatrix w = i * (t + t.adjoint());
  const CMatrix j_ii = embed_j(i * id);
  const CMatrix j_t = embed_j(t);
  const CMatrix k_w = embed_k(w);
  const CMatrix j_w = embed_j(w);

  record("[J(T),J(iI)] = K(W)", residual(bracket(j_t, j_ii), k_w));
  record("[J(iI),K(W)] = J(-2iW)", residual(bracket(j_ii, k_w), embed_j(-2.0 * i * w)));

  CMatrix ad = k_w;
  CMatrix w_pow = w;
  double factor = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    ad = bracket(j_w, ad);
    w_pow = w_pow * w;  // W^{p+1}
    factor *= -2.0;
    const CMatrix want = factor * (p % 2 ? embed_j(w_pow) : embed_k(w_pow));
    std::ostringstream name;
    name << "ad_J(W)^" << p << " K(W) = (-2)^" << p << (p % 2 ? " J" : " K") << "(W^" << p + 1 << ")";
    record(name.str(), residual(ad, want));
  }
  rep.pass = rep.max_residual <= 1e-9;
  return rep;
}

}  // namespace fincon
