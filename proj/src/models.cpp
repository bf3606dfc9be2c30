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

#include "fincon/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fincon/error.hpp"

namespace fincon {

namespace {

constexpr Complex kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void bad_label(const SystemModel& m, std::string_view label) {
  std::ostringstream os;
  os << "label '" << label << "' is not a basis state of " << to_string(m.family) << " (n_max "
     << m.n_max << ", guard " << m.guard << ")";
  throw ValidationError(os.str());
}

void check_range(bool ok, const char* what) {
  if (!ok) throw ValidationError(std::string("basis state out of range: ") + what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '|')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '>')) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_spin(std::string_view s, Spin& out) {
  s = trim(s);
  if (s == "down" || s == "d") {
    out = Spin::Down;
    return true;
  }
  if (s == "up" || s == "u") {
    out = Spin::Up;
    return true;
  }
  return false;
}

const char* spin_name(Spin s) { return s == Spin::Up ? "up" : "down"; }

Index spin_bit(Spin s) { return s == Spin::Up ? 1 : 0; }

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::HarmonicOscillator: return "HarmonicOscillator";
    case Family::SpinOscillator: return "SpinOscillator";
    case Family::NLevelOscillator: return "NLevelOscillator";
    case Family::SpinTwoOscillators: return "SpinTwoOscillators";
    case Family::BlockExample: return "BlockExample";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  for (auto f : {Family::HarmonicOscillator, Family::SpinOscillator, Family::NLevelOscillator,
                 Family::SpinTwoOscillators, Family::BlockExample})
    if (to_string(f) == s) return f;
  throw ValidationError("unknown family '" + std::string(s) + "'");
}

Index SystemModel::dim() const {
  const Index osc = osc_levels();
  switch (family) {
    case Family::HarmonicOscillator:
    case Family::BlockExample: return osc;
    case Family::SpinOscillator:
    case Family::NLevelOscillator: return levels * osc;
    case Family::SpinTwoOscillators: return levels * osc * osc;
  }
  return 0;
}

SystemModel validated(SystemModel m) {
  if (!(m.eta >= 0.0) || !std::isfinite(m.eta)) throw ValidationError("eta must be finite and >= 0");
  if (m.n_max < 1) throw ValidationError("n_max must be >= 1");
  if (m.guard < 0) throw ValidationError("guard must be >= 0");
  if (!std::isfinite(m.mu)) throw ValidationError("mu must be finite");
  if (m.scheme == "default") m.scheme.clear();

  switch (m.family) {
    case Family::HarmonicOscillator:
    case Family::BlockExample:
      m.levels = 1;
      if (!m.scheme.empty()) throw ValidationError("family " + std::string(to_string(m.family)) + " takes no scheme");
      break;
    case Family::SpinOscillator:
      m.levels = 2;
      if (m.scheme.empty()) m.scheme = "carrier+red";
      if (m.scheme != "carrier+red" && m.scheme != "red+blue")
        throw ValidationError("unknown SpinOscillator scheme '" + m.scheme + "'");
      break;
    case Family::NLevelOscillator:
      if (m.levels < 3) throw ValidationError("NLevelOscillator needs levels >= 3");
      if (m.scheme.empty()) m.scheme = "scheme-a";
      if (m.scheme != "scheme-a" && m.scheme != "scheme-b")
        throw ValidationError("unknown NLevelOscillator scheme '" + m.scheme + "'");
      break;
    case Family::SpinTwoOscillators:
      m.levels = 2;
      if (!m.scheme.empty() && m.scheme != "s+sa+sc")
        throw ValidationError("unknown SpinTwoOscillators scheme '" + m.scheme + "'");
      m.scheme = "s+sa+sc";
      break;
  }
  return m;
}

SystemModel spin_oscillator(double eta, int n_max, std::string scheme, int guard) {
  SystemModel m;
  m.family = Family::SpinOscillator;
  m.eta = eta;
  m.n_max = n_max;
  m.guard = guard;
  m.scheme = std::move(scheme);
  return validated(m);
}

SystemModel nlevel_oscillator(int levels, double eta, int n_max, std::string scheme, int guard) {
  SystemModel m;
  m.family = Family::NLevelOscillator;
  m.levels = levels;
  m.eta = eta;
  m.n_max = n_max;
  m.guard = guard;
  m.scheme = std::move(scheme);
  return validated(m);
}

SystemModel trapped_electron(int n_max, int guard) {
  SystemModel m;
  m.family = Family::SpinTwoOscillators;
  m.n_max = n_max;
  m.guard = guard;
  m.eta = 0.0;
  return validated(m);
}

SystemModel harmonic_oscillator(int n_max, int guard, double omega_m) {
  SystemModel m;
  m.family = Family::HarmonicOscillator;
  m.n_max = n_max;
  m.guard = guard;
  m.eta = 0.0;
  m.drift.omega_m = omega_m;
  return validated(m);
}

SystemModel block_example(int dim) {
  if (dim < 2) throw ValidationError("block example needs dim >= 2");
  SystemModel m;
  m.family = Family::BlockExample;
  m.n_max = dim - 1;
  m.guard = 0;
  m.eta = 0.0;
  return validated(m);
}

Index canonical_index(const SystemModel& model, const BasisState& s) {
  const int osc = model.osc_levels();
  return std::visit(
      Overloaded{
          [&](const HOState& h) -> Index {
            check_range(model.family == Family::HarmonicOscillator, "not an oscillator model");
            check_range(h.n >= 0 && h.n < osc, "n");
            return h.n;
          },
          [&](const SpinHOState& h) -> Index {
            check_range(model.family == Family::SpinOscillator, "not a spin-oscillator model");
            check_range(h.n >= 0 && h.n < osc, "n");
            return 2 * Index{h.n} + spin_bit(h.spin);
          },
          [&](const NLevelState& h) -> Index {
            check_range(model.family == Family::NLevelOscillator, "not an N-level model");
            check_range(h.k >= 1 && h.k <= model.levels, "k");
            check_range(h.n >= 0 && h.n < osc, "n");
            return Index{h.n} * model.levels + (h.k - 1);
          },
          [&](const ElectronState& h) -> Index {
            check_range(model.family == Family::SpinTwoOscillators, "not a trapped-electron model");
            check_range(h.n >= 0 && h.n < osc, "n");
            check_range(h.l >= 0 && h.l < osc, "l");
            return Index{h.l} * 2 * osc + 2 * Index{h.n} + spin_bit(h.spin);
          },
          [&](const BlockState& h) -> Index {
            check_range(model.family == Family::BlockExample, "not a block-example model");
            check_range(h.index >= 1 && h.index <= osc, "index");
            return h.index - 1;
          },
      },
      s);
}

BasisState basis_state(const SystemModel& model, Index index) {
  if (index < 0 || index >= model.dim()) throw ValidationError("basis index out of range");
  const int osc = model.osc_levels();
  const int k = static_cast<int>(index);
  switch (model.family) {
    case Family::HarmonicOscillator: return HOState{k};
    case Family::SpinOscillator: return SpinHOState{k % 2 ? Spin::Up : Spin::Down, k / 2};
    case Family::NLevelOscillator: return NLevelState{k % model.levels + 1, k / model.levels};
    case Family::SpinTwoOscillators: {
      const int l = k / (2 * osc);
      const int rem = k % (2 * osc);
      return ElectronState{rem / 2, l, rem % 2 ? Spin::Up : Spin::Down};
    }
    case Family::BlockExample: return BlockState{k + 1};
  }
  return HOState{};
}

std::string basis_label(const SystemModel& model, Index index) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const HOState& h) { os << h.n; },
                 [&](const SpinHOState& h) { os << spin_name(h.spin) << ',' << h.n; },
                 [&](const NLevelState& h) { os << h.k << ',' << h.n; },
                 [&](const ElectronState& h) { os << h.n << ',' << h.l << ',' << spin_name(h.spin); },
                 [&](const BlockState& h) { os << 'e' << h.index; },
             },
             basis_state(model, index));
  return os.str();
}

Index parse_label(const SystemModel& model, std::string_view label) {
  const auto raw = trim(label);
  const auto parts = split(raw, ',');
  try {
    switch (model.family) {
      case Family::HarmonicOscillator: {
        int n;
        if (parts.size() != 1 || !parse_int(parts[0], n)) bad_label(model, label);
        return canonical_index(model, HOState{n});
      }
      case Family::SpinOscillator: {
        Spin s;
        int n;
        if (parts.size() != 2 || !parse_spin(parts[0], s) || !parse_int(parts[1], n)) bad_label(model, label);
        return canonical_index(model, SpinHOState{s, n});
      }
      case Family::NLevelOscillator: {
        int k, n;
        if (parts.size() != 2 || !parse_int(parts[0], k) || !parse_int(parts[1], n)) bad_label(model, label);
        return canonical_index(model, NLevelState{k, n});
      }
      case Family::SpinTwoOscillators: {
        int n, l;
        Spin s;
        if (parts.size() != 3 || !parse_int(parts[0], n) || !parse_int(parts[1], l) || !parse_spin(parts[2], s))
          bad_label(model, label);
        return canonical_index(model, ElectronState{n, l, s});
      }
      case Family::BlockExample: {
        int k;
        if (parts.size() != 1 || raw.empty() || raw.front() != 'e' || !parse_int(raw.substr(1), k))
          bad_label(model, label);
        return canonical_index(model, BlockState{k});
      }
    }
  } catch (const ValidationError&) {
    bad_label(model, label);
  }
  bad_label(model, label);
}

bool in_guard_band(const SystemModel& model, Index index) {
  return std::visit(Overloaded{
                        [&](const HOState& h) { return h.n > model.n_max; },
                        [&](const SpinHOState& h) { return h.n > model.n_max; },
                        [&](const NLevelState& h) { return h.n > model.n_max; },
                        [&](const ElectronState& h) { return h.n > model.n_max || h.l > model.n_max; },
                        [&](const BlockState& h) { return h.index - 1 > model.n_max; },
                    },
                    basis_state(model, index));
}

std::vector<bool> guard_mask(const SystemModel& model) {
  std::vector<bool> mask(static_cast<std::size_t>(model.dim()));
  for (Index k = 0; k < model.dim(); ++k) mask[static_cast<std::size_t>(k)] = in_guard_band(model, k);
  return mask;
}

double laguerre(int n, int alpha, double x) {
  if (n < 0) throw ValidationError("laguerre: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex coupling(int n_from, int n_to, double eta) {
  if (n_from < 0 || n_to < 0) throw ValidationError("coupling: negative number state");
  const int lo = std::min(n_from, n_to);
  const int hi = std::max(n_from, n_to);
  const int delta = hi - lo;
  // sqrt(lo!/hi!) = 1/sqrt((lo+1)(lo+2)...hi)
  double ratio = 1.0;
  for (int k = lo + 1; k <= hi; ++k) ratio /= std::sqrt(static_cast<double>(k));
  const double eta2 = eta * eta;
  Complex phase = 1.0;
  for (int k = 0; k < delta; ++k) phase *= kI * eta;
  return std::exp(-eta2 / 2.0) * ratio * phase * laguerre(lo, delta, eta2);
}

ControlOperator ControlOperator::from_edges(std::string id, Index dim, std::vector<Edge> edges) {
  ControlOperator op;
  op.id = std::move(id);
  op.matrix = CMatrix::Zero(dim, dim);
  for (auto& e : edges) {
    if (e.i > e.j) {
      std::swap(e.i, e.j);
      e.coupling = -std::conj(e.coupling);
    }
    if (e.i == e.j || e.i < 0 || e.j >= dim) throw ValidationError("operator '" + op.id + "': bad edge");
    op.matrix(e.i, e.j) = e.coupling;
    op.matrix(e.j, e.i) = -std::conj(e.coupling);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  op.edges = std::move(edges);
  return op;
}

ControlOperator ControlOperator::from_matrix(std::string id, CMatrix m) {
  if (m.rows() != m.cols()) throw ValidationError("operator '" + id + "': matrix not square");
  if (!is_skew_hermitian(m)) throw ValidationError("operator '" + id + "': matrix not skew-Hermitian");
  ControlOperator op;
  op.id = std::move(id);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != Complex{0.0, 0.0}) op.edges.push_back({i, j, m(i, j)});
  op.matrix = std::move(m);
  return op;
}

CMatrix annihilation(int levels) {
  CMatrix a = CMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix position(int levels) {
  const CMatrix a = annihilation(levels);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

namespace {

std::vector<ControlOperator> oscillator_ops(const SystemModel& m) {
  const int osc = m.osc_levels();
  CMatrix drift = CMatrix::Zero(osc, osc);
  for (int n = 0; n < osc; ++n) drift(n, n) = -kI * m.drift.omega_m * (n + 0.5);
  std::vector<ControlOperator> ops;
  ops.push_back(ControlOperator::from_matrix("A", drift));
  ops.push_back(ControlOperator::from_matrix("B", -kI * position(osc)));
  return ops;
}

std::vector<ControlOperator> spin_oscillator_ops(const SystemModel& m) {
  const int osc = m.osc_levels();
  const Index dim = m.dim();
  auto idx = [&](Spin s, int n) { return canonical_index(m, SpinHOState{s, n}); };

  // Carrier: i * coupling(n, n) on |down,n>-|up,n> (imaginary symmetric blocks).
  // Sidebands: -i * coupling(n_down, n_up), real antisymmetric blocks.
  std::vector<Edge> carrier, red, blue;
  for (int n = 0; n < osc; ++n) carrier.push_back({idx(Spin::Down, n), idx(Spin::Up, n), kI * coupling(n, n, m.eta)});
  for (int n = 1; n < osc; ++n)
    red.push_back({idx(Spin::Up, n - 1), idx(Spin::Down, n), -kI * coupling(n, n - 1, m.eta)});
  for (int n = 0; n + 1 < osc; ++n)
    blue.push_back({idx(Spin::Down, n), idx(Spin::Up, n + 1), -kI * coupling(n, n + 1, m.eta)});

  std::vector<ControlOperator> ops;
  if (m.scheme == "carrier+red") {
    ops.push_back(ControlOperator::from_edges("carrier", dim, std::move(carrier)));
    ops.push_back(ControlOperator::from_edges("red", dim, std::move(red)));
  } else {
    ops.push_back(ControlOperator::from_edges("red", dim, std::move(red)));
    ops.push_back(ControlOperator::from_edges("blue", dim, std::move(blue)));
  }
  return ops;
}

std::vector<ControlOperator> nlevel_ops(const SystemModel& m) {
  const int osc = m.osc_levels();
  const int levels = m.levels;
  const Index dim = m.dim();
  auto idx = [&](int k, int n) { return canonical_index(m, NLevelState{k, n}); };

  std::vector<ControlOperator> ops;
  for (int k = 1; k < levels; ++k) {
    std::vector<Edge> edges;
    for (int n = 0; n < osc; ++n) edges.push_back({idx(k, n), idx(k + 1, n), kI});
    ops.push_back(ControlOperator::from_edges("c" + std::to_string(k), dim, std::move(edges)));
  }
  const int ladder_k = m.scheme == "scheme-a" ? 1 : 2;
  std::vector<Edge> ladder;
  for (int n = 1; n < osc; ++n)
    ladder.push_back({idx(levels, n - 1), idx(ladder_k, n), -kI * coupling(n, n - 1, m.eta)});
  ops.push_back(ControlOperator::from_edges("r", dim, std::move(ladder)));
  return ops;
}

std::vector<ControlOperator> electron_ops(const SystemModel& m) {
  const int osc = m.osc_levels();
  const Index dim = m.dim();
  auto idx = [&](int n, int l, Spin s) { return canonical_index(m, ElectronState{n, l, s}); };

  // Unit S, A, C strengths; ladder factors sqrt(l+1) and sqrt(n) as in X_A, X_C.
  std::vector<Edge> s, sa, sc;
  for (int l = 0; l < osc; ++l)
    for (int n = 0; n < osc; ++n) {
      s.push_back({idx(n, l, Spin::Down), idx(n, l, Spin::Up), kI});
      if (l + 1 < osc)
        sa.push_back({idx(n, l, Spin::Down), idx(n, l + 1, Spin::Up), kI * std::sqrt(l + 1.0)});
      if (n >= 1)
        sc.push_back({idx(n, l, Spin::Down), idx(n - 1, l, Spin::Up), kI * std::sqrt(static_cast<double>(n))});
    }
  std::vector<ControlOperator> ops;
  ops.push_back(ControlOperator::from_edges("s", dim, std::move(s)));
  ops.push_back(ControlOperator::from_edges("sa", dim, std::move(sa)));
  ops.push_back(ControlOperator::from_edges("sc", dim, std::move(sc)));
  return ops;
}

std::vector<ControlOperator> block_ops(const SystemModel& m) {
  const Index dim = m.dim();
  // B0 = [[0, 1], [-1, 0]] blocks; B is offset by one with a 1x1 zero in the corner.
  std::vector<Edge> a, b;
  for (Index k = 0; k + 1 < dim; k += 2) a.push_back({k, k + 1, 1.0});
  for (Index k = 1; k + 1 < dim; k += 2) b.push_back({k, k + 1, 1.0});
  std::vector<ControlOperator> ops;
  ops.push_back(ControlOperator::from_edges("A", dim, std::move(a)));
  ops.push_back(ControlOperator::from_edges("B", dim, std::move(b)));
  return ops;
}

}  // namespace

std::vector<ControlOperator> build_operators(const SystemModel& model) {
  const SystemModel m = validated(model);
  if (m.osc_levels() < 2) throw ValidationError("truncation keeps fewer than 2 levels");
  switch (m.family) {
    case Family::HarmonicOscillator: return oscillator_ops(m);
    case Family::SpinOscillator: return spin_oscillator_ops(m);
    case Family::NLevelOscillator: return nlevel_ops(m);
    case Family::SpinTwoOscillators: return electron_ops(m);
    case Family::BlockExample: return block_ops(m);
  }
  return {};
}

}  // namespace fincon
