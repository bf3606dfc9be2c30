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

#include "fincon/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "fincon/error.hpp"

namespace fincon {

namespace {

// Adjacency with the owning operator of each (merged) edge; first operator wins.
struct Adjacency {
  std::vector<std::vector<Index>> nbrs;
  std::map<std::pair<Index, Index>, std::string> owner;

  explicit Adjacency(const TransferGraph& g) : nbrs(static_cast<std::size_t>(g.vertex_count)) {
    for (const auto& e : g.edges) {
      auto key = std::minmax(e.i, e.j);
      if (owner.emplace(std::pair{key.first, key.second}, e.op).second) {
        nbrs[static_cast<std::size_t>(e.i)].push_back(e.j);
        nbrs[static_cast<std::size_t>(e.j)].push_back(e.i);
      }
    }
    for (auto& v : nbrs) std::sort(v.begin(), v.end());
  }

  const std::string& op_of(Index a, Index b) const { return owner.at(std::minmax(a, b)); }
};

std::vector<std::vector<Index>> components_of(const Adjacency& adj) {
  const auto n = adj.nbrs.size();
  std::vector<int> label(n, -1);
  std::vector<std::vector<Index>> parts;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(parts.size());
    parts.emplace_back();
    std::deque<Index> queue{static_cast<Index>(s)};
    label[s] = id;
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      parts.back().push_back(v);
      for (Index w : adj.nbrs[static_cast<std::size_t>(v)])
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = id;
          queue.push_back(w);
        }
    }
    std::sort(parts.back().begin(), parts.back().end());
  }
  return parts;
}

// First back edge of a depth-first traversal from `start`, neighbours ascending.
std::optional<std::vector<Index>> first_cycle(const Adjacency& adj, Index start) {
  const auto n = adj.nbrs.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Index> parent(n, -1);
  struct Frame {
    Index v;
    std::size_t next;
  };
  std::vector<Frame> stack{{start, 0}};
  state[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nb = adj.nbrs[static_cast<std::size_t>(f.v)];
    if (f.next == nb.size()) {
      state[static_cast<std::size_t>(f.v)] = 2;
      stack.pop_back();
      continue;
    }
    const Index w = nb[f.next++];
    if (w == parent[static_cast<std::size_t>(f.v)]) continue;
    if (state[static_cast<std::size_t>(w)] == 1) {
      std::vector<Index> cycle;
      for (Index u = f.v; u != w; u = parent[static_cast<std::size_t>(u)]) cycle.push_back(u);
      cycle.push_back(w);
      std::reverse(cycle.begin(), cycle.end());
      return cycle;
    }
    if (state[static_cast<std::size_t>(w)] == 0) {
      parent[static_cast<std::size_t>(w)] = f.v;
      state[static_cast<std::size_t>(w)] = 1;
      stack.push_back({w, 0});
    }
  }
  return std::nullopt;
}

Certificate peel_certificate(const Adjacency& adj, Index root) {
  const auto n = adj.nbrs.size();
  std::vector<Index> dist(n, -1), parent(n, -1);
  std::deque<Index> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (Index w : adj.nbrs[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        parent[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
  }

  std::vector<Index> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = static_cast<Index>(k);
  // Farthest first; ties broken by the larger index.
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const auto da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
    return da != db ? da > db : a > b;
  });

  Certificate cert;
  cert.root = root;
  const auto& root_nbrs = adj.nbrs[static_cast<std::size_t>(root)];
  if (root_nbrs.size() >= 2) cert.partner = root_nbrs.front();
  for (Index v : order) {
    PeelStep step;
    step.vertex = v;
    if (v != root) {
      step.parent = parent[static_cast<std::size_t>(v)];
      step.op = adj.op_of(v, *step.parent);
    }
    cert.peel_order.push_back(std::move(step));
  }
  return cert;
}

}  // namespace

std::vector<std::vector<Index>> TransferGraph::adjacency() const { return Adjacency(*this).nbrs; }

TransferGraph build_transfer_graph(const std::vector<ControlOperator>& ops) {
  TransferGraph g;
  if (ops.empty()) return g;
  g.vertex_count = ops.front().dim();
  std::set<std::tuple<Index, Index, std::string>> seen;
  for (const auto& op : ops) {
    if (op.dim() != g.vertex_count) {
      std::ostringstream os;
      os << "build_transfer_graph: operator '" << op.id << "' has dimension " << op.dim() << ", expected "
         << g.vertex_count;
      throw ValidationError(os.str());
    }
    for (const auto& e : op.edges) {
      if (e.i == e.j) continue;
      if (!seen.emplace(e.i, e.j, op.id).second) continue;
      g.edges.push_back({e.i, e.j, op.id, std::abs(e.coupling)});
    }
  }
  return g;
}

std::optional<Index> check_matching(const ControlOperator& op) {
  std::vector<int> degree(static_cast<std::size_t>(op.dim()), 0);
  for (const auto& e : op.edges) {
    ++degree[static_cast<std::size_t>(e.i)];
    ++degree[static_cast<std::size_t>(e.j)];
  }
  for (std::size_t v = 0; v < degree.size(); ++v)
    if (degree[v] >= 2) return static_cast<Index>(v);
  return std::nullopt;
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::FinitelyControllable: return "FinitelyControllable";
    case VerdictKind::Disconnected: return "Disconnected";
    case VerdictKind::CyclicObstruction: return "CyclicObstruction";
    case VerdictKind::OperatorNotMatching: return "OperatorNotMatching";
  }
  return "?";
}

const Certificate& ControllabilityVerdict::certificate() const {
  if (const auto* c = std::get_if<Certificate>(&evidence)) return *c;
  throw DomainError("system is not finitely controllable (" + std::string(to_string(kind())) + ")");
}

ControllabilityVerdict fct_verdict(const std::vector<ControlOperator>& ops, Index root) {
  if (ops.empty()) throw ValidationError("fct_verdict: no operators");
  const TransferGraph g = build_transfer_graph(ops);
  if (root < 0 || root >= g.vertex_count) throw ValidationError("fct_verdict: root out of range");

  for (const auto& op : ops)
    if (auto v = check_matching(op)) return {MatchingWitness{op.id, *v}};

  const Adjacency adj(g);
  auto parts = components_of(adj);
  if (parts.size() > 1) return {Components{std::move(parts)}};

  if (auto cycle = first_cycle(adj, root)) return {CycleWitness{std::move(*cycle)}};

  return {peel_certificate(adj, root)};
}

ControllabilityVerdict fct_verdict(const SystemModel& model, const std::vector<ControlOperator>& ops) {
  const SystemModel m = validated(model);
  for (const auto& op : ops)
    if (op.dim() != m.dim())
      throw ValidationError("fct_verdict: operator '" + op.id + "' does not match the model dimension");
  return fct_verdict(ops, canonical_index(m, basis_state(m, 0)));
}

std::vector<ControlOperator> restrict_operators(const std::vector<ControlOperator>& ops,
                                                std::vector<Index> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  const auto k = static_cast<Index>(vertices.size());
  std::vector<ControlOperator> out;
  for (const auto& op : ops) {
    CMatrix sub(k, k);
    for (Index r = 0; r < k; ++r)
      for (Index c = 0; c < k; ++c) sub(r, c) = op.matrix(vertices[static_cast<std::size_t>(r)],
                                                           vertices[static_cast<std::size_t>(c)]);
    out.push_back(ControlOperator::from_matrix(op.id, std::move(sub)));
  }
  return out;
}

}  // namespace fincon
