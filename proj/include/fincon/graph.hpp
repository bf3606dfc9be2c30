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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fincon/models.hpp"

namespace fincon {

struct GraphEdge {
  Index i = 0;
  Index j = 0;
  std::string op;
  double weight = 0.0;  // |coupling|
};

/// Vertices are basis states; one edge per nonzero strict-upper entry of each operator.
struct TransferGraph {
  Index vertex_count = 0;
  std::vector<GraphEdge> edges;

  /// Neighbours of every vertex, ascending, parallel edges merged.
  std::vector<std::vector<Index>> adjacency() const;
};

TransferGraph build_transfer_graph(const std::vector<ControlOperator>& ops);

/// nullopt when every vertex has degree <= 1 in the operator's own edge set,
/// otherwise the first vertex of degree >= 2.
std::optional<Index> check_matching(const ControlOperator& op);

enum class VerdictKind { FinitelyControllable, Disconnected, CyclicObstruction, OperatorNotMatching };

std::string_view to_string(VerdictKind k);

struct PeelStep {
  Index vertex = 0;
  std::optional<Index> parent;  // empty for the root
  std::string op;               // operator owning the (vertex, parent) edge
};

/// Constructive evidence for finite controllability. The root is the pass
/// state; `partner` is set when the root is not a leaf and H_1 is the edge
/// {root, partner}. The peel order lists every vertex, each a leaf of the
/// residual tree at its turn, and ends at the root.
struct Certificate {
  Index root = 0;
  std::optional<Index> partner;
  std::vector<PeelStep> peel_order;
};

struct Components {
  std::vector<std::vector<Index>> parts;  // each ascending, ordered by smallest vertex
};

struct CycleWitness {
  std::vector<Index> vertices;  // closed walk without the repeated start
};

struct MatchingWitness {
  std::string op;
  Index vertex = 0;
};

using Evidence = std::variant<Certificate, Components, CycleWitness, MatchingWitness>;

struct ControllabilityVerdict {
  Evidence evidence;

  VerdictKind kind() const { return static_cast<VerdictKind>(evidence.index()); }
  bool finitely_controllable() const { return kind() == VerdictKind::FinitelyControllable; }
  const Certificate& certificate() const;  // throws DomainError unless FinitelyControllable
};

/// Sufficient-condition check: (i) every operator is a matching, (ii) the union
/// graph is connected, (iii) the union graph is a tree. Checked in that order.
/// The root is the canonical ground state of the model.
ControllabilityVerdict fct_verdict(const SystemModel& model, const std::vector<ControlOperator>& ops);

/// Same decision with an explicit root vertex, for operator sets that do not
/// come from a model (e.g. restricted to one component).
ControllabilityVerdict fct_verdict(const std::vector<ControlOperator>& ops, Index root);

/// Operators restricted to the span of `vertices` (taken in ascending order).
std::vector<ControlOperator> restrict_operators(const std::vector<ControlOperator>& ops,
                                                std::vector<Index> vertices);

}  // namespace fincon
