/*
 * Copyright 2026 The stpbn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stpbn/dual.hpp"
#include "stpbn/logic_dsl.hpp"
#include "stpbn/logical_matrix.hpp"
#include "stpbn/structure_vector.hpp"

namespace stpbn {

/// x(t+1) = L u(t) x(t), y(t) = E x(t), with u ordered before x.
class BcnModel {
 public:
  BcnModel(unsigned k, LogicalMatrix transition, LogicalMatrix output);

  /// Compiles a parsed network; it must declare at least one output.
  static BcnModel from_network(const NetworkModel& network);

  unsigned radix() const noexcept { return k_; }
  unsigned states() const noexcept { return n_; }
  unsigned controls() const noexcept { return m_; }
  unsigned outputs() const noexcept { return p_; }
  Index state_count() const noexcept { return l_.rows(); }
  Index control_count() const noexcept { return l_.cols() / l_.rows(); }

  const LogicalMatrix& transition() const noexcept { return l_; }
  const LogicalMatrix& output() const noexcept { return e_; }

  /// M_i = L δ_{k^m}^i, for 1-based control value i.
  LogicalMatrix transition_for(Index control) const;
  /// Structure vector of output y_j, 1-based.
  StructureVector output_function(std::size_t j) const;

 private:
  unsigned k_;
  unsigned n_ = 0;
  unsigned m_ = 0;
  unsigned p_ = 0;
  LogicalMatrix l_;
  LogicalMatrix e_;
};

struct CisResult {
  /// Seeds first (deduplicated, in order), then BFS by generation, control
  /// value and parent position.
  std::vector<StructureVector> members;
  /// Rounds of V_{k+1} = V_k ∪ V_k·M_1 ∪ ... until nothing new appears.
  std::size_t iterations = 0;
};

/// z(t+1) = H_{u(t)} z(t), y(t) = F z(t), with z = G x.
struct BcnRealization {
  std::vector<StructureVector> members;
  /// Member position of each output y_j.
  std::vector<std::size_t> output_members;
  LogicalMatrix g;
  std::vector<LogicalMatrix> h;
  LogicalMatrix f;
};

struct SimulationTrace {
  std::vector<Index> states;
  std::vector<Index> outputs;
};

/// Smallest control-invariant subspace containing `seeds`.
CisResult smallest_cis(std::span<const StructureVector> seeds, const BcnModel& model,
                       std::size_t cap = std::size_t{1} << 12);

/// Minimum realization seeded with the outputs, followed by `extra_seeds`.
BcnRealization bcn_min_realization(const BcnModel& model,
                                   std::span<const StructureVector> extra_seeds = {},
                                   const RealizationOptions& options = {});

/// horizon + 1 states and outputs; controls[t] drives step t.
SimulationTrace simulate_bcn(const BcnModel& model, Index x0, std::span<const Index> controls,
                             std::size_t horizon);

/// Same contract for a realization started at z0.
SimulationTrace simulate_realization(const BcnRealization& real, Index z0,
                                     std::span<const Index> controls, std::size_t horizon);

/// One input/output channel of a distributed realization.
struct Channel {
  /// 0-based control variables left free.
  std::vector<std::size_t> controls;
  /// 0-based outputs observed.
  std::vector<std::size_t> outputs;
  /// Value of every control variable (free ones are ignored).
  std::vector<std::uint8_t> frozen;
};

/// The model seen through one channel: free controls only, chosen outputs.
BcnModel restrict_channel(const BcnModel& model, const Channel& channel);

/// Minimum realization per channel. Channels run in parallel.
std::vector<BcnRealization> distributed_realization(const BcnModel& model,
                                                    std::span<const Channel> channels,
                                                    const RealizationOptions& options = {});

}  // namespace stpbn
