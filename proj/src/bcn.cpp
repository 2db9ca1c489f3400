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

#include "stpbn/bcn.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <string>
#include <unordered_set>

namespace stpbn {

namespace {

unsigned require_log(Index value, unsigned k, const char* what) {
  const int e = exact_log(value, k);
  if (e < 0) {
    throw DimensionError(std::string(what) + " dimension " + std::to_string(value) +
                         " is not a power of " + std::to_string(k));
  }
  return static_cast<unsigned>(e);
}

// Digit `pos` (0 = most significant) of a 1-based index over `width` base-k digits.
inline Index index_digit(Index index, unsigned k, std::size_t width, std::size_t pos) {
  Index rest = index - 1;
  for (std::size_t i = width; i-- > pos + 1;) {
    rest /= k;
  }
  return rest % k;
}

}  // namespace

BcnModel::BcnModel(unsigned k, LogicalMatrix transition, LogicalMatrix output)
    : k_(k), l_(std::move(transition)), e_(std::move(output)) {
  if (k < 2) {
    throw InvalidArgument("radix must be at least 2");
  }
  n_ = require_log(l_.rows(), k, "state");
  if (l_.cols() % l_.rows() != 0) {
    throw DimensionError("L must have k^(m+n) columns");
  }
  m_ = require_log(l_.cols() / l_.rows(), k, "control");
  p_ = require_log(e_.rows(), k, "output");
  if (p_ == 0) {
    throw DimensionError("E must describe at least one output");
  }
  if (e_.cols() != l_.rows()) {
    throw DimensionError("E must have one column per state");
  }
}

BcnModel BcnModel::from_network(const NetworkModel& network) {
  return BcnModel(network.k, network_to_assr(network), network_outputs(network));
}

LogicalMatrix BcnModel::transition_for(Index control) const {
  return column_block(l_, control, l_.rows());
}

StructureVector BcnModel::output_function(std::size_t j) const {
  if (j < 1 || j > p_) {
    throw InvalidArgument("output index " + std::to_string(j) + " outside [1, " +
                          std::to_string(p_) + "]");
  }
  StructureVector out(k_, n_);
  for (Index s = 0; s < e_.cols(); ++s) {
    const Index digit = index_digit(e_.delta()[s], k_, p_, j - 1);
    out.set(s, static_cast<std::uint8_t>(k_ - 1 - digit));
  }
  return out;
}

CisResult smallest_cis(std::span<const StructureVector> seeds, const BcnModel& model,
                       std::size_t cap) {
  std::vector<LogicalMatrix> steps;
  for (Index i = 1; i <= model.control_count(); ++i) {
    steps.push_back(model.transition_for(i));
  }
  CisResult out;
  std::unordered_set<StructureVector, StructureVectorHash> seen;
  auto add = [&](StructureVector v) {
    if (v.radix() != model.radix() || v.size() != model.state_count()) {
      throw DimensionError("seed does not live on the model's state space");
    }
    if (seen.insert(v).second) {
      if (out.members.size() >= cap) {
        throw CapExceeded("control-invariant subspace exceeds " + std::to_string(cap) +
                          " members");
      }
      out.members.push_back(std::move(v));
    }
  };
  for (const auto& s : seeds) {
    add(s);
  }
  std::size_t frontier = 0;
  while (true) {
    ++out.iterations;
    const std::size_t end = out.members.size();
    for (const auto& mi : steps) {
      for (std::size_t idx = frontier; idx < end; ++idx) {
        add(sv_compose(out.members[idx], mi));
      }
    }
    if (out.members.size() == end) {
      break;
    }
    frontier = end;
  }
  return out;
}

BcnRealization bcn_min_realization(const BcnModel& model,
                                   std::span<const StructureVector> extra_seeds,
                                   const RealizationOptions& options) {
  std::vector<StructureVector> seeds;
  for (std::size_t j = 1; j <= model.outputs(); ++j) {
    seeds.push_back(model.output_function(j));
  }
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());

  BcnRealization out;
  out.members = smallest_cis(seeds, model, options.closure_cap).members;
  out.g = stack_functions(out.members, options.coordinate_cap);
  for (Index i = 1; i <= model.control_count(); ++i) {
    out.h.push_back(solve_reduced_dynamics(out.g, model.transition_for(i)));
  }
  for (std::size_t j = 0; j < model.outputs(); ++j) {
    const auto it = std::find(out.members.begin(), out.members.end(), seeds[j]);
    out.output_members.push_back(static_cast<std::size_t>(it - out.members.begin()));
  }

  const unsigned k = model.radix();
  const std::size_t s = out.members.size();
  std::vector<Index> f(out.g.rows());
  std::vector<Index> digits(s);
  for (Index c = 0; c < f.size(); ++c) {
    Index rest = c;
    for (std::size_t i = s; i-- > 0;) {
      digits[i] = rest % k;
      rest /= k;
    }
    Index row = 0;
    for (auto member : out.output_members) {
      row = row * k + digits[member];
    }
    f[c] = row + 1;
  }
  out.f = LogicalMatrix(checked_pow(k, model.outputs()), std::move(f));
  return out;
}

SimulationTrace simulate_bcn(const BcnModel& model, Index x0, std::span<const Index> controls,
                             std::size_t horizon) {
  const Index n = model.state_count();
  if (x0 < 1 || x0 > n) {
    throw InvalidArgument("initial state " + std::to_string(x0) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  if (controls.size() < horizon) {
    throw InvalidArgument("need at least one control value per step");
  }
  SimulationTrace out;
  out.states.push_back(x0);
  out.outputs.push_back(model.output().image(x0));
  for (std::size_t t = 0; t < horizon; ++t) {
    const Index u = controls[t];
    if (u < 1 || u > model.control_count()) {
      throw InvalidArgument("control value " + std::to_string(u) + " outside [1, " +
                            std::to_string(model.control_count()) + "]");
    }
    const Index x = model.transition().image((u - 1) * n + out.states.back());
    out.states.push_back(x);
    out.outputs.push_back(model.output().image(x));
  }
  return out;
}

SimulationTrace simulate_realization(const BcnRealization& real, Index z0,
                                     std::span<const Index> controls, std::size_t horizon) {
  if (z0 < 1 || z0 > real.g.rows()) {
    throw InvalidArgument("initial coordinate outside the realization's range");
  }
  if (controls.size() < horizon) {
    throw InvalidArgument("need at least one control value per step");
  }
  SimulationTrace out;
  out.states.push_back(z0);
  out.outputs.push_back(real.f.image(z0));
  for (std::size_t t = 0; t < horizon; ++t) {
    const Index u = controls[t];
    if (u < 1 || u > real.h.size()) {
      throw InvalidArgument("control value outside the realization's range");
    }
    const Index z = real.h[u - 1].image(out.states.back());
    out.states.push_back(z);
    out.outputs.push_back(real.f.image(z));
  }
  return out;
}

BcnModel restrict_channel(const BcnModel& model, const Channel& channel) {
  const unsigned k = model.radix();
  const std::size_t m = model.controls();
  if (channel.outputs.empty()) {
    throw InvalidArgument("empty channel: no outputs selected");
  }
  if (channel.frozen.size() != m) {
    throw InvalidArgument("channel must give a value for each of the " + std::to_string(m) +
                          " control variables");
  }
  std::vector<bool> free(m, false);
  for (auto c : channel.controls) {
    if (c >= m || free[c]) {
      throw InvalidArgument("channel control " + std::to_string(c + 1) +
                            " is out of range or repeated");
    }
    free[c] = true;
  }
  for (auto v : channel.frozen) {
    if (v >= k) {
      throw InvalidArgument("frozen control value exceeds the radix");
    }
  }

  const Index n = model.state_count();
  const Index reduced = checked_pow(k, channel.controls.size());
  std::vector<Index> delta(checked_mul(reduced, n));
  std::vector<std::uint8_t> values(channel.frozen);
  for (Index u = 0; u < reduced; ++u) {
    Index rest = u;
    for (std::size_t i = channel.controls.size(); i-- > 0;) {
      values[channel.controls[i]] = static_cast<std::uint8_t>(k - 1 - rest % k);
      rest /= k;
    }
    const Index full = state_index(values, k);
    for (Index x = 0; x < n; ++x) {
      delta[u * n + x] = model.transition().delta()[(full - 1) * n + x];
    }
  }

  std::optional<LogicalMatrix> e;
  for (auto j : channel.outputs) {
    if (j >= model.outputs()) {
      throw InvalidArgument("channel output " + std::to_string(j + 1) + " out of range");
    }
    auto mj = model.output_function(j + 1).structure_matrix();
    e = e ? khatri_rao(*e, mj) : std::move(mj);
  }
  return BcnModel(k, LogicalMatrix(n, std::move(delta)), std::move(*e));
}

std::vector<BcnRealization> distributed_realization(const BcnModel& model,
                                                    std::span<const Channel> channels,
                                                    const RealizationOptions& options) {
  std::vector<BcnRealization> out(channels.size());
  std::vector<std::exception_ptr> errors(channels.size());
  const auto count = static_cast<std::int64_t>(channels.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < count; ++c) {
    const auto i = static_cast<std::size_t>(c);
    try {
      out[i] = bcn_min_realization(restrict_channel(model, channels[i]), {}, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

}  // namespace stpbn
