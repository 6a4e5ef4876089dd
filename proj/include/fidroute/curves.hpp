// Copyright 2026 The fidroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fidroute/grid.hpp"

namespace fidroute {

/// Entanglement distribution model: one pair per time slot along the whole
/// path (single), or many pairs simultaneously at a common rate (flow).
enum class Model { single, flow };

const char* to_string(Model model);
Model model_from_string(const std::string& name);

/// Photonic channel parameters of one link.
struct LinkParams {
  double epsilon;  ///< collection efficiency, in (0, 1)
  double p_dark;   ///< dark-count probability, in [0, 1)
  double beta;     ///< fidelity-ceiling offset, in [0, 1)
  double n_e;      ///< relative number of ebits, in (0, 1]

  /// Throws DomainError when a field is outside its range.
  void validate() const;
};

// Werner-parameter values sampled on a shared capacity grid. Values are
// immutable after construction and always lie in [0, 1]. Monotone-repaired
// curves are non-increasing in capacity, i.e. non-decreasing in grid index.
class FidelityCurve {
 public:
  FidelityCurve(GridPtr grid, std::vector<double> values);

  static FidelityCurve zero(GridPtr grid);
  static FidelityCurve unit(GridPtr grid);

  const CapacityGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double value(std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

  bool is_zero() const;
  bool nonincreasing_in_capacity() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// A link's repaired curve together with, per grid point, the index of the
/// raw-curve point actually delivering that value. Below a dark-count
/// plateau edge the operating index stays pinned at the plateau capacity.
struct LinkCurve {
  FidelityCurve curve;
  std::vector<std::uint32_t> operating_index;
};

// Per-node non-dominated envelope: per grid point, the best Werner value
// found so far and the id of the path achieving it (-1 where no path does).
class EnvelopeEntry {
 public:
  explicit EnvelopeEntry(GridPtr grid);

  const CapacityGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double gamma(std::size_t k) const { return gamma_[k]; }
  const std::vector<double>& gammas() const { return gamma_; }
  std::int32_t path_id(std::size_t k) const { return path_id_[k]; }
  const std::vector<std::int32_t>& path_ids() const { return path_id_; }

  /// True when the candidate exceeds the envelope at some grid point.
  bool improved_by(const FidelityCurve& candidate) const;

  /// Pointwise max; the incumbent keeps exact ties. Returns whether any
  /// point changed.
  bool merge(const FidelityCurve& candidate, std::int32_t candidate_path_id);

  FidelityCurve as_curve() const;

 private:
  GridPtr grid_;
  std::vector<double> gamma_;
  std::vector<std::int32_t> path_id_;
};

// --- channel model, Werner algebra ---

/// Success probability of generating one ebit at emission probability p_em.
double success_probability(double p_em, double epsilon);

/// Analytic inverse of success_probability; p must stay clear of the 1/2
/// asymptote (guard band 1e-9).
double emission_for_probability(double p, double epsilon);

/// Raw ebit fidelity at emission probability p_em; not clamped, may fall
/// below 1/4 (or 0) for extreme inputs.
double link_fidelity(double p_em, const LinkParams& params);

inline double werner_from_fidelity(double fidelity) {
  return (4.0 * fidelity - 1.0) / 3.0;
}
inline double fidelity_from_werner(double gamma) {
  return (3.0 * gamma + 1.0) / 4.0;
}
/// Werner parameter clamped to [0, 1] for curve storage; fidelities below
/// 1/4 carry no routable entanglement and map to 0.
double werner_clamped(double fidelity);

// --- curve construction ---

/// Pre-repair curve of one link: gamma at each grid capacity, 0 where the
/// required generation probability c/n_e reaches the 1/2 cap.
FidelityCurve build_link_curve_raw(const LinkParams& params, GridPtr grid);

/// Monotone-repaired link curve with per-point operating capacities.
LinkCurve build_link_curve(const LinkParams& params, GridPtr grid);

/// output(c) = max over c' >= c of input(c'); idempotent, pointwise >= input.
FidelityCurve monotone_repair(const FidelityCurve& curve);

/// monotone_repair with, per grid point, the index of the input point whose
/// value is reported; ties resolve to the largest capacity.
LinkCurve repair_with_operating_points(const FidelityCurve& curve);

// --- concatenation ---

/// Flow-model path extension: pointwise product (all links run at the common
/// rate).
FidelityCurve concat_flow(const FidelityCurve& a, const FidelityCurve& b);

/// Single-model path extension: (max, *)-convolution on grid indices,
///   out_k = max { a_i * b_j : i + j + m = k },
/// the index shift m encoding the product of two (1/2)-anchored capacities.
/// Inputs must be monotone-repaired; the output then is as well. Capacities
/// whose best split would fall below the grid floor are unreachable (0).
FidelityCurve concat_single(const FidelityCurve& a, const FidelityCurve& b);

/// Split recovery: per output index k, the index i of the a-operand in the
/// maximizing pair (i, k - m - i); untouched where out_k = 0.
FidelityCurve concat_single_with_argmax(const FidelityCurve& a,
                                        const FidelityCurve& b,
                                        std::vector<std::uint32_t>& argmax_a);

/// Model-dispatched extension of a path curve by a link curve.
FidelityCurve concat(const FidelityCurve& a, const FidelityCurve& b,
                     Model model);

/// True iff a >= b at every grid point and the curves differ somewhere.
bool dominates(const FidelityCurve& a, const FidelityCurve& b);

/// Copy-and-merge form of EnvelopeEntry::merge.
EnvelopeEntry merge_envelope(const EnvelopeEntry& entry,
                             const FidelityCurve& candidate,
                             std::int32_t candidate_path_id);

// --- serialization ---

std::string curve_to_json(const FidelityCurve& curve);
FidelityCurve curve_from_json(const std::string& text);

namespace detail {
void require_same_grid(const CapacityGrid& a, const CapacityGrid& b,
                       const char* op);
}

}  // namespace fidroute
