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

#include "fidroute/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fidroute/error.hpp"

namespace fidroute {

namespace {
constexpr double kCapGuard = 1e-9;  // stay clear of the p -> 1/2 asymptote
}

const char* to_string(Model model) {
  return model == Model::single ? "single" : "flow";
}

Model model_from_string(const std::string& name) {
  if (name == "single") return Model::single;
  if (name == "flow") return Model::flow;
  throw ConfigError("unknown distribution model '" + name +
                    "' (expected 'single' or 'flow')");
}

void LinkParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must be in (0,1), got " +
                      std::to_string(epsilon));
  }
  if (!(p_dark >= 0.0 && p_dark < 1.0)) {
    throw DomainError("p_dark must be in [0,1), got " + std::to_string(p_dark));
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw DomainError("beta must be in [0,1), got " + std::to_string(beta));
  }
  if (!(n_e > 0.0 && n_e <= 1.0)) {
    throw DomainError("n_e must be in (0,1], got " + std::to_string(n_e));
  }
}

namespace detail {
void require_same_grid(const CapacityGrid& a, const CapacityGrid& b,
                       const char* op) {
  if (!a.same_shape(b)) {
    throw ConfigError(std::string(op) + ": curves live on different grids (m=" +
                      std::to_string(a.steps_per_octave()) + ",D=" +
                      std::to_string(a.depth_octaves()) + " vs m=" +
                      std::to_string(b.steps_per_octave()) + ",D=" +
                      std::to_string(b.depth_octaves()) + ")");
  }
}
}  // namespace detail

FidelityCurve::FidelityCurve(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw ValidationError("curve has " + std::to_string(values_.size()) +
                          " values for a grid of size " +
                          std::to_string(grid_->size()));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("curve value outside [0,1]: " + std::to_string(v));
    }
  }
}

FidelityCurve FidelityCurve::zero(GridPtr grid) {
  std::vector<double> v(grid->size(), 0.0);
  return FidelityCurve(std::move(grid), std::move(v));
}

FidelityCurve FidelityCurve::unit(GridPtr grid) {
  std::vector<double> v(grid->size(), 1.0);
  return FidelityCurve(std::move(grid), std::move(v));
}

bool FidelityCurve::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

bool FidelityCurve::nonincreasing_in_capacity() const {
  // capacity decreases with index, so values must be non-decreasing in k
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] < values_[k - 1]) return false;
  }
  return true;
}

EnvelopeEntry::EnvelopeEntry(GridPtr grid)
    : grid_(std::move(grid)),
      gamma_(grid_->size(), 0.0),
      path_id_(grid_->size(), -1) {}

bool EnvelopeEntry::improved_by(const FidelityCurve& candidate) const {
  detail::require_same_grid(*grid_, candidate.grid(), "envelope");
  for (std::size_t k = 0; k < gamma_.size(); ++k) {
    if (candidate.value(k) > gamma_[k]) return true;
  }
  return false;
}

bool EnvelopeEntry::merge(const FidelityCurve& candidate,
                          std::int32_t candidate_path_id) {
  detail::require_same_grid(*grid_, candidate.grid(), "envelope");
  bool changed = false;
  for (std::size_t k = 0; k < gamma_.size(); ++k) {
    if (candidate.value(k) > gamma_[k]) {
      gamma_[k] = candidate.value(k);
      path_id_[k] = candidate_path_id;
      changed = true;
    }
  }
  return changed;
}

FidelityCurve EnvelopeEntry::as_curve() const {
  return FidelityCurve(grid_, gamma_);
}

double success_probability(double p_em, double epsilon) {
  if (!(p_em >= 0.0)) {
    throw DomainError("emission probability must be >= 0, got " +
                      std::to_string(p_em));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must be in (0,1), got " +
                      std::to_string(epsilon));
  }
  return (1.0 - std::exp(-p_em * epsilon / 2.0)) / 2.0;
}

double emission_for_probability(double p, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must be in (0,1), got " +
                      std::to_string(epsilon));
  }
  if (!(p >= 0.0)) {
    throw DomainError("success probability must be >= 0, got " +
                      std::to_string(p));
  }
  if (p >= 0.5 - kCapGuard) {
    throw UnreachableError(
        "success probability " + std::to_string(p) +
        " is at or beyond the 1/2 generation cap");
  }
  return -(2.0 / epsilon) * std::log1p(-2.0 * p);
}

double link_fidelity(double p_em, const LinkParams& params) {
  params.validate();
  const double p = success_probability(p_em, params.epsilon);
  double dark_term = 0.0;
  if (params.p_dark > 0.0) {
    if (p == 0.0) {
      throw DomainError(
          "p_em = 0 gives zero success probability; dark-count term diverges");
    }
    dark_term = params.p_dark / p;
  }
  return 0.5 * (1.0 + std::exp(-p_em * (1.0 - params.epsilon))) - dark_term -
         params.beta;
}

double werner_clamped(double fidelity) {
  return std::clamp(werner_from_fidelity(fidelity), 0.0, 1.0);
}

FidelityCurve build_link_curve_raw(const LinkParams& params, GridPtr grid) {
  params.validate();
  std::vector<double> values(grid->size());
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const double p = grid->capacity(k) / params.n_e;
    if (p >= 0.5 - kCapGuard) {
      values[k] = 0.0;  // the generation probability cap is unreachable
      continue;
    }
    const double p_em = emission_for_probability(p, params.epsilon);
    values[k] = werner_clamped(link_fidelity(p_em, params));
  }
  return FidelityCurve(std::move(grid), std::move(values));
}

LinkCurve build_link_curve(const LinkParams& params, GridPtr grid) {
  return repair_with_operating_points(
      build_link_curve_raw(params, std::move(grid)));
}

FidelityCurve monotone_repair(const FidelityCurve& curve) {
  // max over c' >= c is a running max toward smaller capacities, i.e. a
  // prefix max in index order
  std::vector<double> out(curve.values());
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] = std::max(out[k], out[k - 1]);
  }
  return FidelityCurve(curve.grid_ptr(), std::move(out));
}

LinkCurve repair_with_operating_points(const FidelityCurve& curve) {
  std::vector<double> out(curve.values());
  std::vector<std::uint32_t> op(out.size());
  op[0] = 0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k - 1] > out[k]) {
      out[k] = out[k - 1];
      op[k] = op[k - 1];  // plateau: operate at the larger capacity
    } else {
      op[k] = static_cast<std::uint32_t>(k);
    }
  }
  return {FidelityCurve(curve.grid_ptr(), std::move(out)), std::move(op)};
}

FidelityCurve concat_flow(const FidelityCurve& a, const FidelityCurve& b) {
  detail::require_same_grid(a.grid(), b.grid(), "concat_flow");
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = a.value(k) * b.value(k);
  }
  return FidelityCurve(a.grid_ptr(), std::move(out));
}

namespace {

std::size_t first_nonzero(const FidelityCurve& c) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c.value(k) != 0.0) return k;
  }
  return c.size();
}

FidelityCurve convolve(const FidelityCurve& a, const FidelityCurve& b,
                       std::vector<std::uint32_t>* argmax_a) {
  detail::require_same_grid(a.grid(), b.grid(), "concat_single");
  const std::size_t n = a.size();
  const std::size_t m =
      static_cast<std::size_t>(a.grid().steps_per_octave());
  // zero factors never win; skipping them keeps results bit-identical
  const std::size_t fa = first_nonzero(a);
  const std::size_t fb = first_nonzero(b);
  std::vector<double> out(n, 0.0);
  if (argmax_a) argmax_a->assign(n, 0);
  if (fa < n && fb < n) {
    for (std::size_t k = m + fa + fb; k < n; ++k) {
      const std::size_t s = k - m;  // index sum of the pair
      const std::size_t lo = std::max(fa, s >= (n - 1) ? s - (n - 1) : 0);
      const std::size_t hi = s - fb;  // >= lo by the loop bound
      double best = 0.0;
      std::size_t best_i = lo;
      for (std::size_t i = lo; i <= hi; ++i) {
        const double v = a.value(i) * b.value(s - i);
        if (v > best) {
          best = v;
          best_i = i;
        }
      }
      out[k] = best;
      if (argmax_a) (*argmax_a)[k] = static_cast<std::uint32_t>(best_i);
    }
  }
  return FidelityCurve(a.grid_ptr(), std::move(out));
}

}  // namespace

FidelityCurve concat_single(const FidelityCurve& a, const FidelityCurve& b) {
  return convolve(a, b, nullptr);
}

FidelityCurve concat_single_with_argmax(const FidelityCurve& a,
                                        const FidelityCurve& b,
                                        std::vector<std::uint32_t>& argmax_a) {
  return convolve(a, b, &argmax_a);
}

FidelityCurve concat(const FidelityCurve& a, const FidelityCurve& b,
                     Model model) {
  return model == Model::flow ? concat_flow(a, b) : concat_single(a, b);
}

bool dominates(const FidelityCurve& a, const FidelityCurve& b) {
  detail::require_same_grid(a.grid(), b.grid(), "dominates");
  bool distinct = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.value(k) < b.value(k)) return false;
    if (a.value(k) != b.value(k)) distinct = true;
  }
  return distinct;
}

EnvelopeEntry merge_envelope(const EnvelopeEntry& entry,
                             const FidelityCurve& candidate,
                             std::int32_t candidate_path_id) {
  EnvelopeEntry out(entry);
  out.merge(candidate, candidate_path_id);
  return out;
}

std::string curve_to_json(const FidelityCurve& curve) {
  nlohmann::json j;
  j["grid"] = {{"m", curve.grid().steps_per_octave()},
               {"depth", curve.grid().depth_octaves()}};
  j["values"] = curve.values();
  return j.dump();
}

FidelityCurve curve_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("curve JSON: ") + e.what());
  }
  try {
    auto grid = make_grid(j.at("grid").at("m").get<int>(),
                          j.at("grid").at("depth").get<int>());
    return FidelityCurve(std::move(grid),
                         j.at("values").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("curve JSON: ") + e.what());
  }
}

}  // namespace fidroute
