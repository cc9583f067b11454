// Copyright 2026 The BellForge Authors
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


#include "bellforge/converters.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "bellforge/optimizer.hpp"

namespace bellforge {

void PdbsParams::validate() const {
  if (!(t_h >= 0.0 && t_h <= 1.0) || !(t_v >= 0.0 && t_v <= 1.0)) {
    throw std::invalid_argument("PDBS transmittances must lie in [0, 1]");
  }
}

Circuit c4_converter(const PdbsParams& p, C4Layout layout) {
  p.validate();
  Circuit c;
  c.spatial_modes = 4;
  const element::Pdbs attenuate0{p.t_h, p.t_v, 0, 2};
  const element::Pdbs attenuate1{p.t_h, p.t_v, 1, 3};
  const element::Pdbs central{p.t_h, p.t_v, 0, 1};
  if (layout == C4Layout::AttenuateFirst) {
    c.add(attenuate0).add(attenuate1);
    c.add(element::PauliX{0}).add(element::PauliX{1});
    c.add(central);
    c.add(element::PauliX{0}).add(element::PauliX{1});
    c.add(element::PauliZ{0}).add(element::PauliZ{1});
  } else {
    c.add(central);
    c.add(element::PauliX{0}).add(element::PauliX{1});
    c.add(attenuate0).add(attenuate1);
    c.add(element::PauliX{0}).add(element::PauliX{1});
  }
  return c;
}

ClosedForm c4_closed_form(const PdbsParams& p, const DetectorModel& d) {
  p.validate();
  const double h = p.t_h, v = p.t_v;
  const double radicand = h * h + 2.0 * h * v + v * v - 6.0 * h * h * v -
                          6.0 * h * v * v + 12.0 * h * h * v * v;
  ClosedForm out;
  out.p_suc = d.product() * radicand / 4.0;
  if (radicand > 0.0) {
    out.fidelity = std::min(
        1.0, std::abs(h + 2.0 * h * v - v) / (2.0 * std::sqrt(radicand)));
  }
  return out;
}

Circuit ghz_converter() {
  Circuit c;
  c.add(element::Pbs{0, 1}).add(element::PauliZ{0});
  return c;
}

Circuit bell_rewire_converter(BellRewire target) {
  Circuit c;
  if (target == BellRewire::Pairs13_24) {
    c.add(element::Swap{0, 1});
    return c;
  }
  c.add(element::Pbs{0, 1}).add(element::PauliZ{0});
  c.add(element::Hadamard{0}).add(element::Hadamard{1});
  c.add(element::Pbs{0, 1}).add(element::PauliZ{0});
  return c;
}

Circuit chi_from_c4_converter() {
  Circuit c;
  c.add(element::Hadamard{0}).add(element::PauliZ{1}).add(element::Hadamard{1});
  c.add(element::Pbs{0, 1});
  c.add(element::Hadamard{0}).add(element::PauliZ{1}).add(element::Hadamard{1});
  return c;
}

/******************************** Sensitivity *********************************/

SensitivityPoint sensitivity_point(const PdbsParams& p, const DetectorModel& d) {
  const ClosedForm cf = c4_closed_form(p, d);
  const ConversionOutcome sim =
      simulate(c4_converter(p), target_state(Target::C4), d);
  SensitivityPoint pt;
  pt.t_h = p.t_h;
  pt.t_v = p.t_v;
  pt.eta = d.eta;
  pt.eta_prime = d.eta_prime;
  pt.p_closed = cf.p_suc;
  pt.p_sim = sim.p_suc;
  pt.fidelity_closed = cf.fidelity;
  pt.fidelity_sim = sim.fidelity;
  return pt;
}

namespace {

std::vector<double> axis(GridRange r, double step) {
  if (!(r.lo >= 0.0 && r.hi <= 1.0 && r.lo <= r.hi)) {
    throw std::invalid_argument("grid range must satisfy 0 <= lo <= hi <= 1");
  }
  const int n = static_cast<int>(std::floor((r.hi - r.lo) / step + 1e-9));
  std::vector<double> out;
  for (int k = 0; k <= n; ++k) out.push_back(std::min(r.hi, r.lo + k * step));
  return out;
}

}  // namespace

std::vector<SensitivityPoint> sensitivity_grid(
    GridRange t_h, GridRange t_v, double step, const DetectorModel& d,
    int threads) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("grid step must be positive");
  }
  const std::vector<double> hs = axis(t_h, step);
  const std::vector<double> vs = axis(t_v, step);
  const int total = static_cast<int>(hs.size() * vs.size());
  std::vector<SensitivityPoint> out(total);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < total; i = next++) {
      out[i] = sensitivity_point({hs[i / vs.size()], vs[i % vs.size()]}, d);
    }
  };
  const int workers = std::min(resolve_thread_count(threads), total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

/********************************* Composite **********************************/

CompositeScheme composite_scheme(std::string_view name) {
  const CompositeStage klm{"KLM CZ on nodes 2,3", Rational(1, 16), 2};
  CompositeScheme s;
  s.name = std::string(name);
  if (name == "D4_via_KLM") {
    s.stages = {klm, {"C4 to D4(2) converter", Rational(3, 10), 0}};
  } else if (name == "Chi_via_KLM") {
    s.stages = {klm, {"C4 to chi converter", Rational(1, 2), 0}};
  } else if (name == "W4_via_fusion") {
    s.stages = {{"W3 seed with one ancilla", Rational(3, 20), 1},
                {"W3 to W4 expansion", Rational(4, 15), 0}};
  } else if (name == "KLM_C4") {
    s.stages = {klm};
  } else if (name == "KLM_3CZ") {
    s.stages = {klm, klm, klm};
  } else {
    throw std::invalid_argument(
        "unknown composite scheme '" + std::string(name) + "'");
  }
  for (const auto& st : s.stages) {
    s.total_probability *= st.probability;
    s.total_ancillas += st.ancillas;
  }
  return s;
}

double dicke_hwp_theta_plus() {
  return 0.5 * std::asin(std::sqrt((5.0 + std::sqrt(5.0)) / 10.0));
}

double dicke_hwp_theta_minus() {
  return 0.5 * std::asin(std::sqrt((5.0 - std::sqrt(5.0)) / 10.0));
}

Rational table1_value(Target t) {
  switch (t) {
    case Target::C4:
      return {1, 9};
    case Target::GHZ4:
      return {1, 2};
    case Target::BellPairs_13_24:
      return {1};
    case Target::BellPairs_14_23:
      return {1, 4};
    case Target::W4:
    case Target::D4_2:
    case Target::Chi:
      return {0};
  }
  throw std::invalid_argument("unknown target");
}

std::optional<NamedConverter> named_converter(Target t) {
  switch (t) {
    case Target::C4:
      return NamedConverter{"c4_converter", c4_converter(), make_bell_pairs(4)};
    case Target::GHZ4:
      return NamedConverter{"ghz_converter", ghz_converter(),
                            make_bell_pairs(2)};
    case Target::BellPairs_13_24:
      return NamedConverter{"bell_rewire_13_24",
                            bell_rewire_converter(BellRewire::Pairs13_24),
                            make_bell_pairs(2)};
    case Target::BellPairs_14_23:
      return NamedConverter{"bell_rewire_14_23",
                            bell_rewire_converter(BellRewire::Pairs14_23),
                            make_bell_pairs(2)};
    default:
      return std::nullopt;
  }
}

}  // namespace bellforge
