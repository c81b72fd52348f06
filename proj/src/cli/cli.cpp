// Copyright 2026 The qbat Authors
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

#include "qbat/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qbat/acceptance.hpp"
#include "qbat/adiabatic.hpp"
#include "qbat/errors.hpp"
#include "qbat/model.hpp"
#include "qbat/protocols.hpp"
#include "qbat/table.hpp"

namespace qbat {
namespace {

constexpr const char* kDefaultConfig = "qbat.json";

SystemSpec system_of(const RunConfig& cfg) {
  SystemSpec s{cfg.omega, cfg.j_coupling, QubitLayout::cells(1)};
  s.validate();
  return s;
}

std::string params_note(const RunConfig& cfg) {
  return fmt::format("omega = {} hbar omega, J = {} hbar J, hbar = 1; basis big-endian (B1, B2, A)",
                     format_number(cfg.omega), format_number(cfg.j_coupling));
}

// --- subcommand bodies ---------------------------------------------------------

struct DischargeArgs {
  std::string bell;
  std::string gate = "none";
  int qubit = 1;
  int samples = 129;
};

Table discharge(const RunConfig& cfg, const DischargeArgs& a) {
  const SystemSpec spec = system_of(cfg);
  const HamiltonianSet hs = hamiltonians(spec);
  const Operator p_hat = ec_operator(hs.h0_hub, hs.h_charging);
  const BellLabel label = BellLabel::parse(a.bell);
  PureState psi = bell_cell_state(label);
  if (a.gate != "none") {
    if (a.qubit != 1 && a.qubit != 2) throw ValidationError("qubit must be 1 or 2");
    SwitchGate g;
    if (a.gate == "half") {
      g = a.qubit == 1 ? SwitchGate::HalfOnQubit1 : SwitchGate::HalfOnQubit2;
    } else if (a.gate == "full") {
      g = a.qubit == 1 ? SwitchGate::FullOnQubit1 : SwitchGate::FullOnQubit2;
    } else {
      throw ValidationError("gate must be none, half or full; got '" + a.gate + "'");
    }
    psi = switch_gate(g, psi, spec);
  }
  const double tau_d = discharge_time(spec);
  const TimeSeries ts = sample_trajectory(hs.h_charging, psi, 2.0 * tau_d, a.samples, hs, p_hat);

  Table t;
  t.command = fmt::format("discharge bell={} gate={} qubit={}", label.str(), a.gate, a.qubit);
  t.notes = {params_note(cfg), fmt::format("E0 = 2 hbar omega; tau_d = pi/(4 sqrt2 J) = {} / J",
                                           format_number(tau_d * cfg.j_coupling))};
  t.columns = {"t_J", "charge_over_E0", "ec_hbar_omega_J"};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    t.add_row({ts.times[k] * cfg.j_coupling, ts.charge[k] / full_charge(spec), ts.ec[k] / (cfg.omega * cfg.j_coupling)});
  }
  return t;
}

Table trap_check(const RunConfig& cfg, double tol) {
  const SystemSpec spec = system_of(cfg);
  const HamiltonianSet hs = hamiltonians(spec);
  Table t;
  t.command = fmt::format("trap-check tol={}", format_number(tol));
  t.notes = {params_note(cfg)};
  t.columns = {"state", "is_h_eigenstate", "h_eigenvalue_hbar_J", "ec_hbar_omega_J", "p_residual_hbar_omega_J", "trapped"};
  auto row = [&](const std::string& name, const PureState& psi) {
    const TrapReport r = trapping_check(hs.h_charging, hs, psi, tol);
    const double wj = cfg.omega * cfg.j_coupling;
    t.add_row({name, r.is_h_eigenstate, r.h_eigenvalue / cfg.j_coupling, r.ec_value / wj, r.p_residual / wj, r.trapped});
  };
  for (const char* l : {"00", "01", "10", "11"}) row(std::string("beta_") + l + "|0>", bell_cell_state(BellLabel::parse(l)));
  row("|000>", PureState::basis("000"));
  return t;
}

Table trap_scan(const RunConfig& cfg, int samples, double tol, bool unrestricted) {
  const SystemSpec spec = system_of(cfg);
  ScanConfig sc;
  sc.n_random = samples;
  sc.seed = cfg.seed;
  sc.distance_tol = tol;
  sc.unrestricted = unrestricted;
  const UniquenessReport r = trapping_uniqueness_scan(sc, spec);
  Table t;
  t.command = fmt::format("trap-scan samples={} tol={} seed={}", samples, format_number(tol), cfg.seed);
  t.notes = {params_note(cfg),
             fmt::format("constraint solution: trace distance to beta_11 = {}, available-energy residual = {} hbar omega, "
                         "max |P| = {} hbar omega J",
                         format_number(r.solution_distance), format_number(r.solution_available),
                         format_number(r.solution_max_ec)),
             fmt::format("condition tolerance = {}", format_number(r.condition_tol))};
  t.columns = {"family", "samples", "pass_available", "pass_ec", "pass_both", "counterexamples", "max_passing_distance"};
  auto row = [&](const std::string& name, const ScanStats& s) {
    t.add_row({name, static_cast<long long>(s.samples), static_cast<long long>(s.pass_available),
               static_cast<long long>(s.pass_ec), static_cast<long long>(s.pass_both),
               static_cast<long long>(s.counterexamples), s.max_passing_distance});
  };
  row("restricted", r.restricted);
  if (r.unrestricted) row("unrestricted", *r.unrestricted);
  return t;
}

Table separable(const RunConfig& cfg, int grid) {
  const SystemSpec spec = system_of(cfg);
  const SeparableSurface s = separable_sweep(grid, spec, 64, cfg.seed);
  Table t;
  t.command = fmt::format("separable grid={}", grid);
  t.notes = {params_note(cfg),
             fmt::format("theta-optimized (theta1 = theta2); max {} E0 at beta1 = {}, beta2 = {} ({} grid point(s))",
                         format_number(s.max_ratio), format_number(s.argmax_beta1), format_number(s.argmax_beta2),
                         s.points_at_max),
             fmt::format("simulation cross-check on {} points: max deviation {} E0", s.n_simulated,
                         format_number(s.max_sim_deviation))};
  t.columns = {"beta1", "beta2", "charge_over_E0"};
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) t.add_row({s.betas[i], s.betas[j], s.ratio[static_cast<std::size_t>(i) * grid + j]});
  }
  return t;
}

Table single_particle(const RunConfig& cfg, int samples) {
  const SystemSpec spec = system_of(cfg);
  const double tau_sp = single_particle_transfer_time(spec);
  Table t;
  t.command = fmt::format("single-particle samples={}", samples);
  t.notes = {params_note(cfg), fmt::format("tau_sp = pi/(4J) = {} / J; tau_sp / tau_d = {}",
                                           format_number(tau_sp * cfg.j_coupling),
                                           format_number(tau_sp / discharge_time(spec)))};
  t.columns = {"t_J", "charge_hbar_omega", "closed_form_hbar_omega"};
  if (samples < 2) throw ValidationError("samples must be at least 2");
  for (int k = 0; k < samples; ++k) {
    const double time = 2.0 * tau_sp * k / (samples - 1);
    t.add_row({time * cfg.j_coupling, single_particle_charge_simulated(time, spec) / cfg.omega,
               single_particle_charge(time, spec) / cfg.omega});
  }
  return t;
}

Table ncell(const RunConfig& cfg, const std::string& plan_text) {
  const SystemSpec spec = system_of(cfg);
  const NCellPlan plan = NCellPlan::parse(plan_text);
  const NCellResult r = ncell_plan_energy(plan, spec);
  Table t;
  t.command = "ncell plan=" + plan_text;
  t.notes = {params_note(cfg),
             fmt::format("energy quantum E_q = E0/2 = {} hbar omega; total {} hbar omega = {} E_q; max |<P>| of held "
                         "or released cells over [0, tau_d] = {} hbar omega J",
                         format_number(r.quantum / cfg.omega), format_number(r.total_energy / cfg.omega),
                         format_number(r.total_energy / r.quantum),
                         format_number(r.max_abs_ec / (cfg.omega * cfg.j_coupling)))};
  t.columns = {"cell", "action", "energy_hbar_omega", "energy_over_Eq"};
  for (int c = 0; c < plan.n_cells(); ++c) {
    t.add_row({static_cast<long long>(c), to_string(plan.actions[c]), r.per_cell[c] / cfg.omega, r.per_cell[c] / r.quantum});
  }
  t.add_row({static_cast<long long>(plan.n_cells()), std::string("total"), r.total_energy / cfg.omega,
             r.total_energy / r.quantum});
  return t;
}

AdiabaticSpec adiabatic_spec(const RunConfig& cfg, double jtau, const std::string& schedule, int steps) {
  AdiabaticSpec spec;
  spec.j_coupling = cfg.j_coupling;
  spec.tau = jtau / cfg.j_coupling;
  spec.schedule = parse_schedule(schedule);
  spec.stepping.steps_per_unit_jt = steps;
  spec.validate();
  return spec;
}

Table adiabatic(const RunConfig& cfg, double jtau, const std::string& schedule, int samples, int steps) {
  system_of(cfg);
  const AdiabaticSpec spec = adiabatic_spec(cfg, jtau, schedule, steps);
  const TimeSeries ts = adiabatic_trajectory(spec, cfg.omega, samples);
  const DischargeReport r = run_discharge(spec, cfg.omega);
  Table t;
  t.command = fmt::format("adiabatic jtau={} schedule={} steps_per_jt={}", format_number(jtau), schedule, steps);
  t.notes = {params_note(cfg),
             fmt::format("final charge {} C_max (C_max = 2 hbar omega); fidelity to |001> {}; leakage to |110> {}",
                         format_number(r.final_charge / (2.0 * cfg.omega)), format_number(r.fidelity_target),
                         format_number(r.leakage_forbidden)),
             fmt::format("min odd-sector gap {} hbar J; EC tail (s >= 0.9) {} hbar omega J; parity drift {}",
                         format_number(r.min_gap_sector / cfg.j_coupling),
                         format_number(r.ec_tail / (cfg.omega * cfg.j_coupling)), format_number(r.parity_drift))};
  t.columns = {"s", "t_J", "charge_over_Cmax", "ec_hbar_omega_J", "fidelity_target", "leakage_forbidden", "parity"};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    t.add_row({ts.times[k] / spec.tau, ts.times[k] * cfg.j_coupling, ts.charge[k] / (2.0 * cfg.omega),
               ts.ec[k] / (cfg.omega * cfg.j_coupling), ts.channels.at("fidelity_target")[k],
               ts.channels.at("leakage_forbidden")[k], ts.channels.at("parity")[k]});
  }
  return t;
}

Table sweep(const RunConfig& cfg, double from, double to, int points, int steps) {
  system_of(cfg);
  if (points < 1) throw ValidationError("points must be at least 1");
  if (!(from >= 0.0) || !(to >= from)) throw ValidationError("need 0 <= from <= to");
  std::vector<double> jtaus;
  for (int k = 0; k < points; ++k) jtaus.push_back(points == 1 ? from : from + (to - from) * k / (points - 1));
  AdiabaticSpec templ;
  templ.j_coupling = cfg.j_coupling;
  templ.stepping.steps_per_unit_jt = steps;
  templ.stepping.validate();
  const std::vector<SweepRow> rows = sweep_tau(templ, jtaus, cfg.omega);
  Table t;
  t.command = fmt::format("sweep-tau from={} to={} points={} steps_per_jt={}", format_number(from), format_number(to),
                          points, steps);
  t.notes = {params_note(cfg), "C_max = 2 hbar omega; tau_J = J tau (0 is the sudden limit)"};
  t.columns = {"tau_J", "schedule", "fidelity_target", "leakage_forbidden", "charge_over_Cmax"};
  for (const SweepRow& r : rows) {
    t.add_row({r.jtau, to_string(r.schedule), r.fidelity_target, r.leakage_forbidden, r.charge_ratio});
  }
  return t;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("omega must be positive, got " + format_number(omega));
  if (!(j_coupling > 0.0) || !std::isfinite(j_coupling)) {
    throw ValidationError("j_coupling must be positive, got " + format_number(j_coupling));
  }
  parse_format(format);
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config file '" + path + "' must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    auto wrong_type = [&] { return ValidationError("config file '" + path + "': field '" + key + "' has the wrong type"); };
    if (key == "omega" || key == "j_coupling") {
      if (!value.is_number()) throw wrong_type();
      (key == "omega" ? base.omega : base.j_coupling) = value.get<double>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw wrong_type();
      base.seed = value.get<unsigned long long>();
    } else if (key == "format" || key == "output") {
      if (!value.is_string()) throw wrong_type();
      (key == "format" ? base.format : base.output) = value.get<std::string>();
    } else {
      throw ValidationError("config file '" + path + "': unknown field '" + key + "'");
    }
  }
  return base;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-current simulations of Bell-state quantum batteries.", "qbat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> omega, j_coupling;
  std::optional<unsigned long long> seed;
  std::optional<std::string> format, output, config;
  app.add_option("--omega", omega, "qubit splitting omega (> 0)");
  app.add_option("--j", j_coupling, "XY coupling J (> 0)");
  app.add_option("--seed", seed, "seed for random sampling");
  app.add_option("--format", format, "csv or json");
  app.add_option("--output", output, "write data to this file instead of standard output");
  app.add_option("--config", config, "JSON config file (default: ./qbat.json when present)");

  DischargeArgs dis;
  auto* c_dis = app.add_subcommand("discharge", "charge and EC of a Bell cell over [0, 2 tau_d]");
  c_dis->add_option("--bell", dis.bell, "Bell label nm: 00, 01, 10 or 11")->required();
  c_dis->add_option("--gate", dis.gate, "switch gate applied first: none, half or full");
  c_dis->add_option("--qubit", dis.qubit, "battery qubit the gate acts on: 1 or 2");
  c_dis->add_option("--samples", dis.samples, "number of time samples (>= 2)");

  double trap_tol = 1e-10;
  auto* c_tc = app.add_subcommand("trap-check", "trapping test for the Bell cells and |000>");
  c_tc->add_option("--tol", trap_tol, "residual tolerance");

  int scan_samples = 10000;
  double scan_tol = 1e-6;
  bool scan_restricted_only = false;
  auto* c_ts = app.add_subcommand("trap-scan", "uniqueness scan of the trapped battery state");
  c_ts->add_option("--samples", scan_samples, "random states per family (>= 1)");
  c_ts->add_option("--tol", scan_tol, "trace-distance tolerance to beta_11");
  c_ts->add_flag("--restricted-only", scan_restricted_only, "skip the unrestricted scan");

  int grid = 101;
  auto* c_sep = app.add_subcommand("separable", "separable-state charge surface at tau_d");
  c_sep->add_option("--grid", grid, "grid points per axis (>= 2)");

  int sp_samples = 129;
  auto* c_sp = app.add_subcommand("single-particle", "one-qubit battery baseline over [0, 2 tau_sp]");
  c_sp->add_option("--samples", sp_samples, "number of time samples (>= 2)");

  std::string plan;
  auto* c_nc = app.add_subcommand("ncell", "energy released by an N-cell plan");
  c_nc->add_option("--plan", plan, "comma list of h (hold), H (half), f (full)")->required();

  double jtau = 100.0;
  std::string schedule = "linear";
  int ad_samples = 101;
  int steps = SteppingConfig{}.steps_per_unit_jt;
  auto* c_ad = app.add_subcommand("adiabatic", "adiabatic stable discharge trajectory");
  c_ad->add_option("--jtau", jtau, "total time J tau (> 0)")->required();
  c_ad->add_option("--schedule", schedule, "linear, sin2 or smoothstep");
  c_ad->add_option("--samples", ad_samples, "number of samples (>= 2)");
  c_ad->add_option("--steps-per-jt", steps, "integrator steps per unit J t (>= 16)");

  double from = 1.0, to = 100.0;
  int points = 20;
  auto* c_sw = app.add_subcommand("sweep-tau", "final charge versus J tau for all schedules");
  c_sw->add_option("--from", from, "first J tau (>= 0)")->required();
  c_sw->add_option("--to", to, "last J tau")->required();
  c_sw->add_option("--points", points, "number of J tau values (>= 1)")->required();
  c_sw->add_option("--steps-per-jt", steps, "integrator steps per unit J t (>= 16)");

  std::string only;
  auto* c_st = app.add_subcommand("selftest", "run the acceptance criteria");
  c_st->add_option("--only", only, "comma list of criterion ids, e.g. AC-1,AC-3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    if (config) {
      cfg = load_run_config(*config, cfg);
    } else if (std::filesystem::exists(kDefaultConfig)) {
      cfg = load_run_config(kDefaultConfig, cfg);
    }
    if (omega) cfg.omega = *omega;
    if (j_coupling) cfg.j_coupling = *j_coupling;
    if (seed) cfg.seed = *seed;
    if (format) cfg.format = *format;
    if (output) cfg.output = *output;
    cfg.validate();
    const OutputFormat fmt_kind = parse_format(cfg.format);

    if (c_st->parsed()) {
      AcceptanceOptions opts;
      opts.only = split_list(only);
      opts.omega = cfg.omega;
      opts.j_coupling = cfg.j_coupling;
      opts.seed = cfg.seed;
      const auto results = run_acceptance(opts);
      std::ostringstream text;
      bool all = true;
      if (fmt_kind == OutputFormat::Csv) {
        all = print_acceptance(text, results);
      } else {
        Table t;
        t.command = "selftest";
        t.columns = {"id", "title", "passed", "detail"};
        for (const auto& r : results) {
          t.add_row({r.id, r.title, r.passed, r.detail});
          all = all && r.passed;
        }
        write_json(text, t);
      }
      if (cfg.output.empty()) {
        out << text.str();
      } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!(f << text.str())) throw std::runtime_error("cannot write '" + cfg.output + "'");
      }
      return all ? kExitOk : kExitInternal;
    }

    Table table;
    if (c_dis->parsed()) {
      table = discharge(cfg, dis);
    } else if (c_tc->parsed()) {
      table = trap_check(cfg, trap_tol);
    } else if (c_ts->parsed()) {
      table = trap_scan(cfg, scan_samples, scan_tol, !scan_restricted_only);
    } else if (c_sep->parsed()) {
      table = separable(cfg, grid);
    } else if (c_sp->parsed()) {
      table = single_particle(cfg, sp_samples);
    } else if (c_nc->parsed()) {
      table = ncell(cfg, plan);
    } else if (c_ad->parsed()) {
      table = adiabatic(cfg, jtau, schedule, ad_samples, steps);
    } else {
      table = sweep(cfg, from, to, points, steps);
    }

    if (cfg.output.empty()) {
      write_table(out, table, fmt_kind);
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open '" + cfg.output + "' for writing");
      write_table(f, table, fmt_kind);
      if (!f) throw std::runtime_error("failed writing '" + cfg.output + "'");
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace qbat
