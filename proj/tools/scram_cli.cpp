// Command-line front end: per, capacity-table, degree-dist, cycles, cod-map.
// Exit codes: 0 success, 2 configuration/usage error, 3 runtime error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scram/access.hpp"
#include "scram/capacity.hpp"
#include "scram/cycles.hpp"
#include "scram/graph.hpp"
#include "scram/ldpc.hpp"
#include "scram/sim.hpp"

namespace {

using nlohmann::json;
using namespace scram;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string hex_digest(std::uint64_t d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

InterleaverBank load_bank(const std::string& path, const AccessParams& params) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open bank file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("bank file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("bank file must be a [set][subgraph][i] array");
  InterleaverBank bank;
  bank.n_sets = params.n_sets();
  bank.n_subgraphs = params.n_subgraphs();
  bank.symbols_per_user = params.symbols_per_user;
  bank.pi = j.get<std::vector<std::vector<std::vector<int>>>>();
  bank.validate_shape(params);
  return bank;
}

// Paper-claimed partner count under the ratio reading of N_sets; reported
// next to the measured value, not asserted.
double partner_formula(const AccessParams& params) {
  const double subs = params.n_subgraphs();
  return (subs - 1.0) * (static_cast<double>(params.n_users) / subs);
}

int cmd_capacity_table(const std::vector<int>& users, int symbols, int slots,
                       const std::string& spb_path, const std::string& out_path,
                       const std::string& format, std::uint64_t seed) {
  std::map<double, double> spb;
  if (!spb_path.empty()) {
    std::ifstream in(spb_path);
    if (!in) throw std::invalid_argument("cannot open SPB reference file: " + spb_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("eta", 0) == 0) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ss(line);
      double eta = 0.0, db = 0.0;
      if (ss >> eta >> db) spb[eta] = db;
    }
  }
  const auto rows = capacity_table(symbols, slots, users, spb.empty() ? nullptr : &spb);

  json cfg;
  cfg["users"] = users;
  cfg["symbols_per_user"] = symbols;
  cfg["total_slots"] = slots;
  cfg["spb_reference"] = spb_path;
  const std::uint64_t digest = fnv1a64(cfg.dump());

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (format == "json") {
    json j;
    j["meta"] = {{"tool", "scram capacity-table"},
                 {"version", kToolVersion},
                 {"master_seed", seed},
                 {"config_digest", hex_digest(digest)},
                 {"eta_convention", "transmitted symbols per slot (N_u*n/N_s)"},
                 {"ra_solver", "damped fixed point, tol 1e-10; bisection gap 1e-3 dB"},
                 {"config", cfg}};
    json rows_json = json::array();
    for (const auto& row : rows) {
      json r = {{"n_users", row.n_users},
                {"eta", row.eta},
                {"ebn0_ra_db", row.ebn0_ra_db},
                {"ebn0_ua_db", row.ebn0_ua_db},
                {"delta_ra_ua_db", row.delta_ra_ua_db},
                {"p_empty", row.p_empty},
                {"ra_solver_iterations", row.ra_solver_iterations}};
      if (row.ebn0_spb_db) {
        r["ebn0_spb_db"] = *row.ebn0_spb_db;
        r["delta_spb_ua_db"] = *row.delta_spb_ua_db;
      }
      rows_json.push_back(r);
    }
    j["rows"] = rows_json;
    out << j.dump(2) << '\n';
  } else {
    out << "# scram capacity-table v" << kToolVersion << '\n';
    out << "# master_seed=" << seed << '\n';
    out << "# config_digest=" << hex_digest(digest) << '\n';
    out << "# eta_convention=symbols_per_slot\n";
    out << "# ra_solver=damped fixed point, tol 1e-10; bisection gap 1e-3 dB\n";
    out << "n_users,eta,ebn0_ra_db,ebn0_ua_db,delta_ra_ua_db,p_empty,ra_solver_iterations,"
           "ebn0_spb_db,delta_spb_ua_db\n";
    for (const auto& row : rows) {
      out << row.n_users << ',' << fmt_double(row.eta) << ',' << fmt_double(row.ebn0_ra_db) << ','
          << fmt_double(row.ebn0_ua_db) << ',' << fmt_double(row.delta_ra_ua_db) << ','
          << fmt_double(row.p_empty) << ',' << row.ra_solver_iterations << ',';
      if (row.ebn0_spb_db) {
        out << fmt_double(*row.ebn0_spb_db) << ',' << fmt_double(*row.delta_spb_ua_db);
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_cod_map(const AccessParams& base, const std::string& bank_path,
                const std::string& scheme_name_str, const std::string& out_path,
                const std::string& format) {
  AccessParams params = base;
  params.scheme = scheme_from_name(scheme_name_str);
  params.validate();

  std::optional<InterleaverBank> bank;
  if (!bank_path.empty()) {
    if (params.scheme != Scheme::kCod) {
      throw std::invalid_argument("--bank only applies to the cod scheme");
    }
    bank = load_bank(bank_path, params);
  }
  Rng rng = Rng::derive(params.master_seed, {static_cast<std::uint64_t>(params.scheme), 0, 0});
  const SlotAssignment assignment =
      make_assignment(params, &rng, bank ? &*bank : nullptr);

  long long partner_sum = 0;
  for (int u = 1; u <= params.n_users; ++u) {
    partner_sum += static_cast<long long>(collision_partners(assignment, u).size());
  }
  const double measured_partners =
      params.n_users > 0 ? static_cast<double>(partner_sum) / params.n_users : 0.0;

  json cfg;
  cfg["n_users"] = params.n_users;
  cfg["symbols_per_user"] = params.symbols_per_user;
  cfg["total_slots"] = params.total_slots;
  cfg["scheme"] = scheme_name(params.scheme);
  cfg["master_seed"] = params.master_seed;
  cfg["bank"] = bank_path;
  const std::uint64_t digest = fnv1a64(cfg.dump());

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (format == "json") {
    json j;
    j["meta"] = {{"tool", "scram cod-map"},
                 {"version", kToolVersion},
                 {"master_seed", params.master_seed},
                 {"config_digest", hex_digest(digest)},
                 {"mean_collision_partners", measured_partners},
                 {"partner_count_formula", partner_formula(params)},
                 {"config", cfg}};
    json rows = json::array();
    for (int u = 1; u <= params.n_users; ++u) {
      for (int i = 1; i <= params.symbols_per_user; ++i) {
        rows.push_back({{"user", u},
                        {"symbol_index", i},
                        {"slot_index", assignment.slot_of[u - 1][i - 1]},
                        {"variable_node_index", i + (u - 1) * params.symbols_per_user}});
      }
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
  } else {
    out << "# scram cod-map v" << kToolVersion << '\n';
    out << "# master_seed=" << params.master_seed << '\n';
    out << "# config_digest=" << hex_digest(digest) << '\n';
    out << "# mean_collision_partners=" << fmt_double(measured_partners)
        << " partner_count_formula=" << fmt_double(partner_formula(params)) << '\n';
    out << "user,symbol_index,slot_index,variable_node_index\n";
    for (int u = 1; u <= params.n_users; ++u) {
      for (int i = 1; i <= params.symbols_per_user; ++i) {
        out << u << ',' << i << ',' << assignment.slot_of[u - 1][i - 1] << ','
            << i + (u - 1) * params.symbols_per_user << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_cycles(const std::string& alist_path, const LdpcCode& code, AccessParams base,
               const std::vector<std::string>& scheme_names, const std::string& bank_path,
               const std::string& out_path, const std::string& format) {
  base.symbols_per_user = code.n;

  json cfg;
  cfg["alist"] = alist_path;
  cfg["n_users"] = base.n_users;
  cfg["total_slots"] = base.total_slots;
  cfg["schemes"] = scheme_names;
  cfg["master_seed"] = base.master_seed;
  const std::uint64_t digest = fnv1a64(cfg.dump());

  struct Row {
    std::string label;
    CycleProfile profile;
    std::optional<long long> global8;
    std::optional<bool> c6_ok, c8_ok;
  };
  std::vector<Row> rows;
  rows.push_back({"ldpc_code", cycle_profile(code.h), std::nullopt, std::nullopt, std::nullopt});

  const std::vector<const LdpcCode*> codes(base.n_users, &code);
  for (const auto& name : scheme_names) {
    AccessParams params = base;
    params.scheme = scheme_from_name(name);
    params.validate();
    std::optional<InterleaverBank> bank;
    if (!bank_path.empty() && params.scheme == Scheme::kCod) bank = load_bank(bank_path, params);
    Rng rng = Rng::derive(params.master_seed, {static_cast<std::uint64_t>(params.scheme), 0, 0});
    const SlotAssignment assignment = make_assignment(params, &rng, bank ? &*bank : nullptr);
    const ScramCycleReport report = scram_cycle_report(codes, assignment, params.total_slots);
    rows.push_back({name, report.joint, report.global8, report.c6_identity_ok,
                    report.c8_identity_ok});
  }

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (format == "json") {
    json j;
    j["meta"] = {{"tool", "scram cycles"},
                 {"version", kToolVersion},
                 {"master_seed", base.master_seed},
                 {"config_digest", hex_digest(digest)},
                 {"config", cfg}};
    json rows_json = json::array();
    for (const auto& row : rows) {
      json r;
      r["label"] = row.label;
      r["girth"] = row.profile.girth ? json(*row.profile.girth) : json();
      r["c4"] = row.profile.c4;
      r["c6"] = row.profile.c6;
      r["c8"] = row.profile.c8;
      if (row.global8) {
        r["global8"] = *row.global8;
        r["c6_identity_ok"] = *row.c6_ok;
        r["c8_identity_ok"] = *row.c8_ok;
      }
      rows_json.push_back(r);
    }
    j["rows"] = rows_json;
    out << j.dump(2) << '\n';
  } else {
    out << "# scram cycles v" << kToolVersion << '\n';
    out << "# master_seed=" << base.master_seed << '\n';
    out << "# config_digest=" << hex_digest(digest) << '\n';
    out << "label,girth,c4,c6,c8,global8,c6_identity_ok,c8_identity_ok\n";
    for (const auto& row : rows) {
      out << row.label << ',';
      if (row.profile.girth) {
        out << *row.profile.girth;
      } else {
        out << "acyclic";
      }
      out << ',' << row.profile.c4 << ',' << row.profile.c6 << ',' << row.profile.c8 << ',';
      if (row.global8) {
        out << *row.global8 << ',' << (*row.c6_ok ? 1 : 0) << ',' << (*row.c8_ok ? 1 : 0);
      } else {
        out << ",,";
      }
      out << '\n';
    }
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"SCRAM simulation laboratory"};
  app.require_subcommand(1);

  // --- per ---
  auto* per = app.add_subcommand("per", "Monte Carlo PER/BER sweep");
  std::string per_config;
  per->add_option("--config", per_config, "JSON config file")->required();
  std::optional<std::uint64_t> per_seed;
  per->add_option("--seed", per_seed, "override master seed");
  std::optional<std::string> per_out, per_format;
  per->add_option("--out", per_out, "output path (default from config; - for stdout)");
  per->add_option("--format", per_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  std::optional<int> per_frames, per_workers, per_iters;
  per->add_option("--frames", per_frames, "override frames per grid point");
  per->add_option("--workers", per_workers, "worker thread count");
  per->add_option("--max-iters", per_iters, "override decoder iterations");

  // --- capacity-table ---
  auto* cap = app.add_subcommand("capacity-table", "Analytic RA/UA capacity bounds");
  std::vector<int> cap_users{2, 4, 8, 10, 12, 16};
  int cap_symbols = 4320;
  int cap_slots = 8640;
  std::string cap_spb, cap_out, cap_format = "csv";
  std::uint64_t cap_seed = 1;
  cap->add_option("--users", cap_users, "user counts");
  cap->add_option("--symbols", cap_symbols, "symbols per user (n)");
  cap->add_option("--slots", cap_slots, "total slots (N_s)");
  cap->add_option("--spb", cap_spb, "optional SPB reference CSV (eta, ebn0_db)");
  cap->add_option("--out", cap_out, "output path (- for stdout)");
  cap->add_option("--format", cap_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cap->add_option("--seed", cap_seed, "seed recorded in the header");

  // --- degree-dist ---
  auto* deg = app.add_subcommand("degree-dist", "Slot degree distribution vs binomial");
  std::string deg_config;
  deg->add_option("--config", deg_config, "JSON config file")->required();
  std::optional<std::uint64_t> deg_seed;
  deg->add_option("--seed", deg_seed, "override master seed");
  std::optional<std::string> deg_out, deg_format;
  deg->add_option("--out", deg_out, "output path (- for stdout)");
  deg->add_option("--format", deg_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  std::optional<int> deg_frames;
  deg->add_option("--frames", deg_frames, "override frame count");

  // --- cycles ---
  auto* cyc = app.add_subcommand("cycles", "Cycle profile and global 8-cycle report");
  std::string cyc_alist, cyc_bank, cyc_out, cyc_format = "csv";
  int cyc_users = 4;
  int cyc_slots = 0;
  std::uint64_t cyc_seed = 1;
  std::vector<std::string> cyc_schemes{"cod", "sequential", "interleaved", "random"};
  cyc->add_option("--alist", cyc_alist, "parity-check matrix (alist)")->required();
  cyc->add_option("--users", cyc_users, "number of users");
  cyc->add_option("--slots", cyc_slots, "total slots (default 2n)");
  cyc->add_option("--schemes", cyc_schemes, "schemes to analyze");
  cyc->add_option("--seed", cyc_seed, "master seed");
  cyc->add_option("--bank", cyc_bank, "interleaver bank JSON for cod");
  cyc->add_option("--out", cyc_out, "output path (- for stdout)");
  cyc->add_option("--format", cyc_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // --- cod-map ---
  auto* map = app.add_subcommand("cod-map", "Dump a slot assignment as CSV/JSON");
  int map_users = 4;
  int map_symbols = 6;
  int map_slots = 12;
  std::string map_scheme = "cod", map_bank, map_out, map_format = "csv";
  std::uint64_t map_seed = 1;
  map->add_option("--users", map_users, "number of users");
  map->add_option("--symbols", map_symbols, "symbols per user (n)");
  map->add_option("--slots", map_slots, "total slots (N_s)");
  map->add_option("--scheme", map_scheme, "random|sequential|interleaved|cod");
  map->add_option("--seed", map_seed, "master seed");
  map->add_option("--bank", map_bank, "interleaver bank JSON (cod only)");
  map->add_option("--out", map_out, "output path (- for stdout)");
  map->add_option("--format", map_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << e.what() << '\n' << app.help() << '\n';
    return kExitConfig;
  }

  if (per->parsed() || deg->parsed()) {
    const bool is_per = per->parsed();
    SimConfig config = load_config(is_per ? per_config : deg_config);
    const auto& seed = is_per ? per_seed : deg_seed;
    const auto& out_opt = is_per ? per_out : deg_out;
    const auto& format_opt = is_per ? per_format : deg_format;
    const auto& frames_opt = is_per ? per_frames : deg_frames;
    if (seed) config.master_seed = *seed;
    if (out_opt) config.out_path = *out_opt;
    if (format_opt) config.format = *format_opt;
    if (frames_opt) config.frames = *frames_opt;
    if (is_per && per_workers) config.workers = *per_workers;
    if (is_per && per_iters) config.max_iters = *per_iters;
    config.validate();

    std::ofstream file;
    std::ostream& out = open_output(file, config.out_path);
    if (is_per) {
      const PerSweepResult result = run_per_sweep(config);
      if (config.format == "json") {
        write_per_sweep_json(result, out);
      } else {
        write_per_sweep_csv(result, out);
      }
    } else {
      const DegreeDistResult result = run_degree_dist(config);
      if (config.format == "json") {
        write_degree_dist_json(result, out);
      } else {
        write_degree_dist_csv(result, out);
      }
    }
    return kExitOk;
  }
  if (cap->parsed()) {
    return cmd_capacity_table(cap_users, cap_symbols, cap_slots, cap_spb, cap_out, cap_format,
                              cap_seed);
  }
  if (cyc->parsed()) {
    const LdpcCode code = load_alist_file(cyc_alist);
    AccessParams base;
    base.n_users = cyc_users;
    base.total_slots = cyc_slots == 0 ? 2 * code.n : cyc_slots;
    base.master_seed = cyc_seed;
    return cmd_cycles(cyc_alist, code, base, cyc_schemes, cyc_bank, cyc_out, cyc_format);
  }
  if (map->parsed()) {
    AccessParams base;
    base.n_users = map_users;
    base.symbols_per_user = map_symbols;
    base.total_slots = map_slots;
    base.master_seed = map_seed;
    return cmd_cod_map(base, map_bank, map_scheme, map_out, map_format);
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
