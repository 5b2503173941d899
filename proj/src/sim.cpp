#include "scram/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "scram/capacity.hpp"
#include "scram/channel.hpp"
#include "scram/decoder.hpp"
#include "scram/graph.hpp"

#include "json.hpp"

namespace scram {

namespace {

using nlohmann::json;

// Fixed-format double for byte-stable text output.
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void SimConfig::validate() const {
  if (alist_path.empty() && alist_paths.empty()) {
    throw std::invalid_argument("config field 'alist' is missing");
  }
  if (!alist_paths.empty() && static_cast<int>(alist_paths.size()) != n_users) {
    throw std::invalid_argument("config field 'alists' must list one path per user");
  }
  if (n_users < 0) throw std::invalid_argument("config field 'n_users' must be nonnegative");
  if (total_slots <= 0) throw std::invalid_argument("config field 'total_slots' must be positive");
  if (schemes.empty()) throw std::invalid_argument("config field 'schemes' must be nonempty");
  if (ebn0_grid_db.empty()) throw std::invalid_argument("config field 'ebn0_grid_db' must be nonempty");
  if (frames < 1) throw std::invalid_argument("config field 'frames' must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("config field 'max_iters' must be >= 1");
  if (max_slot_degree < 1 || max_slot_degree > 24) {
    throw std::invalid_argument("config field 'max_slot_degree' must lie in 1..24");
  }
  if (workers < 1) throw std::invalid_argument("config field 'workers' must be >= 1");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("config field 'format' must be csv or json");
  }
}

SimConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  SimConfig c;
  try {
    if (j.contains("alist")) c.alist_path = j.at("alist").get<std::string>();
    if (j.contains("alists")) c.alist_paths = j.at("alists").get<std::vector<std::string>>();
    if (j.contains("n_users")) c.n_users = j.at("n_users").get<int>();
    if (j.contains("total_slots")) c.total_slots = j.at("total_slots").get<int>();
    if (j.contains("schemes")) {
      for (const auto& s : j.at("schemes")) c.schemes.push_back(scheme_from_name(s.get<std::string>()));
    }
    if (j.contains("ebn0_grid_db")) c.ebn0_grid_db = j.at("ebn0_grid_db").get<std::vector<double>>();
    if (j.contains("frames")) c.frames = j.at("frames").get<int>();
    if (j.contains("max_iters")) c.max_iters = j.at("max_iters").get<int>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("early_stop")) c.early_stop = j.at("early_stop").get<bool>();
    if (j.contains("fading")) c.fading = j.at("fading").get<bool>();
    if (j.contains("max_slot_degree")) c.max_slot_degree = j.at("max_slot_degree").get<int>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_canonical_json(const SimConfig& c) {
  json j;
  j["alist"] = c.alist_path;
  j["alists"] = c.alist_paths;
  j["n_users"] = c.n_users;
  j["total_slots"] = c.total_slots;
  json schemes = json::array();
  for (Scheme s : c.schemes) schemes.push_back(scheme_name(s));
  j["schemes"] = schemes;
  j["ebn0_grid_db"] = c.ebn0_grid_db;
  j["frames"] = c.frames;
  j["max_iters"] = c.max_iters;
  j["master_seed"] = c.master_seed;
  j["early_stop"] = c.early_stop;
  j["fading"] = c.fading;
  j["max_slot_degree"] = c.max_slot_degree;
  // out/format/workers deliberately excluded: they change where and how
  // results are written, never what is computed
  return j.dump();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double PerPoint::per() const {
  return frames == 0 ? 0.0
                     : static_cast<double>(packet_errors_pooled) /
                           (static_cast<double>(frames) * packet_errors_per_user.size());
}

double PerPoint::ber() const {
  return info_bits == 0 ? 0.0 : static_cast<double>(bit_errors) / info_bits;
}

double PerPoint::mean_iterations() const {
  return frames == 0 ? 0.0 : static_cast<double>(iterations_sum) / frames;
}

std::pair<double, double> wilson_interval(long long errors, long long trials) {
  if (trials <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (phat + z2n / 2.0) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / denom;
  // zero/full error counts pin the one-sided endpoint exactly
  const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = errors == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

struct LoadedCodes {
  std::vector<LdpcCode> storage;        // distinct codes
  std::vector<const LdpcCode*> codes;   // per user
  std::vector<Encoder> encoder_storage;
  std::vector<const Encoder*> encoders;
  std::uint64_t digest = 0;
};

LoadedCodes load_codes(const SimConfig& config) {
  LoadedCodes lc;
  if (!config.alist_paths.empty()) {
    lc.storage.reserve(config.alist_paths.size());
    std::string all;
    for (const auto& path : config.alist_paths) {
      std::ifstream in(path);
      if (!in) throw std::invalid_argument("cannot open alist file: " + path);
      std::stringstream buf;
      buf << in.rdbuf();
      all += buf.str();
      std::istringstream text(buf.str());
      lc.storage.push_back(load_alist(text));
    }
    lc.digest = fnv1a64(all);
    for (const auto& code : lc.storage) lc.codes.push_back(&code);
  } else {
    std::ifstream in(config.alist_path);
    if (!in) throw std::invalid_argument("cannot open alist file: " + config.alist_path);
    std::stringstream buf;
    buf << in.rdbuf();
    lc.digest = fnv1a64(buf.str());
    std::istringstream text(buf.str());
    lc.storage.push_back(load_alist(text));
    for (int u = 0; u < config.n_users; ++u) lc.codes.push_back(&lc.storage[0]);
  }
  lc.encoder_storage.reserve(lc.storage.size());
  for (const auto& code : lc.storage) lc.encoder_storage.push_back(build_encoder(code));
  for (const LdpcCode* code : lc.codes) {
    const std::size_t idx = code - lc.storage.data();
    lc.encoders.push_back(&lc.encoder_storage[idx]);
  }
  return lc;
}

struct FrameTally {
  std::vector<long long> packet_errors_per_user;
  long long packet_errors = 0;
  long long bit_errors = 0;
  long long iterations = 0;

  void merge(const FrameTally& other) {
    for (std::size_t u = 0; u < packet_errors_per_user.size(); ++u) {
      packet_errors_per_user[u] += other.packet_errors_per_user[u];
    }
    packet_errors += other.packet_errors;
    bit_errors += other.bit_errors;
    iterations += other.iterations;
  }
};

// One Monte Carlo frame. The stream is fully determined by
// (master_seed, scheme id, grid index, frame index); draw order is
// assignment (random scheme only), info bits, fading, noise.
void run_frame(const SimConfig& config, const LoadedCodes& lc, Scheme scheme, int grid_index,
               double sigma2, long long frame_index, const SlotAssignment* fixed_assignment,
               const ThreeLayerGraph* fixed_graph, FrameTally& tally) {
  Rng rng = Rng::derive(config.master_seed,
                        {static_cast<std::uint64_t>(scheme), static_cast<std::uint64_t>(grid_index),
                         static_cast<std::uint64_t>(frame_index)});
  AccessParams params{config.n_users, lc.codes[0]->n, config.total_slots, scheme,
                      config.master_seed};

  SlotAssignment local_assignment;
  ThreeLayerGraph local_graph;
  const SlotAssignment* assignment = fixed_assignment;
  const ThreeLayerGraph* graph = fixed_graph;
  if (scheme == Scheme::kRandom) {
    local_assignment = assign_random(params, rng);
    local_graph = build_graph(lc.codes, local_assignment, config.total_slots);
    assignment = &local_assignment;
    graph = &local_graph;
  }

  std::vector<std::vector<std::uint8_t>> info(config.n_users);
  std::vector<std::vector<double>> symbols(config.n_users);
  for (int u = 0; u < config.n_users; ++u) {
    const int k = lc.codes[u]->k;
    info[u].resize(k);
    for (int j = 0; j < k; ++j) info[u][j] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    const auto cw = lc.encoders[u]->encode(info[u]);
    symbols[u].resize(cw.size());
    for (std::size_t j = 0; j < cw.size(); ++j) symbols[u][j] = cw[j] ? 1.0 : -1.0;
  }

  std::vector<std::vector<double>> fading(config.n_users);
  for (int u = 0; u < config.n_users; ++u) {
    fading[u] = config.fading ? draw_fading(rng, lc.codes[u]->n)
                              : std::vector<double>(lc.codes[u]->n, 1.0);
  }

  const FrameRealization frame = transmit(*assignment, symbols, fading, sigma2, rng);

  DecodeOptions options;
  options.max_iters = config.max_iters;
  options.early_stop = config.early_stop;
  options.max_slot_degree = config.max_slot_degree;
  const DecodeResult result = decode(*graph, lc.codes, lc.encoders, frame, options);

  tally.iterations += result.iterations;
  for (int u = 0; u < config.n_users; ++u) {
    long long mismatches = 0;
    for (std::size_t j = 0; j < info[u].size(); ++j) {
      mismatches += info[u][j] != result.info_bits[u][j];
    }
    tally.bit_errors += mismatches;
    if (mismatches > 0) {
      ++tally.packet_errors;
      ++tally.packet_errors_per_user[u];
    }
  }
}

}  // namespace

PerSweepResult run_per_sweep(const SimConfig& config) {
  config.validate();
  if (config.n_users < 1) throw std::invalid_argument("config field 'n_users' must be >= 1");
  const LoadedCodes lc = load_codes(config);

  PerSweepResult result;
  result.config = config;
  result.config_digest = fnv1a64(config_canonical_json(config));
  result.code_digest = lc.digest;
  long long k_sum = 0;
  for (const LdpcCode* code : lc.codes) k_sum += code->k;
  result.channel_load = static_cast<double>(k_sum) / config.total_slots;
  result.code_dims = {lc.storage[0].n, lc.storage[0].k, lc.storage[0].m};

  const double rate = lc.storage[0].rate();
  for (Scheme scheme : config.schemes) {
    // Deterministic schemes share one assignment and graph across frames.
    SlotAssignment fixed_assignment;
    ThreeLayerGraph fixed_graph;
    const SlotAssignment* assignment_ptr = nullptr;
    const ThreeLayerGraph* graph_ptr = nullptr;
    if (scheme != Scheme::kRandom) {
      AccessParams params{config.n_users, lc.codes[0]->n, config.total_slots, scheme,
                          config.master_seed};
      fixed_assignment = make_assignment(params, nullptr);
      fixed_graph = build_graph(lc.codes, fixed_assignment, config.total_slots);
      assignment_ptr = &fixed_assignment;
      graph_ptr = &fixed_graph;
    }
    for (std::size_t g = 0; g < config.ebn0_grid_db.size(); ++g) {
      const double sigma2 = ebn0_to_sigma2(config.ebn0_grid_db[g], rate);
      const int n_workers = std::max(1, config.workers);
      std::vector<FrameTally> tallies(n_workers);
      for (auto& t : tallies) t.packet_errors_per_user.assign(config.n_users, 0);
      std::exception_ptr first_error;
      std::mutex error_mutex;

      auto work = [&](int w) {
        try {
          for (long long f = w; f < config.frames; f += n_workers) {
            run_frame(config, lc, scheme, static_cast<int>(g), sigma2, f, assignment_ptr,
                      graph_ptr, tallies[w]);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      };
      if (n_workers == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
      }
      if (first_error) std::rethrow_exception(first_error);

      PerPoint point;
      point.scheme = scheme;
      point.ebn0_db = config.ebn0_grid_db[g];
      point.frames = config.frames;
      point.packet_errors_per_user.assign(config.n_users, 0);
      for (const auto& t : tallies) {
        for (int u = 0; u < config.n_users; ++u) {
          point.packet_errors_per_user[u] += t.packet_errors_per_user[u];
        }
        point.packet_errors_pooled += t.packet_errors;
        point.bit_errors += t.bit_errors;
        point.iterations_sum += t.iterations;
      }
      point.info_bits = static_cast<long long>(config.frames) * k_sum;
      result.points.push_back(std::move(point));
    }
  }
  return result;
}

DegreeDistResult run_degree_dist(const SimConfig& config) {
  config.validate();
  const LoadedCodes lc = load_codes(config);
  const int n = lc.storage[0].n;
  const double p = static_cast<double>(n) / config.total_slots;

  DegreeDistResult result;
  result.config = config;
  result.config_digest = fnv1a64(config_canonical_json(config));
  result.symbols_per_user = n;
  result.slots_observed = static_cast<long long>(config.frames) * config.total_slots;

  for (Scheme scheme : config.schemes) {
    AccessParams params{config.n_users, n, config.total_slots, scheme, config.master_seed};
    std::vector<long long> counts(config.n_users + 1, 0);
    if (scheme == Scheme::kRandom) {
      for (long long f = 0; f < config.frames; ++f) {
        Rng rng = Rng::derive(config.master_seed,
                              {static_cast<std::uint64_t>(scheme), 0ULL,
                               static_cast<std::uint64_t>(f)});
        const auto hist = slot_degrees(assign_random(params, rng), config.total_slots);
        for (std::size_t d = 0; d < hist.size(); ++d) counts[d] += hist[d];
      }
    } else {
      const auto hist = slot_degrees(make_assignment(params, nullptr), config.total_slots);
      for (std::size_t d = 0; d < hist.size(); ++d) counts[d] += hist[d] * config.frames;
    }

    DegreeDistResult::PerScheme per_scheme;
    per_scheme.scheme = scheme;
    const double total = static_cast<double>(result.slots_observed);
    for (int d = 0; d <= config.n_users; ++d) {
      DegreeBin bin;
      bin.degree = d;
      bin.count = counts[d];
      bin.empirical = counts[d] / total;
      bin.binomial = degree_pmf(config.n_users, p, d);
      const double sigma = std::sqrt(bin.binomial * (1.0 - bin.binomial) / total);
      bin.z_score = sigma > 0.0 ? (bin.empirical - bin.binomial) / sigma : 0.0;
      per_scheme.bins.push_back(bin);
    }
    result.schemes.push_back(std::move(per_scheme));
  }
  return result;
}

namespace {

void write_header(std::ostream& out, const char* tool, std::uint64_t seed,
                  std::uint64_t config_digest) {
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(config_digest));
  out << "# scram " << tool << " v" << kToolVersion << '\n';
  out << "# master_seed=" << seed << '\n';
  out << "# config_digest=" << digest << '\n';
}

json meta_json(const char* tool, const SimConfig& config, std::uint64_t config_digest) {
  json meta;
  meta["tool"] = std::string("scram ") + tool;
  meta["version"] = kToolVersion;
  meta["master_seed"] = config.master_seed;
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(config_digest));
  meta["config_digest"] = digest;
  meta["config"] = json::parse(config_canonical_json(config));
  return meta;
}

}  // namespace

void write_per_sweep_csv(const PerSweepResult& result, std::ostream& out) {
  write_header(out, "per", result.config.master_seed, result.config_digest);
  char code_digest[32];
  std::snprintf(code_digest, sizeof(code_digest), "%016llx",
                static_cast<unsigned long long>(result.code_digest));
  out << "# code_digest=" << code_digest << '\n';
  out << "# code_n=" << result.code_dims[0] << " code_k=" << result.code_dims[1]
      << " code_m=" << result.code_dims[2] << '\n';
  out << "# channel_load=" << fmt_double(result.channel_load) << '\n';
  out << "scheme,ebn0_db,user,frames,packet_errors,per,per_lo95,per_hi95,bit_errors,info_bits,"
         "ber,mean_iterations\n";
  for (const auto& point : result.points) {
    const long long pooled_trials = point.frames * static_cast<long long>(
                                        point.packet_errors_per_user.size());
    const auto [lo, hi] = wilson_interval(point.packet_errors_pooled, pooled_trials);
    out << scheme_name(point.scheme) << ',' << fmt_double(point.ebn0_db) << ",pooled,"
        << point.frames << ',' << point.packet_errors_pooled << ',' << fmt_double(point.per())
        << ',' << fmt_double(lo) << ',' << fmt_double(hi) << ',' << point.bit_errors << ','
        << point.info_bits << ',' << fmt_double(point.ber()) << ','
        << fmt_double(point.mean_iterations()) << '\n';
    for (std::size_t u = 0; u < point.packet_errors_per_user.size(); ++u) {
      const long long errs = point.packet_errors_per_user[u];
      const auto [ulo, uhi] = wilson_interval(errs, point.frames);
      out << scheme_name(point.scheme) << ',' << fmt_double(point.ebn0_db) << ',' << (u + 1)
          << ',' << point.frames << ',' << errs << ','
          << fmt_double(static_cast<double>(errs) / point.frames) << ',' << fmt_double(ulo) << ','
          << fmt_double(uhi) << ",,,,\n";
    }
  }
}

void write_per_sweep_json(const PerSweepResult& result, std::ostream& out) {
  json j;
  j["meta"] = meta_json("per", result.config, result.config_digest);
  char code_digest[32];
  std::snprintf(code_digest, sizeof(code_digest), "%016llx",
                static_cast<unsigned long long>(result.code_digest));
  j["meta"]["code_digest"] = code_digest;
  j["meta"]["code"] = {{"n", result.code_dims[0]}, {"k", result.code_dims[1]},
                       {"m", result.code_dims[2]}};
  j["meta"]["channel_load"] = result.channel_load;
  json points = json::array();
  for (const auto& point : result.points) {
    json p;
    p["scheme"] = scheme_name(point.scheme);
    p["ebn0_db"] = point.ebn0_db;
    p["frames"] = point.frames;
    const long long pooled_trials = point.frames * static_cast<long long>(
                                        point.packet_errors_per_user.size());
    const auto [lo, hi] = wilson_interval(point.packet_errors_pooled, pooled_trials);
    p["pooled"] = {{"packet_errors", point.packet_errors_pooled},
                   {"per", point.per()},
                   {"per_lo95", lo},
                   {"per_hi95", hi},
                   {"bit_errors", point.bit_errors},
                   {"info_bits", point.info_bits},
                   {"ber", point.ber()},
                   {"mean_iterations", point.mean_iterations()}};
    json per_user = json::array();
    for (std::size_t u = 0; u < point.packet_errors_per_user.size(); ++u) {
      const long long errs = point.packet_errors_per_user[u];
      const auto [ulo, uhi] = wilson_interval(errs, point.frames);
      per_user.push_back({{"user", u + 1},
                          {"packet_errors", errs},
                          {"per", static_cast<double>(errs) / point.frames},
                          {"per_lo95", ulo},
                          {"per_hi95", uhi}});
    }
    p["per_user"] = per_user;
    points.push_back(p);
  }
  j["points"] = points;
  out << j.dump(2) << '\n';
}

void write_degree_dist_csv(const DegreeDistResult& result, std::ostream& out) {
  write_header(out, "degree-dist", result.config.master_seed, result.config_digest);
  out << "# slots_observed=" << result.slots_observed << '\n';
  out << "scheme,degree,count,empirical_pmf,binomial_pmf,z_score\n";
  for (const auto& per_scheme : result.schemes) {
    for (const auto& bin : per_scheme.bins) {
      out << scheme_name(per_scheme.scheme) << ',' << bin.degree << ',' << bin.count << ','
          << fmt_double(bin.empirical) << ',' << fmt_double(bin.binomial) << ','
          << fmt_double(bin.z_score) << '\n';
    }
  }
}

void write_degree_dist_json(const DegreeDistResult& result, std::ostream& out) {
  json j;
  j["meta"] = meta_json("degree-dist", result.config, result.config_digest);
  j["meta"]["slots_observed"] = result.slots_observed;
  json schemes = json::array();
  for (const auto& per_scheme : result.schemes) {
    json s;
    s["scheme"] = scheme_name(per_scheme.scheme);
    json bins = json::array();
    for (const auto& bin : per_scheme.bins) {
      bins.push_back({{"degree", bin.degree},
                      {"count", bin.count},
                      {"empirical_pmf", bin.empirical},
                      {"binomial_pmf", bin.binomial},
                      {"z_score", bin.z_score}});
    }
    s["bins"] = bins;
    schemes.push_back(s);
  }
  j["schemes"] = schemes;
  out << j.dump(2) << '\n';
}

}  // namespace scram
