#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <sstream>

#include "scram/access.hpp"
#include "scram/capacity.hpp"
#include "scram/channel.hpp"
#include "scram/cycles.hpp"
#include "scram/decoder.hpp"
#include "scram/graph.hpp"
#include "scram/ldpc.hpp"
#include "scram/sim.hpp"

namespace py = pybind11;
using namespace scram;

namespace {

SlotAssignment assignment_from_rows(const std::vector<std::vector<int>>& rows, int total_slots) {
  SlotAssignment a;
  a.total_slots = total_slots;
  a.slot_of = rows;
  return a;
}

InterleaverBank bank_from_pylist(const std::vector<std::vector<std::vector<int>>>& pi,
                                 const AccessParams& params) {
  InterleaverBank bank;
  bank.n_sets = params.n_sets();
  bank.n_subgraphs = params.n_subgraphs();
  bank.symbols_per_user = params.symbols_per_user;
  bank.pi = pi;
  bank.validate_shape(params);
  return bank;
}

std::vector<std::vector<int>> py_assign(const std::string& scheme, int n_users,
                                        int symbols_per_user, int total_slots,
                                        std::uint64_t master_seed,
                                        const std::optional<std::vector<std::vector<std::vector<int>>>>& bank) {
  AccessParams params{n_users, symbols_per_user, total_slots, scheme_from_name(scheme),
                      master_seed};
  std::optional<InterleaverBank> real_bank;
  if (bank) real_bank = bank_from_pylist(*bank, params);
  Rng rng = Rng::derive(master_seed, {static_cast<std::uint64_t>(params.scheme), 0, 0});
  return make_assignment(params, &rng, real_bank ? &*real_bank : nullptr).slot_of;
}

py::dict profile_to_dict(const CycleProfile& p) {
  py::dict d;
  d["girth"] = p.girth ? py::object(py::int_(*p.girth)) : py::none();
  d["c4"] = p.c4;
  d["c6"] = p.c6;
  d["c8"] = p.c8;
  return d;
}

}  // namespace

PYBIND11_MODULE(_scram, m) {
  m.doc() = "Joint LDPC / slotted-random-access decoding laboratory";
  m.attr("__version__") = kToolVersion;

  py::class_<LdpcCode>(m, "LdpcCode")
      .def_readonly("n", &LdpcCode::n)
      .def_readonly("m", &LdpcCode::m)
      .def_readonly("k", &LdpcCode::k)
      .def_property_readonly("rate", &LdpcCode::rate)
      .def_property_readonly("row_adj",
                             [](const LdpcCode& c) { return c.h.row_adj; })
      .def_property_readonly("col_adj",
                             [](const LdpcCode& c) { return c.h.col_adj; })
      .def("syndrome_ok", &LdpcCode::syndrome_ok)
      .def("__repr__", [](const LdpcCode& c) {
        std::ostringstream ss;
        ss << "LdpcCode(n=" << c.n << ", k=" << c.k << ", m=" << c.m << ")";
        return ss.str();
      });

  m.def("load_alist", &load_alist_file, py::arg("path"), "Load a parity-check matrix file");
  m.def("loads_alist", [](const std::string& text) {
    std::istringstream in(text);
    return load_alist(in);
  }, py::arg("text"), "Parse alist text");
  m.def("dumps_alist", [](const LdpcCode& code) {
    std::ostringstream out;
    save_alist(code.h, out);
    return out.str();
  }, py::arg("code"));
  m.def("make_code", [](int rows, int cols, const std::vector<std::vector<int>>& row_adj) {
    return make_code(SparseBinaryMatrix::from_rows(rows, cols, row_adj));
  }, py::arg("rows"), py::arg("cols"), py::arg("row_adj"),
    "Build a code from 0-based row adjacency lists");

  py::class_<Encoder>(m, "Encoder")
      .def_property_readonly("n", &Encoder::n)
      .def_property_readonly("k", &Encoder::k)
      .def_property_readonly("info_positions", &Encoder::info_positions)
      .def("encode", &Encoder::encode, py::arg("info"))
      .def("extract_info", &Encoder::extract_info, py::arg("codeword"));
  m.def("build_encoder", &build_encoder, py::arg("code"));

  m.def("classical_bp_decode",
        [](const LdpcCode& code, const std::vector<double>& llrs, int max_iters) {
          const BpResult r = classical_bp_decode(code, llrs, max_iters);
          return py::make_tuple(r.bits, r.converged, r.iterations);
        },
        py::arg("code"), py::arg("channel_llrs"), py::arg("max_iters") = 50,
        "Flooding sum-product decode; returns (bits, converged, iterations)");

  m.def("lfsr_permutation", &lfsr_permutation, py::arg("seed"), py::arg("n"));
  m.def("seed_for", &seed_for, py::arg("n_set"), py::arg("n_sub"), py::arg("master_seed"));
  m.def("assign", &py_assign, py::arg("scheme"), py::arg("n_users"), py::arg("symbols_per_user"),
        py::arg("total_slots"), py::arg("master_seed") = 1,
        py::arg("bank") = std::nullopt,
        "Slot assignment per scheme; returns slot_of[user][symbol] (1-based slots)");
  m.def("slot_degrees",
        [](const std::vector<std::vector<int>>& rows, int total_slots) {
          return slot_degrees(assignment_from_rows(rows, total_slots), total_slots);
        },
        py::arg("slot_of"), py::arg("total_slots"));
  m.def("collision_partners",
        [](const std::vector<std::vector<int>>& rows, int total_slots, int user) {
          return collision_partners(assignment_from_rows(rows, total_slots), user);
        },
        py::arg("slot_of"), py::arg("total_slots"), py::arg("user"));

  py::class_<JointMatrix>(m, "JointMatrix")
      .def_property_readonly("rows", [](const JointMatrix& j) { return j.mat.rows; })
      .def_property_readonly("cols", [](const JointMatrix& j) { return j.mat.cols; })
      .def_readonly("n_sa_rows", &JointMatrix::n_sa_rows)
      .def_property_readonly("row_adj", [](const JointMatrix& j) { return j.mat.row_adj; })
      .def("dumps_alist", [](const JointMatrix& j) {
        std::ostringstream out;
        save_alist(j.mat, out);
        return out.str();
      });

  m.def("joint_matrix",
        [](const std::vector<LdpcCode>& codes, const std::vector<std::vector<int>>& rows,
           int total_slots) {
          std::vector<const LdpcCode*> ptrs;
          for (const auto& c : codes) ptrs.push_back(&c);
          return to_joint_matrix(build_graph(ptrs, assignment_from_rows(rows, total_slots),
                                             total_slots));
        },
        py::arg("codes"), py::arg("slot_of"), py::arg("total_slots"));

  m.def("girth", [](const LdpcCode& c) { return girth(c.h); });
  m.def("girth_joint", [](const JointMatrix& j) { return girth(j.mat); });
  m.def("count_cycles", [](const LdpcCode& c, int length) { return count_cycles(c.h, length); },
        py::arg("code"), py::arg("length"));
  m.def("count_cycles_joint",
        [](const JointMatrix& j, int length) { return count_cycles(j.mat, length); },
        py::arg("joint"), py::arg("length"));
  m.def("count_cycles_bruteforce",
        [](const LdpcCode& c, int length) { return count_cycles_bruteforce(c.h, length); },
        py::arg("code"), py::arg("length"));
  m.def("count_global8",
        [](const std::vector<LdpcCode>& codes, const std::vector<std::vector<int>>& rows,
           int total_slots) {
          std::vector<const LdpcCode*> ptrs;
          for (const auto& c : codes) ptrs.push_back(&c);
          return count_global8(build_graph(ptrs, assignment_from_rows(rows, total_slots),
                                           total_slots));
        },
        py::arg("codes"), py::arg("slot_of"), py::arg("total_slots"));
  m.def("cycle_report",
        [](const std::vector<LdpcCode>& codes, const std::vector<std::vector<int>>& rows,
           int total_slots) {
          std::vector<const LdpcCode*> ptrs;
          for (const auto& c : codes) ptrs.push_back(&c);
          const ScramCycleReport r =
              scram_cycle_report(ptrs, assignment_from_rows(rows, total_slots), total_slots);
          py::dict d;
          py::list per_user;
          for (const auto& p : r.per_user) per_user.append(profile_to_dict(p));
          d["per_user"] = per_user;
          d["joint"] = profile_to_dict(r.joint);
          d["global8"] = r.global8;
          d["c4_identity_ok"] = r.c4_identity_ok;
          d["c6_identity_ok"] = r.c6_identity_ok;
          d["c8_identity_ok"] = r.c8_identity_ok;
          return d;
        },
        py::arg("codes"), py::arg("slot_of"), py::arg("total_slots"));

  m.def("ebn0_to_sigma2", &ebn0_to_sigma2, py::arg("ebn0_db"), py::arg("rate"));
  m.def("degree_pmf", &degree_pmf, py::arg("n_users"), py::arg("p"), py::arg("d"));
  m.def("ra_spectral_efficiency",
        [](double ebn0_linear, int n_users, int symbols_per_user, int total_slots) {
          const SpectralEfficiency s =
              ra_spectral_efficiency(ebn0_linear, n_users, symbols_per_user, total_slots);
          return py::make_tuple(s.eta, s.converged, s.iterations);
        },
        py::arg("ebn0_linear"), py::arg("n_users"), py::arg("symbols_per_user"),
        py::arg("total_slots"));
  m.def("ra_min_ebn0_db", &ra_min_ebn0_db, py::arg("target_eta"), py::arg("n_users"),
        py::arg("symbols_per_user"), py::arg("total_slots"));
  m.def("ua_min_ebn0_db", &ua_min_ebn0_db, py::arg("eta"));
  m.def("capacity_table",
        [](int symbols_per_user, int total_slots, const std::vector<int>& user_counts) {
          py::list rows;
          for (const auto& r : capacity_table(symbols_per_user, total_slots, user_counts)) {
            py::dict d;
            d["n_users"] = r.n_users;
            d["eta"] = r.eta;
            d["ebn0_ra_db"] = r.ebn0_ra_db;
            d["ebn0_ua_db"] = r.ebn0_ua_db;
            d["delta_ra_ua_db"] = r.delta_ra_ua_db;
            d["p_empty"] = r.p_empty;
            d["ra_solver_iterations"] = r.ra_solver_iterations;
            rows.append(d);
          }
          return rows;
        },
        py::arg("symbols_per_user"), py::arg("total_slots"), py::arg("user_counts"));

  m.def("decode_frame",
        [](const std::vector<LdpcCode>& codes, const std::vector<std::vector<int>>& rows,
           int total_slots, const std::vector<std::complex<double>>& received,
           const std::vector<std::vector<double>>& fading, double sigma2, int max_iters,
           bool early_stop, int max_slot_degree) {
          std::vector<const LdpcCode*> code_ptrs;
          std::vector<Encoder> encoders;
          encoders.reserve(codes.size());
          std::vector<const Encoder*> enc_ptrs;
          for (const auto& c : codes) {
            code_ptrs.push_back(&c);
            encoders.push_back(build_encoder(c));
          }
          for (const auto& e : encoders) enc_ptrs.push_back(&e);
          const SlotAssignment assignment = assignment_from_rows(rows, total_slots);
          const ThreeLayerGraph graph = build_graph(code_ptrs, assignment, total_slots);
          FrameRealization frame;
          frame.received = received;
          frame.fading = fading;
          frame.sigma2 = sigma2;
          DecodeOptions options;
          options.max_iters = max_iters;
          options.early_stop = early_stop;
          options.max_slot_degree = max_slot_degree;
          const DecodeResult r = decode(graph, code_ptrs, enc_ptrs, frame, options);
          py::dict d;
          d["info_bits"] = r.info_bits;
          d["codeword_bits"] = r.codeword_bits;
          d["syndrome_ok"] = r.syndrome_ok;
          d["all_syndromes_ok"] = r.all_syndromes_ok;
          d["iterations"] = r.iterations;
          return d;
        },
        py::arg("codes"), py::arg("slot_of"), py::arg("total_slots"), py::arg("received"),
        py::arg("fading"), py::arg("sigma2"), py::arg("max_iters") = 50,
        py::arg("early_stop") = true, py::arg("max_slot_degree") = 12,
        "Joint three-layer decode of one frame");

  m.def("run_per_sweep_json",
        [](const std::string& config_json) {
          const SimConfig config = config_from_json_text(config_json);
          const PerSweepResult result = run_per_sweep(config);
          std::ostringstream out;
          write_per_sweep_json(result, out);
          return out.str();
        },
        py::arg("config_json"), "Run a PER sweep from a JSON config; returns the JSON report");
  m.def("run_degree_dist_json",
        [](const std::string& config_json) {
          const SimConfig config = config_from_json_text(config_json);
          const DegreeDistResult result = run_degree_dist(config);
          std::ostringstream out;
          write_degree_dist_json(result, out);
          return out.str();
        },
        py::arg("config_json"));
}
