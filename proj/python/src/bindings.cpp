// Copyright 2026 The Authors.
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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "beambit/aqnm.hpp"
#include "beambit/bench.hpp"
#include "beambit/rate.hpp"
#include "beambit/select.hpp"
#include "beambit/verify.hpp"

namespace py = pybind11;
using namespace beambit;

namespace {

using TupleList = std::vector<std::pair<int, int>>;

Selection ToSelection(const TupleList& tuples) {
  Selection s;
  for (const auto& [beam, bits] : tuples) s.Insert({beam, bits});
  return s;
}

TupleList FromSelection(const Selection& s) {
  TupleList out;
  for (const auto& t : s) out.emplace_back(t.beam, t.bits);
  return out;
}

py::dict OutcomeDict(const AlgoOutcome& o) {
  py::dict d;
  d["algo"] = o.algo;
  d["selection"] = FromSelection(o.selection);
  d["wsr_bits"] = o.wsr_bits;
  d["wsr_bps_hz"] = o.wsr_bps_hz;
  d["energy"] = o.energy;
  d["active_chains"] = o.active_chains;
  d["mean_bits_per_chain"] = o.mean_bits;
  d["hprime_evals"] = o.hprime_evals;
  return d;
}

// Evaluator that owns what it points at.
class Problem {
 public:
  explicit Problem(Instance instance)
      : instance_(std::move(instance)), model_(instance_), eval_(model_, instance_.users) {}

  const Instance& instance() const { return instance_; }
  RateEvaluator& eval() { return eval_; }
  const RateEvaluator& eval() const { return eval_; }

 private:
  Instance instance_;
  AqnmModel model_;
  RateEvaluator eval_;
};

CostModel MakeCost(int n_beams, double eps_beam, double theta, int b_ref, double budget_e, int budget_m) {
  CostModel cm;
  cm.eps_beam.assign(n_beams, eps_beam);
  cm.theta = theta;
  cm.b_ref = b_ref;
  cm.budget_e = budget_e;
  cm.budget_m = budget_m;
  cm.Validate();
  return cm;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint beam and ADC resolution selection.";
  m.attr("INFINITE_BITS") = kInfiniteBits;

  m.def("alpha_of", [](int bits) { return AlphaOf(bits, AdcTable::Default()); }, py::arg("bits"));
  m.def("adc_table_json", [] { return AdcTableToJson(AdcTable::Default()).dump(); });
  m.def("prune", [](const TupleList& s) { return FromSelection(Prune(ToSelection(s))); }, py::arg("selection"));

  py::class_<Problem>(m, "Problem")
      .def_static("random",
                  [](int n_rx, int n_users, int n_taps, int n_subcarriers, bool finite_queues, std::uint64_t seed) {
                    RandomInstanceSpec spec;
                    spec.n_rx = n_rx;
                    spec.n_users = n_users;
                    spec.n_taps = n_taps;
                    spec.n_subcarriers = n_subcarriers;
                    spec.finite_queues = finite_queues;
                    return std::make_unique<Problem>(RandomInstance(spec, seed));
                  },
                  py::arg("n_rx") = 8, py::arg("n_users") = 3, py::arg("n_taps") = 2, py::arg("n_subcarriers") = 4,
                  py::arg("finite_queues") = true, py::arg("seed") = 1)
      .def_static("from_json", [](const std::string& text) {
        return std::make_unique<Problem>(InstanceFromJson(nlohmann::json::parse(text)));
      })
      .def("to_json", [](const Problem& p) { return InstanceToJson(p.instance()).dump(); })
      .def_property_readonly("n_beams", [](const Problem& p) { return p.instance().codebook.size(); })
      .def_property_readonly("n_users", [](const Problem& p) { return p.instance().users.size(); })
      .def("beam_variance", [](const Problem& p, int beam) { return p.eval().model().psi(beam).psi; }, py::arg("beam"))
      .def("wsr", [](Problem& p, const TupleList& s) { return p.eval().HPrime(ToSelection(s)); },
           py::arg("selection"))
      .def("levels", [](Problem& p, const TupleList& s) { return p.eval().Levels(ToSelection(s)); },
           py::arg("selection"))
      .def("corner_rates",
           [](Problem& p, const TupleList& s) {
             return p.eval().CornerRates(ToSelection(s)).ToOriginalOrder(p.instance().users);
           },
           py::arg("selection"))
      .def_property_readonly("evaluations", [](const Problem& p) { return p.eval().evaluations(); })
      .def("joint_select",
           [](Problem& p, std::vector<int> bits, double eps_beam, double theta, int b_ref, double budget_e,
              int budget_m, bool lazy) {
             const int n = p.instance().codebook.size();
             const CostModel cm = MakeCost(n, eps_beam, theta, b_ref, budget_e, budget_m);
             const GroundSet ground(n, std::move(bits), cm);
             JointOptions opt;
             opt.lazy = lazy;
             const auto r = Algorithm1(p.eval(), ground, cm, opt);
             py::dict d;
             d["selection"] = FromSelection(r.selection);
             d["value"] = r.value;
             d["energy"] = SelectionCost(Prune(r.selection), cm);
             d["single_tuple"] = r.single_tuple;
             return d;
           },
           py::arg("bits"), py::arg("eps_beam") = 1.0, py::arg("theta") = 1.0 / 16.0, py::arg("b_ref") = 4,
           py::arg("budget_e") = 1.0, py::arg("budget_m") = 1, py::arg("lazy") = true)
      .def("brute_force",
           [](Problem& p, std::vector<int> bits, double eps_beam, double theta, int b_ref, double budget_e,
              int budget_m) {
             const int n = p.instance().codebook.size();
             const CostModel cm = MakeCost(n, eps_beam, theta, b_ref, budget_e, budget_m);
             const auto r = BruteForceOpt(p.eval(), GroundSet(n, std::move(bits), cm), cm);
             return py::make_tuple(FromSelection(r.selection), r.value);
           },
           py::arg("bits"), py::arg("eps_beam") = 1.0, py::arg("theta") = 1.0 / 16.0, py::arg("b_ref") = 4,
           py::arg("budget_e") = 1.0, py::arg("budget_m") = 1);

  m.def("solve",
        [](const std::string& config_json, const std::string& algo, std::uint64_t seed) {
          ExperimentConfig cfg = ConfigFromJson(nlohmann::json::parse(config_json));
          cfg.seed = seed;
          const DropResult r = RunDrop(cfg.At(cfg.tx_power_dbm.front(), cfg.b_ref.front()), 0, {algo});
          py::dict d = OutcomeDict(r.outcomes.front());
          d["budget"] = r.budget;
          return d;
        },
        py::arg("config_json"), py::arg("algo") = "joint", py::arg("seed") = 1);
  m.def("sweep_csv",
        [](const std::string& config_json, const std::string& axis) {
          const ExperimentConfig cfg = ConfigFromJson(nlohmann::json::parse(config_json));
          py::gil_scoped_release release;
          return SweepCsv(RunSweep(cfg, axis).rows);
        },
        py::arg("config_json"), py::arg("axis") = "power");
  m.def("tables_csv", [](const std::string& sweep_csv) { return SummarizeTables(ParseSweepCsv(sweep_csv)); },
        py::arg("sweep_csv"));
  m.def("verify",
        [](bool quick, const std::vector<int>& only) {
          VerifyOptions opt;
          opt.quick = quick;
          py::list out;
          for (const auto& r : RunChecks(opt, only)) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["passed"] = r.pass;
            d["summary"] = r.summary;
            out.append(d);
          }
          return out;
        },
        py::arg("quick") = true, py::arg("only") = std::vector<int>{});
}
