// Python bindings: model constructors, transition matrices, cycle reports,
// exact distributions, and the composite-space oracle check.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbatt/battery.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/model_file.hpp"
#include "qbatt/models.hpp"
#include "qbatt/oracle.hpp"
#include "qbatt/trajectory.hpp"

#include <optional>

namespace py = pybind11;
using namespace qbatt;

namespace {

// Model plus its bath inverse temperature, the handle python works with.
struct PyModel {
    Model model;
    double beta;

    const EquilibriumStructure& es() const { return model.es; }
};

py::dict distribution_dict(const DiscreteDistribution& d) {
    py::list values, probs;
    for (const auto& atom : d.atoms()) {
        values.append(atom.value);
        probs.append(atom.prob);
    }
    py::dict out;
    out["values"] = values;
    out["probs"] = probs;
    out["inf_prob"] = d.inf_prob();
    return out;
}

py::dict report_dict(const ThermoReport& r) {
    py::dict out;
    out["delta_e"] = r.delta_e;
    out["heat"] = r.heat;
    out["work"] = r.work;
    out["delta_s_vn"] = r.delta_s_vn;
    out["entropy_production"] = r.entropy_production;
    return out;
}

}  // namespace

PYBIND11_MODULE(_qbatt, m) {
    m.doc() = "Collision-model quantum battery toolkit";
    m.attr("__version__") = kVersion;

    py::class_<CycleReport>(m, "CycleReport")
        .def_readonly("ergotropy", &CycleReport::ergotropy)
        .def_readonly("recharging_work", &CycleReport::recharging_work)
        .def_property_readonly("eta_th",
                               [](const CycleReport& r) -> std::optional<double> {
                                   return r.eta_th;
                               })
        .def("__repr__", [](const CycleReport& r) {
            return "CycleReport(ergotropy=" + format_number(r.ergotropy) +
                   ", recharging_work=" + format_number(r.recharging_work) + ", eta_th=" +
                   (r.eta_th ? format_number(*r.eta_th) : std::string("None")) + ")";
        });

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("beta", [](const PyModel& s) { return s.beta; })
        .def_property_readonly("dim", [](const PyModel& s) { return s.es().dim(); })
        .def_property_readonly("energies", [](const PyModel& s) { return s.es().e; })
        .def_property_readonly("h0_energies", [](const PyModel& s) { return s.es().e0; })
        .def_property_readonly("pi", [](const PyModel& s) { return s.es().pi; })
        .def("transition_matrix",
             [](const PyModel& s) { return transition_matrix(s.model.spec, s.es()).matrix(); })
        .def("cycle", [](const PyModel& s) { return cycle_report(s.es(), s.beta); })
        .def(
            "passive_state",
            [](const PyModel& s) { return passive_state(s.es(), s.beta).matrix(); },
            "density matrix after optimal extraction")
        .def(
            "equilibrium_state",
            [](const PyModel& s) { return s.es().equilibrium_state(s.beta).matrix(); })
        .def(
            "trajectory_table",
            [](const PyModel& s, int steps, const std::string& start) {
                const RealVector p_ini = start == "equilibrium"
                                             ? s.es().equilibrium_populations(s.beta)
                                             : s.es().passive_populations(s.beta);
                return trajectory_table(transition_matrix(s.model.spec, s.es()), p_ini, steps)
                    .joint();
            },
            py::arg("steps"), py::arg("start") = "passive",
            "joint P(n, m) after a finite number of collisions")
        .def("stationary_table",
             [](const PyModel& s) { return stationary_table(s.es(), s.beta).joint(); })
        .def(
            "distribution",
            [](const PyModel& s, const std::string& kind, std::optional<int> steps,
               const std::string& start) {
                if (kind == "efficiency") {
                    if (steps) {
                        throw std::invalid_argument(
                            "efficiency is defined on the completed recharge; omit steps");
                    }
                    return distribution_dict(efficiency_distribution(s.es(), s.beta));
                }
                const RealVector p_ini = start == "equilibrium"
                                             ? s.es().equilibrium_populations(s.beta)
                                             : s.es().passive_populations(s.beta);
                const TrajectoryTable table =
                    steps ? trajectory_table(transition_matrix(s.model.spec, s.es()), p_ini,
                                             *steps)
                          : stationary_table(s.es(), s.beta);
                const FluctuationDistributions d =
                    energy_work_heat_distributions(table, s.es());
                if (kind == "work") return distribution_dict(d.work);
                if (kind == "heat") return distribution_dict(d.heat);
                if (kind == "energy") return distribution_dict(d.energy);
                throw std::invalid_argument("kind must be work|heat|energy|efficiency");
            },
            py::arg("kind"), py::arg("steps") = py::none(), py::arg("start") = "passive")
        .def("extraction_statistics",
             [](const PyModel& s) { return distribution_dict(extraction_statistics(s.es(), s.beta)); })
        .def("detailed_balance_violation",
             [](const PyModel& s) {
                 return check_detailed_balance(transition_matrix(s.model.spec, s.es()), s.es(),
                                               s.beta);
             })
        .def("regularity",
             [](const PyModel& s) {
                 const RegularityReport r = is_regular(transition_matrix(s.model.spec, s.es()));
                 return py::make_tuple(r.regular, r.second_eigenvalue_modulus);
             })
        .def(
            "collision_step",
            [](const PyModel& s, const Matrix& rho) {
                const CollisionResult r = collision_step(s.model.spec, DensityMatrix(rho));
                return py::make_tuple(r.rho_s.matrix(), report_dict(r.report));
            },
            py::arg("rho"), "one collision: returns (rho_out, thermodynamic report)")
        .def(
            "oracle_check",
            [](const PyModel& s, int steps) {
                const ReductionReport r = verify_reduction(s.model.spec, s.es(), steps);
                py::dict out;
                out["q_violation"] = r.max_q_violation;
                out["marginal_discrepancy"] = r.max_prob_discrepancy;
                return out;
            },
            py::arg("steps"));

    m.def(
        "model_1q",
        [](double h, double a, double tau, double hbar, double beta) {
            return PyModel{build_1q({h, a, tau, hbar, beta}), beta};
        },
        py::arg("h") = 1.0, py::arg("a") = 1.0, py::arg("tau") = 1.0, py::arg("hbar") = 1.0,
        py::arg("beta") = 1.0, "charging single-qubit battery (H_0 = -H_S)");
    m.def(
        "model_thermal_1q",
        [](double h, double a, double tau, double hbar, double beta) {
            return PyModel{build_thermal_1q({h, a, tau, hbar, beta}), beta};
        },
        py::arg("h") = 1.0, py::arg("a") = 1.0, py::arg("tau") = 1.0, py::arg("hbar") = 1.0,
        py::arg("beta") = 1.0, "thermal single-qubit map (H_0 = H_S)");
    m.def(
        "model_2q",
        [](double h, double J, double Jp, double tau, double hbar, double beta) {
            return PyModel{build_2q({h, J, Jp, tau, hbar, beta}), beta};
        },
        py::arg("h") = 0.6, py::arg("J") = 1.0, py::arg("Jp") = 1.0, py::arg("tau") = 1.0,
        py::arg("hbar") = 1.0, py::arg("beta") = 1.0, "two-qubit battery");
    m.def(
        "load_model",
        [](const std::string& path) {
            Model model = load_custom_model(path);
            const double beta = model.spec.beta();
            return PyModel{std::move(model), beta};
        },
        py::arg("path"), "load a [H_S]/[H_B]/[V]/[H_0]/[params] model file");

    m.def(
        "t1q_closed_form",
        [](double h, double a, double tau, double hbar, double beta) {
            return t1q_closed_form({h, a, tau, hbar, beta}).matrix();
        },
        py::arg("h") = 1.0, py::arg("a") = 1.0, py::arg("tau") = 1.0, py::arg("hbar") = 1.0,
        py::arg("beta") = 1.0);
    m.def(
        "t_thermal_closed_form",
        [](double h, double a, double tau, double hbar, double beta) {
            return t_thermal_closed_form({h, a, tau, hbar, beta}).matrix();
        },
        py::arg("h") = 1.0, py::arg("a") = 1.0, py::arg("tau") = 1.0, py::arg("hbar") = 1.0,
        py::arg("beta") = 1.0);
    m.def(
        "t2q_closed_form",
        [](double h, double J, double Jp, double tau, double hbar, double beta) {
            return t2q_closed_form({h, J, Jp, tau, hbar, beta}).matrix();
        },
        py::arg("h") = 0.6, py::arg("J") = 1.0, py::arg("Jp") = 1.0, py::arg("tau") = 1.0,
        py::arg("hbar") = 1.0, py::arg("beta") = 1.0);

    m.def("g_factor", &g_factor, py::arg("a"), py::arg("h"), py::arg("tau") = 1.0,
          py::arg("hbar") = 1.0);
    m.def(
        "efficiency_probs_1q",
        [](double beta_h) {
            const EfficiencyProbs1Q p = efficiency_probs_1q(beta_h);
            py::dict out;
            out["inf"] = p.p_inf;
            out["half"] = p.p_half;
            return out;
        },
        py::arg("beta_h"));
    m.def(
        "efficiency_probs_2q",
        [](double beta_h) {
            const EfficiencyProbs2Q p = efficiency_probs_2q(beta_h);
            py::dict out;
            out["inf"] = p.p_inf;
            out["eta"] = p.p_eta;
            out["minus_eta"] = p.p_minus_eta;
            out["half_eta"] = p.p_half_eta;
            return out;
        },
        py::arg("beta_h"));
}
