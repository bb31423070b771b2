#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "mdpcheck/Errors.h"
#include "mdpcheck/bench/Classification.h"
#include "mdpcheck/bench/Runner.h"
#include "mdpcheck/bench/Suite.h"
#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/graph/Qualitative.h"
#include "mdpcheck/io/ModelFormat.h"
#include "mdpcheck/solver/Solve.h"

namespace py = pybind11;
using namespace mdpcheck;

namespace {

py::list floatValues(model::ValueVector<double> const& values) {
    py::list result;
    for (std::size_t s = 0; s < values.size(); ++s) {
        result.append(values.isInfinite(s) ? std::numeric_limits<double>::infinity() : values[s]);
    }
    return result;
}

py::dict resultDict(solver::SolveResult const& result) {
    py::dict out;
    out["soundness"] = std::string(solver::toString(result.soundness));
    out["values"] = floatValues(result.values);
    if (result.exactValues) {
        py::list exact;
        for (std::size_t s = 0; s < result.exactValues->size(); ++s) {
            exact.append(result.exactValues->isInfinite(s) ? std::string("inf") : toString((*result.exactValues)[s]));
        }
        out["exact"] = exact;
    } else {
        out["exact"] = py::none();
    }
    out["lower"] = result.lower ? py::object(floatValues(*result.lower)) : py::none();
    out["upper"] = result.upper ? py::object(floatValues(*result.upper)) : py::none();
    out["certified"] = result.epsilonCertified;
    out["policy"] = result.policy ? py::object(py::cast(result.policy->choices)) : py::none();
    out["iterations"] = result.iterations;
    out["backend_calls"] = result.backendCalls;
    return out;
}

std::vector<std::size_t> members(graph::StateSet const& set) {
    return set.members();
}

model::Objective reachObjective(model::SparseMdp const& mdp, std::string const& label, std::string const& direction) {
    return model::parseObjective(mdp, "reach:" + direction + ":" + label);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and sound solvers for Markov decision processes";

    static py::exception<Error> error(m, "MdpError");
    static py::exception<ParseError> parseError(m, "ParseError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (ParseError const& e) {
            PyErr_SetString(parseError.ptr(), e.what());
        } catch (Error const& e) {
            PyErr_SetString(error.ptr(), (std::string(toString(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<model::SparseMdp>(m, "Model")
        .def_property_readonly("num_states", &model::SparseMdp::getNumberOfStates)
        .def_property_readonly("num_choices", py::overload_cast<>(&model::SparseMdp::getNumberOfChoices, py::const_))
        .def_property_readonly("initial_state", &model::SparseMdp::getInitialState)
        .def_property_readonly("labels", &model::SparseMdp::getLabels)
        .def_property_readonly("has_rewards", &model::SparseMdp::hasRewards)
        .def("num_actions", py::overload_cast<std::size_t>(&model::SparseMdp::getNumberOfChoices, py::const_), py::arg("state"))
        .def(
            "transitions",
            [](model::SparseMdp const& mdp, std::size_t state, std::size_t action) {
                if (state >= mdp.getNumberOfStates() || action >= mdp.getNumberOfChoices(state)) {
                    throw Error(ErrorCode::BadIndex, "no action " + std::to_string(action) + " at state " + std::to_string(state));
                }
                std::vector<std::pair<std::size_t, std::string>> result;
                for (auto const& t : mdp.getTransitions(state, action)) {
                    result.emplace_back(t.target, toString(t.probability));
                }
                return result;
            },
            py::arg("state"), py::arg("action"))
        .def("to_json", [](model::SparseMdp const& mdp) { return io::writeModel(mdp); })
        .def(py::self == py::self)
        .def("__repr__", [](model::SparseMdp const& mdp) {
            return "<mdpcheck.Model states=" + std::to_string(mdp.getNumberOfStates()) + " choices=" + std::to_string(mdp.getNumberOfChoices()) + ">";
        });

    m.def("parse_model", [](std::string const& text) { return io::parseModel(text); }, py::arg("text"));
    m.def("load_model", [](std::string const& path) { return io::readModelFile(path); }, py::arg("path"));
    m.def("save_model", [](model::SparseMdp const& mdp, std::string const& path) { io::writeModelFile(path, mdp); }, py::arg("model"), py::arg("path"));

    m.def("gen_hard_mn", &gen::genHardMn, py::arg("n"));
    m.def("hard_mn_index", &gen::hardMnIndex, py::arg("n"), py::arg("i"));
    m.def("gen_pi_trap", [](std::string const& delta) { return gen::genPiTrap(parseRational(delta)); }, py::arg("delta"));
    m.def(
        "gen_random_mdp",
        [](std::uint64_t seed, std::size_t states, std::size_t actions, double density, double targets, std::optional<unsigned> maxReward, bool acyclic) {
            gen::RandomMdpOptions options;
            options.seed = seed;
            options.numStates = states;
            options.maxActions = actions;
            options.density = density;
            options.targetFraction = targets;
            options.maxReward = maxReward;
            options.acyclic = acyclic;
            return gen::genRandomMdp(options);
        },
        py::arg("seed") = 0, py::arg("states") = 10, py::arg("actions") = 2, py::arg("density") = 0.3, py::arg("targets") = 0.1,
        py::arg("max_reward") = py::none(), py::arg("acyclic") = false);

    m.def(
        "solve",
        [](model::SparseMdp const& mdp, std::string const& objective, std::string const& algorithm, std::optional<std::vector<std::size_t>> initialPolicy) {
            auto config = solver::parseSolverConfig(algorithm);
            if (initialPolicy) {
                config.initialPolicy = model::Policy{*initialPolicy};
            }
            auto parsed = model::parseObjective(mdp, objective);
            solver::SolveResult result;
            {
                py::gil_scoped_release release;
                result = solver::solve(mdp, parsed, config);
            }
            return resultDict(result);
        },
        py::arg("model"), py::arg("objective"), py::arg("algorithm") = "pi", py::arg("initial_policy") = py::none());

    m.def(
        "prob0", [](model::SparseMdp const& mdp, std::string const& label, std::string const& direction) {
            auto objective = reachObjective(mdp, label, direction);
            return members(graph::prob0(mdp, objective.target, objective.direction));
        },
        py::arg("model"), py::arg("label"), py::arg("direction"));
    m.def(
        "prob1", [](model::SparseMdp const& mdp, std::string const& label, std::string const& direction) {
            auto objective = reachObjective(mdp, label, direction);
            return members(graph::prob1(mdp, objective.target, objective.direction));
        },
        py::arg("model"), py::arg("label"), py::arg("direction"));

    m.def(
        "classify",
        [](std::optional<double> value, std::optional<std::string> const& reference) {
            if (value && std::isinf(*value)) {
                value.reset();
            }
            std::optional<io::ReferenceValue> parsed;
            if (reference) {
                parsed = io::parseReferenceValue(*reference);
            }
            return std::string(bench::toString(bench::classify(value, parsed)));
        },
        py::arg("value"), py::arg("reference"));

    m.def(
        "run_suite",
        [](std::string const& text, double timeout, std::size_t workers, std::string const& baseDirectory) {
            auto suite = bench::parseSuite(text, baseDirectory);
            bench::BenchOptions options;
            options.timeoutSeconds = timeout;
            options.workers = workers;
            py::gil_scoped_release release;
            return bench::toCsv(bench::runSuite(suite, options));
        },
        py::arg("suite"), py::arg("timeout") = 1800.0, py::arg("workers") = 1, py::arg("base_directory") = "");
}
