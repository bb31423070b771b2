#include "mdpcheck/solver/Solve.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "mdpcheck/solver/Topological.h"

namespace mdpcheck::solver {

std::string_view toString(Soundness soundness) {
    switch (soundness) {
        case Soundness::Exact:
            return "exact";
        case Soundness::Sound:
            return "sound";
        case Soundness::Unsound:
            return "unsound";
    }
    return "unknown";
}

std::string_view toString(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::ValueIteration:
            return "vi";
        case Algorithm::OptimisticValueIteration:
            return "ovi";
        case Algorithm::PolicyIteration:
            return "pi";
        case Algorithm::LinearProgramming:
            return "lp";
    }
    return "unknown";
}

namespace {

[[noreturn]] void badConfig(std::string const& message) {
    throw Error(ErrorCode::BadParameter, "algorithm spec: " + message);
}

double parseDouble(std::string const& key, std::string const& value) {
    try {
        std::size_t used = 0;
        double result = std::stod(value, &used);
        if (used != value.size()) {
            badConfig("bad number '" + value + "' for " + key);
        }
        return result;
    } catch (std::logic_error const&) {
        badConfig("bad number '" + value + "' for " + key);
    }
}

std::size_t parseCount(std::string const& key, std::string const& value) {
    std::size_t result = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc() || end != value.data() + value.size()) {
        badConfig("bad count '" + value + "' for " + key);
    }
    return result;
}

bool parseFlag(std::string const& key, std::string const& value) {
    if (value == "1" || value == "true" || value == "on") {
        return true;
    }
    if (value == "0" || value == "false" || value == "off") {
        return false;
    }
    badConfig("bad flag '" + value + "' for " + key);
}

std::string formatNumber(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

}  // namespace

SolverConfig parseSolverConfig(std::string const& spec) {
    SolverConfig config;
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    if (name == "vi") {
        config.algorithm = Algorithm::ValueIteration;
    } else if (name == "ovi") {
        config.algorithm = Algorithm::OptimisticValueIteration;
    } else if (name == "pi") {
        config.algorithm = Algorithm::PolicyIteration;
    } else if (name == "lp") {
        config.algorithm = Algorithm::LinearProgramming;
    } else {
        badConfig("unknown algorithm '" + name + "'");
    }
    if (colon == std::string::npos) {
        return config;
    }

    bool const vi = config.algorithm == Algorithm::ValueIteration;
    bool const ovi = config.algorithm == Algorithm::OptimisticValueIteration;
    bool const pi = config.algorithm == Algorithm::PolicyIteration;
    bool const lp = config.algorithm == Algorithm::LinearProgramming;
    std::istringstream options(spec.substr(colon + 1));
    std::string item;
    while (std::getline(options, item, ',')) {
        if (item.empty()) {
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            badConfig("expected key=value, got '" + item + "'");
        }
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        auto requireFor = [&](bool allowed) {
            if (!allowed) {
                badConfig("option '" + key + "' does not apply to " + name);
            }
        };
        if (key == "eps") {
            requireFor(vi || ovi || pi);
            config.stop.epsilon = parseDouble(key, value);
            config.evaluator.stop.epsilon = config.stop.epsilon;
        } else if (key == "mode") {
            requireFor(vi || pi);
            if (value != "rel" && value != "abs") {
                badConfig("mode must be rel or abs");
            }
            config.stop.mode = value == "rel" ? Precision::Relative : Precision::Absolute;
            config.evaluator.stop.mode = config.stop.mode;
        } else if (key == "maxiter") {
            requireFor(vi || pi);
            config.stop.maxIterations = parseCount(key, value);
            config.evaluator.stop.maxIterations = config.stop.maxIterations;
        } else if (key == "verify") {
            requireFor(ovi);
            config.ovi.verificationFactor = parseDouble(key, value);
        } else if (key == "rounds") {
            requireFor(ovi);
            config.ovi.maxRounds = parseCount(key, value);
        } else if (key == "evaluator") {
            requireFor(pi);
            if (value == "exact") {
                config.evaluator.kind = EvaluatorKind::ExactElimination;
            } else if (value == "float") {
                config.evaluator.kind = EvaluatorKind::FloatElimination;
            } else if (value == "iterative") {
                config.evaluator.kind = EvaluatorKind::Iterative;
            } else {
                badConfig("evaluator must be exact, float, or iterative");
            }
        } else if (key == "tol") {
            requireFor(pi);
            config.pi.improvementTolerance = parseDouble(key, value);
        } else if (key == "warm") {
            requireFor(pi || lp);
            config.warmStart = parseFlag(key, value);
        } else if (key == "bounds") {
            requireFor(lp);
            if (value != "trivial" && value != "warm") {
                badConfig("bounds must be trivial or warm");
            }
            config.warmStart = value == "warm";
        } else if (key == "warmiter") {
            requireFor(pi || lp);
            config.warmStartIterations = parseCount(key, value);
        } else if (key == "field") {
            requireFor(lp);
            if (value != "rational" && value != "float") {
                badConfig("field must be rational or float");
            }
            config.lpField = value == "rational" ? LpField::Rational : LpField::Float;
        } else if (key == "objective") {
            requireFor(lp);
            if (value != "all" && value != "init") {
                badConfig("objective must be all or init");
            }
            config.lpObjective = value == "all" ? LpObjectiveMode::AllStates : LpObjectiveMode::InitialOnly;
        } else if (key == "eq") {
            requireFor(lp);
            config.lpUniqueActionEquality = parseFlag(key, value);
        } else if (key == "topo") {
            config.topological = parseFlag(key, value);
        } else {
            badConfig("unknown option '" + key + "'");
        }
    }
    config.stop.validate();
    if (config.ovi.maxRounds == 0 || !(config.ovi.verificationFactor > 0)) {
        badConfig("OVI needs positive rounds and verification factor");
    }
    return config;
}

std::string describeConfig(SolverConfig const& config) {
    SolverConfig const defaults;
    std::vector<std::string> parts;
    auto add = [&](std::string key, std::string value) { parts.push_back(std::move(key) + "=" + std::move(value)); };
    switch (config.algorithm) {
        case Algorithm::ValueIteration:
            if (config.stop.epsilon != defaults.stop.epsilon) {
                add("eps", formatNumber(config.stop.epsilon));
            }
            if (config.stop.mode != defaults.stop.mode) {
                add("mode", "abs");
            }
            break;
        case Algorithm::OptimisticValueIteration:
            if (config.stop.epsilon != defaults.stop.epsilon) {
                add("eps", formatNumber(config.stop.epsilon));
            }
            if (config.ovi.verificationFactor != defaults.ovi.verificationFactor) {
                add("verify", formatNumber(config.ovi.verificationFactor));
            }
            if (config.ovi.maxRounds != defaults.ovi.maxRounds) {
                add("rounds", std::to_string(config.ovi.maxRounds));
            }
            break;
        case Algorithm::PolicyIteration:
            if (config.evaluator.kind != defaults.evaluator.kind) {
                add("evaluator", config.evaluator.kind == EvaluatorKind::FloatElimination ? "float" : "iterative");
            }
            if (config.evaluator.kind == EvaluatorKind::Iterative && config.evaluator.stop.epsilon != defaults.evaluator.stop.epsilon) {
                add("eps", formatNumber(config.evaluator.stop.epsilon));
            }
            if (config.pi.improvementTolerance != defaults.pi.improvementTolerance) {
                add("tol", formatNumber(config.pi.improvementTolerance));
            }
            if (config.warmStart) {
                add("warm", "1");
            }
            break;
        case Algorithm::LinearProgramming:
            if (config.lpField != defaults.lpField) {
                add("field", "float");
            }
            if (config.warmStart) {
                add("bounds", "warm");
            }
            if (config.lpObjective != defaults.lpObjective) {
                add("objective", "init");
            }
            if (config.lpUniqueActionEquality) {
                add("eq", "1");
            }
            break;
    }
    if (config.warmStart && config.warmStartIterations != defaults.warmStartIterations) {
        add("warmiter", std::to_string(config.warmStartIterations));
    }
    if (config.topological) {
        add("topo", "1");
    }
    if (parts.empty()) {
        return "default";
    }
    std::string result = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        result += "," + parts[i];
    }
    return result;
}

namespace {

/// Lowest action of `s` whose successors all satisfy `inside` and, if
/// `progress` is given, one of which satisfies it.
template<typename Inside, typename Progress>
std::optional<std::size_t> findAction(model::SparseMdp const& mdp, std::size_t s, Inside inside, Progress progress) {
    for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
        bool closed = true;
        bool progresses = false;
        for (auto const& t : mdp.getTransitions(s, a)) {
            closed = closed && inside(t.target);
            progresses = progresses || progress(t.target);
        }
        if (closed && progresses) {
            return a;
        }
    }
    return std::nullopt;
}

/// Completes `choices` on the states of `region` by a backward attractor
/// towards `seed` using actions that stay inside `region`.
void attractorPolicy(model::SparseMdp const& mdp, std::vector<bool> const& region, std::vector<bool> reached, std::vector<std::size_t>& choices) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
            if (!region[s] || reached[s]) {
                continue;
            }
            auto action = findAction(
                mdp, s, [&](std::size_t t) { return region[t] || reached[t]; }, [&](std::size_t t) { return reached[t]; });
            if (action) {
                choices[s] = *action;
                reached[s] = true;
                changed = true;
            }
        }
    }
}

template<typename ValueType>
model::ValueVector<ValueType> liftValues(graph::Quotient const& quotient, model::ValueVector<ValueType> const& values) {
    std::size_t const n = quotient.stateMap.size();
    model::ValueVector<ValueType> result(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto q = quotient.stateMap[s];
        if (q == graph::Quotient::infiniteState) {
            result.setInfinite(s);
        } else {
            result.set(s, values[q]);
        }
    }
    return result;
}

model::Policy liftPolicy(model::SparseMdp const& mdp, graph::Quotient const& quotient, model::Policy const& policy) {
    std::size_t const n = mdp.getNumberOfStates();
    std::size_t const k = quotient.numberOfMaybeStates();
    model::Policy result = model::Policy::lowestIndex(n);

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t s = 0; s < n; ++s) {
        if (quotient.stateMap[s] < k) {
            members[quotient.stateMap[s]].push_back(s);
        }
    }
    for (std::size_t q = 0; q < k; ++q) {
        auto [exitState, exitAction] = quotient.origin[q][policy.choices[q]];
        result.choices[exitState] = exitAction;
        if (members[q].size() == 1) {
            continue;
        }
        std::vector<bool> region(n, false);
        std::vector<bool> seed(n, false);
        for (auto s : members[q]) {
            region[s] = true;
        }
        region[exitState] = false;
        seed[exitState] = true;
        attractorPolicy(mdp, region, seed, result.choices);
    }

    std::vector<bool> sink(n, false);
    std::vector<bool> target(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        sink[s] = quotient.stateMap[s] == quotient.sink;
        target[s] = quotient.stateMap[s] == quotient.target;
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (sink[s]) {
            auto action = findAction(
                mdp, s, [&](std::size_t t) { return sink[t]; }, [](std::size_t) { return true; });
            result.choices[s] = action.value_or(0);
        }
    }
    auto const& objective = quotient.objective;
    if (objective.isReachability() && !model::minimize(objective.direction)) {
        std::vector<bool> region(n, false);
        std::vector<bool> seed(n, false);
        for (std::size_t s = 0; s < n; ++s) {
            seed[s] = objective.target.get(s);
            region[s] = target[s] && !seed[s];
        }
        attractorPolicy(mdp, region, seed, result.choices);
    }
    return result;
}

}  // namespace

SolveResult liftResult(model::SparseMdp const& mdp, graph::Quotient const& quotient, SolveResult const& quotientResult) {
    SolveResult result = quotientResult;
    result.values = liftValues(quotient, quotientResult.values);
    if (quotientResult.exactValues) {
        result.exactValues = liftValues(quotient, *quotientResult.exactValues);
    }
    if (quotientResult.lower) {
        result.lower = liftValues(quotient, *quotientResult.lower);
    }
    if (quotientResult.upper) {
        result.upper = liftValues(quotient, *quotientResult.upper);
    }
    if (quotientResult.policy) {
        result.policy = liftPolicy(mdp, quotient, *quotientResult.policy);
    }
    return result;
}

model::Policy projectPolicy(graph::Quotient const& quotient, model::Policy const& policy) {
    if (policy.choices.size() != quotient.stateMap.size()) {
        throw Error(ErrorCode::DimensionMismatch, "policy does not cover the model's states");
    }
    model::Policy result = model::Policy::lowestIndex(quotient.model.getNumberOfStates());
    for (std::size_t q = 0; q < quotient.numberOfMaybeStates(); ++q) {
        auto const& origin = quotient.origin[q];
        for (std::size_t a = 0; a < origin.size(); ++a) {
            if (policy.choices[origin[a].first] == origin[a].second) {
                result.choices[q] = a;
                break;
            }
        }
    }
    return result;
}

SolveResult solvePreprocessed(graph::Quotient const& quotient, SolverConfig const& config, Environment const& env) {
    auto start = Clock::now();
    std::optional<model::Policy> initial;
    std::optional<std::vector<Rational>> warmLower;
    if (config.algorithm == Algorithm::PolicyIteration) {
        if (config.warmStart) {
            initial = warmStartPolicy(quotient, viEstimates(quotient, config.warmStartIterations));
        } else if (config.initialPolicy) {
            initial = projectPolicy(quotient, *config.initialPolicy);
        }
    }
    if (config.algorithm == Algorithm::LinearProgramming && config.warmStart) {
        auto estimates = viEstimates(quotient, config.warmStartIterations);
        warmLower.emplace();
        for (std::size_t s = 0; s < quotient.numberOfMaybeStates(); ++s) {
            warmLower->push_back(fromDouble(estimates[s]));
        }
    }

    SolveResult result;
    if (config.topological) {
        result = solveTopological(quotient, config, env, initial, warmLower);
    } else {
        switch (config.algorithm) {
            case Algorithm::ValueIteration:
                result = solveVi(quotient, config.stop, env);
                break;
            case Algorithm::OptimisticValueIteration:
                result = solveOvi(quotient, config.stop.epsilon, config.ovi, env);
                break;
            case Algorithm::PolicyIteration:
                result = solvePi(quotient, config.evaluator, initial, config.pi, env);
                break;
            case Algorithm::LinearProgramming: {
                LpOptions options;
                options.objective = config.lpObjective;
                options.uniqueActionEquality = config.lpUniqueActionEquality;
                options.warmLowerBounds = warmLower;
                result = solveLp(quotient, options, config.lpField, config.simplex, env);
                break;
            }
        }
    }
    result.solveSeconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

SolveResult solve(model::SparseMdp const& mdp, model::Objective const& objective, SolverConfig const& config) {
    objective.validateFor(mdp);
    auto start = Clock::now();
    Environment env = config.timeoutSeconds ? Environment::withTimeout(*config.timeoutSeconds) : Environment{};
    auto quotient = graph::collapseMecs(mdp, objective);
    auto preprocessed = Clock::now();
    auto result = liftResult(mdp, quotient, solvePreprocessed(quotient, config, env));
    result.preprocessSeconds = std::chrono::duration<double>(preprocessed - start).count();
    return result;
}

}  // namespace mdpcheck::solver
