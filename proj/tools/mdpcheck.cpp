#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mdpcheck/Errors.h"
#include "mdpcheck/bench/Hardness.h"
#include "mdpcheck/bench/Runner.h"
#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/io/ModelFormat.h"
#include "mdpcheck/solver/Solve.h"

using namespace mdpcheck;

namespace {

std::string formatDouble(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string formatEntry(model::ValueVector<double> const& values, std::size_t s) {
    return values.isInfinite(s) ? "inf" : formatDouble(values[s]);
}

struct CheckArgs {
    std::string model;
    std::string objective;
    std::string algorithm = "vi";
    std::optional<double> epsilon;
    std::optional<std::string> evaluator;
    std::optional<double> timeout;
    bool topological = false;
    bool showPolicy = false;
};

int runCheck(CheckArgs const& args) {
    auto mdp = io::readModelFile(args.model);
    auto objective = model::parseObjective(mdp, args.objective);
    std::string spec = args.algorithm;
    auto append = [&](std::string const& option) { spec += (spec.find(':') == std::string::npos ? ":" : ",") + option; };
    if (args.epsilon) {
        append("eps=" + formatDouble(*args.epsilon));
    }
    if (args.evaluator) {
        append("evaluator=" + *args.evaluator);
    }
    if (args.topological) {
        append("topo=1");
    }
    auto config = solver::parseSolverConfig(spec);
    config.timeoutSeconds = args.timeout;
    auto result = solver::solve(mdp, objective, config);

    auto const initial = mdp.getInitialState();
    std::cout << "model: " << args.model << " (" << mdp.getNumberOfStates() << " states, " << mdp.getNumberOfChoices() << " actions)\n";
    std::cout << "objective: " << args.objective << "\n";
    std::cout << "algorithm: " << solver::toString(config.algorithm) << " (" << solver::describeConfig(config) << ")\n";
    if (result.values.isInfinite(initial)) {
        std::cout << "value: inf\n";
    } else if (result.exactValues) {
        std::cout << "value: " << toString((*result.exactValues)[initial]) << "\n";
        std::cout << "approx: " << formatDouble(result.values[initial]) << "\n";
    } else {
        std::cout << "value: " << formatDouble(result.values[initial]) << "\n";
    }
    if (result.lower && result.upper) {
        std::cout << "bounds: [" << formatEntry(*result.lower, initial) << ", " << formatEntry(*result.upper, initial) << "]\n";
        std::cout << "certified: " << (result.epsilonCertified ? "yes" : "no") << "\n";
    }
    std::cout << "soundness: " << solver::toString(result.soundness) << "\n";
    std::cout << "iterations: " << result.iterations << "\n";
    std::cout << "backend-calls: " << result.backendCalls << "\n";
    char times[96];
    std::snprintf(times, sizeof(times), "preprocess %.3f ms, solve %.3f ms", result.preprocessSeconds * 1000, result.solveSeconds * 1000);
    std::cout << "time: " << times << "\n";
    if (args.showPolicy && result.policy) {
        std::cout << "policy:";
        for (auto choice : result.policy->choices) {
            std::cout << ' ' << choice;
        }
        std::cout << "\n";
    }
    return 0;
}

struct GenerateArgs {
    std::string family;
    std::size_t n = 2;
    std::string delta = "1/10";
    gen::RandomMdpOptions random;
    unsigned maxReward = 0;
    std::string output;
};

int runGenerate(GenerateArgs args) {
    model::SparseMdp mdp;
    if (args.family == "hard-mn") {
        mdp = gen::genHardMn(args.n);
    } else if (args.family == "pi-trap") {
        mdp = gen::genPiTrap(parseRational(args.delta));
    } else {
        if (args.maxReward > 0) {
            args.random.maxReward = args.maxReward;
        }
        mdp = gen::genRandomMdp(args.random);
    }
    if (args.output.empty()) {
        std::cout << io::writeModel(mdp);
    } else {
        io::writeModelFile(args.output, mdp);
    }
    return 0;
}

struct BenchArgs {
    std::string suite;
    double timeout = 1800;
    std::size_t workers = 1;
    std::string output;
    bool noBuildRows = false;
};

int runBench(BenchArgs const& args) {
    auto suite = bench::readSuiteFile(args.suite);
    bench::BenchOptions options;
    options.timeoutSeconds = args.timeout;
    options.workers = args.workers;
    options.buildRows = !args.noBuildRows;
    auto rows = bench::runSuite(suite, options);
    for (auto const& row : rows) {
        if (!row.message.empty()) {
            std::cerr << row.model << ' ' << row.objective << ' ' << row.algorithm << ": " << row.message << "\n";
        }
    }
    auto csv = bench::toCsv(rows);
    if (args.output.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(args.output);
        if (!out) {
            throw Error(ErrorCode::BadParameter, "cannot write " + args.output);
        }
        out << csv;
    }
    return 0;
}

int runHardness(std::string const& path, double floorMs) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::BadParameter, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    bench::HardnessOptions options;
    options.floorMs = floorMs;
    for (auto const& instance : bench::hardInstances(bench::parseCsv(buffer.str()), options)) {
        char times[64];
        std::snprintf(times, sizeof(times), "%.3f %.3f", instance.viMs, instance.buildMs);
        std::cout << instance.model << ' ' << instance.objective << ' ' << times << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit-state MDP model checker and benchmark harness"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* checkCmd = app.add_subcommand("check", "Solve one objective on a model file");
    checkCmd->add_option("model", check.model, "Model file")->required();
    checkCmd->add_option("-o,--objective", check.objective, "reach:{min|max}:<label> or reward:{min|max}")->required();
    checkCmd->add_option("-a,--algorithm", check.algorithm, "vi, ovi, pi, or lp with optional :key=value,... options");
    checkCmd->add_option("--epsilon", check.epsilon, "Convergence threshold (VI, OVI, iterative PI evaluator)");
    checkCmd->add_option("--evaluator", check.evaluator, "PI evaluator: exact, float, or iterative");
    checkCmd->add_option("--timeout", check.timeout, "Wall-clock limit in seconds");
    checkCmd->add_flag("--topological", check.topological, "Solve SCC by SCC");
    checkCmd->add_flag("--policy", check.showPolicy, "Print the witness policy");

    GenerateArgs generate;
    auto* generateCmd = app.add_subcommand("generate", "Write a generated model");
    generateCmd->add_option("family", generate.family, "hard-mn, pi-trap, or random")->required()->check(CLI::IsMember({"hard-mn", "pi-trap", "random"}));
    generateCmd->add_option("--n", generate.n, "Size of M_n");
    generateCmd->add_option("--delta", generate.delta, "Escape probability of the trap model");
    generateCmd->add_option("--seed", generate.random.seed, "Random seed");
    generateCmd->add_option("--states", generate.random.numStates, "Number of states");
    generateCmd->add_option("--actions", generate.random.maxActions, "Maximum actions per state");
    generateCmd->add_option("--density", generate.random.density, "Successor fraction per action");
    generateCmd->add_option("--targets", generate.random.targetFraction, "Goal state fraction");
    generateCmd->add_option("--max-reward", generate.maxReward, "Attach integer rewards up to this bound");
    generateCmd->add_flag("--acyclic", generate.random.acyclic, "Only edges to higher states");
    generateCmd->add_option("--out", generate.output, "Output file (default: stdout)");

    BenchArgs benchArgs;
    auto* benchCmd = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
    benchCmd->add_option("suite", benchArgs.suite, "Suite file")->required();
    benchCmd->add_option("--timeout", benchArgs.timeout, "Per-run limit in seconds");
    benchCmd->add_option("--workers", benchArgs.workers, "Concurrent runs");
    benchCmd->add_option("--out", benchArgs.output, "CSV file (default: stdout)");
    benchCmd->add_flag("--no-build-rows", benchArgs.noBuildRows, "Omit the per-instance build timing rows");

    std::string hardnessCsv;
    double floorMs = 1000;
    auto* hardnessCmd = app.add_subcommand("hardness", "List hard instances from bench CSV");
    hardnessCmd->add_option("csv", hardnessCsv, "Bench results")->required();
    hardnessCmd->add_option("--floor-ms", floorMs, "Minimum combined build and VI time");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*checkCmd) {
            return runCheck(check);
        }
        if (*generateCmd) {
            return runGenerate(generate);
        }
        if (*benchCmd) {
            return runBench(benchArgs);
        }
        return runHardness(hardnessCsv, floorMs);
    } catch (Error const& e) {
        std::cerr << "error (" << toString(e.code()) << "): " << e.what() << "\n";
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
