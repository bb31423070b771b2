#include "mdpcheck/bench/Runner.h"

#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "mdpcheck/Errors.h"
#include "mdpcheck/graph/Quotient.h"

namespace mdpcheck::bench {

namespace {

using Key = std::pair<std::string, std::string>;

struct Prepared {
    std::shared_ptr<model::SparseMdp const> mdp;
    std::optional<graph::Quotient> quotient;
    double buildMs = 0;
    std::string error;
};

double millisecondsSince(solver::Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(solver::Clock::now() - start).count();
}

BenchRow makeRow(std::string model, std::string objective, std::string algorithm, std::string config) {
    BenchRow row;
    row.model = std::move(model);
    row.objective = std::move(objective);
    row.algorithm = std::move(algorithm);
    row.config = std::move(config);
    return row;
}

std::string formatValue(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

BenchRow runEntry(SuiteEntry const& entry, Prepared const& prepared, BenchOptions const& options) {
    BenchRow row = makeRow(entry.model, entry.objective, std::string(solver::toString(entry.config.algorithm)), solver::describeConfig(entry.config));
    if (!prepared.quotient) {
        row.status = RunStatus::Error;
        row.message = prepared.error;
        return row;
    }
    auto start = solver::Clock::now();
    try {
        auto env = solver::Environment::withTimeout(options.timeoutSeconds);
        auto raw = solver::solvePreprocessed(*prepared.quotient, entry.config, env);
        auto result = solver::liftResult(*prepared.mdp, *prepared.quotient, raw);
        row.timeMs = millisecondsSince(start);
        row.iterations = result.iterations;
        auto initial = prepared.mdp->getInitialState();
        std::optional<double> value;
        if (result.values.isInfinite(initial)) {
            row.value = "inf";
        } else {
            value = result.values[initial];
            row.value = formatValue(*value);
        }
        row.status = row.timeMs > options.timeoutSeconds * 1000 ? RunStatus::Timeout : classify(value, entry.reference, options.rule);
    } catch (IterationError const& e) {
        row.timeMs = millisecondsSince(start);
        row.iterations = e.iterations();
        row.status = e.code() == ErrorCode::Timeout ? RunStatus::Timeout : RunStatus::Error;
        row.message = e.what();
    } catch (std::exception const& e) {
        row.timeMs = millisecondsSince(start);
        row.status = RunStatus::Error;
        row.message = e.what();
    }
    return row;
}

std::string csvField(std::string const& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return quoted + "\"";
}

std::vector<std::string> splitCsvLine(std::string const& line, std::size_t lineNumber) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) {
        throw ParseError(lineNumber, "unterminated quoted field");
    }
    return fields;
}

}  // namespace

std::vector<BenchRow> runSuite(Suite const& suite, BenchOptions const& options) {
    std::map<std::string, std::pair<std::shared_ptr<model::SparseMdp const>, double>> models;
    std::map<std::string, std::string> modelErrors;
    std::map<Key, Prepared> prepared;
    std::vector<bool> firstOfPair(suite.entries.size(), false);
    for (std::size_t i = 0; i < suite.entries.size(); ++i) {
        auto const& entry = suite.entries[i];
        Key key{entry.model, entry.objective};
        if (prepared.count(key)) {
            continue;
        }
        firstOfPair[i] = true;
        Prepared& slot = prepared[key];
        if (!models.count(entry.model) && !modelErrors.count(entry.model)) {
            auto start = solver::Clock::now();
            try {
                auto mdp = std::make_shared<model::SparseMdp const>(loadSuiteModel(suite, entry.model));
                models.emplace(entry.model, std::make_pair(std::move(mdp), millisecondsSince(start)));
            } catch (std::exception const& e) {
                modelErrors.emplace(entry.model, e.what());
            }
        }
        if (auto error = modelErrors.find(entry.model); error != modelErrors.end()) {
            slot.error = error->second;
            continue;
        }
        auto const& [mdp, loadMs] = models.at(entry.model);
        slot.mdp = mdp;
        auto start = solver::Clock::now();
        try {
            auto objective = model::parseObjective(*mdp, entry.objective);
            slot.quotient = graph::collapseMecs(*mdp, objective);
        } catch (std::exception const& e) {
            slot.error = e.what();
        }
        slot.buildMs = loadMs + millisecondsSince(start);
    }

    std::vector<BenchRow> runs(suite.entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < suite.entries.size(); i = next++) {
            auto const& entry = suite.entries[i];
            runs[i] = runEntry(entry, prepared.at({entry.model, entry.objective}), options);
        }
    };
    std::size_t const threads = std::max<std::size_t>(1, std::min(options.workers, suite.entries.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& thread : pool) {
        thread.join();
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < suite.entries.size(); ++i) {
        auto const& entry = suite.entries[i];
        if (options.buildRows && firstOfPair[i]) {
            auto const& slot = prepared.at({entry.model, entry.objective});
            BenchRow build = makeRow(entry.model, entry.objective, "build", "-");
            build.status = slot.quotient ? RunStatus::NoReference : RunStatus::Error;
            build.timeMs = slot.buildMs;
            build.message = slot.error;
            rows.push_back(std::move(build));
        }
        rows.push_back(std::move(runs[i]));
    }
    return rows;
}

std::string_view csvHeader() {
    return "model,objective,algorithm,config,status,value,time_ms,iterations";
}

std::string toCsv(std::vector<BenchRow> const& rows) {
    std::ostringstream out;
    out << csvHeader() << '\n';
    char time[32];
    for (auto const& row : rows) {
        std::snprintf(time, sizeof(time), "%.3f", row.timeMs);
        out << csvField(row.model) << ',' << csvField(row.objective) << ',' << csvField(row.algorithm) << ',' << csvField(row.config) << ','
            << toString(row.status) << ',' << csvField(row.value) << ',' << time << ',' << row.iterations << '\n';
    }
    return out.str();
}

std::vector<BenchRow> parseCsv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<BenchRow> rows;
    std::size_t lineNumber = 0;
    while (std::getline(in, line)) {
        ++lineNumber;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (lineNumber == 1) {
            if (line != csvHeader()) {
                throw ParseError(1, "unexpected CSV header");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        auto fields = splitCsvLine(line, lineNumber);
        if (fields.size() != 8) {
            throw ParseError(lineNumber, "expected 8 fields, got " + std::to_string(fields.size()));
        }
        BenchRow row = makeRow(fields[0], fields[1], fields[2], fields[3]);
        try {
            row.status = parseRunStatus(fields[4]);
            row.value = fields[5];
            row.timeMs = std::stod(fields[6]);
            row.iterations = std::stoul(fields[7]);
        } catch (Error const& e) {
            throw ParseError(lineNumber, e.what());
        } catch (std::logic_error const&) {
            throw ParseError(lineNumber, "malformed number");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mdpcheck::bench
