#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mdpcheck/bench/Classification.h"
#include "mdpcheck/bench/Suite.h"

namespace mdpcheck::bench {

struct BenchOptions {
    double timeoutSeconds = 1800;
    std::size_t workers = 1;
    /// Emit one "build" row per (model, objective) with load + preprocessing
    /// time, used by the hardness filter.
    bool buildRows = true;
    ClassificationRule rule{};
};

/// One CSV row. Algorithm rows report the numerical solve time; build rows
/// (algorithm "build") the model load and preprocessing time.
struct BenchRow {
    std::string model;
    std::string objective;
    std::string algorithm;
    std::string config;
    RunStatus status = RunStatus::NoReference;
    /// Value at the initial state: decimal, "inf", or empty.
    std::string value;
    double timeMs = 0;
    std::size_t iterations = 0;
    /// Diagnostic for error rows; not part of the CSV.
    std::string message;
};

/// Runs every entry with a per-run deadline on up to `workers` threads.
/// Rows follow suite order: each (model, objective) pair's build row comes
/// right before its first run.
std::vector<BenchRow> runSuite(Suite const& suite, BenchOptions const& options = {});

std::string_view csvHeader();
std::string toCsv(std::vector<BenchRow> const& rows);
/// Errors: ParseError on schema violations.
std::vector<BenchRow> parseCsv(std::string_view text);

}  // namespace mdpcheck::bench
