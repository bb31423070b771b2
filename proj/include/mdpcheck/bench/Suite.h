#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdpcheck/io/ReferenceResults.h"
#include "mdpcheck/model/SparseMdp.h"
#include "mdpcheck/solver/Solve.h"

namespace mdpcheck::bench {

/// One suite line: `model objective algorithm[:options] [reference]`.
/// `model` is a path relative to the suite file or a generator spec
/// `gen:hard-mn:<n>` / `gen:pi-trap:<delta>`.
struct SuiteEntry {
    std::string model;
    std::string objective;
    std::string algorithm;
    solver::SolverConfig config;
    std::optional<io::ReferenceValue> reference;
    std::size_t line = 0;
};

struct Suite {
    std::filesystem::path baseDirectory;
    std::vector<SuiteEntry> entries;
};

/// Errors: ParseError for malformed lines, objectives, algorithm specs, or
/// reference values.
Suite parseSuite(std::string_view text, std::filesystem::path baseDirectory = {});
Suite readSuiteFile(std::filesystem::path const& path);

/// Loads a model named in a suite. Errors: BadParameter, ParseError, and
/// model validation errors.
model::SparseMdp loadSuiteModel(Suite const& suite, std::string const& model);

}  // namespace mdpcheck::bench
