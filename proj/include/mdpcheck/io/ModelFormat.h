#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mdpcheck/model/SparseMdp.h"

namespace mdpcheck::io {

/// Parses a model document:
///   {"states": N, "initial": i, "labels": {"name": [states...]},
///    "rewards": {"state": "p/q", ...}, "transitions": [[[[succ, "p/q"], ...], ...], ...]}
/// "rewards" is optional; listed states carry the given reward, others 0.
/// Probabilities and rewards are integers or strings holding a fraction or
/// a terminating decimal. Errors: ParseError(line, reason) and the
/// validation errors of buildMdp.
model::SparseMdp parseModel(std::string_view text);

/// Canonical text: one state per line, successors ascending, rationals in
/// lowest terms, only nonzero rewards listed. parseModel(writeModel(m)) == m.
std::string writeModel(model::SparseMdp const& mdp);

model::SparseMdp readModelFile(std::filesystem::path const& path);
void writeModelFile(std::filesystem::path const& path, model::SparseMdp const& mdp);

}  // namespace mdpcheck::io
