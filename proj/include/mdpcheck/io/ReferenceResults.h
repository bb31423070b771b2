#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "mdpcheck/Rational.h"

namespace mdpcheck::io {

/// A reference value; nullopt stands for an infinite expected reward.
using ReferenceValue = std::optional<Rational>;

/// (model-id, objective-id) -> value.
using ReferenceTable = std::map<std::pair<std::string, std::string>, ReferenceValue>;

/// Lines "model-id objective-id value" where value is a fraction, a
/// terminating decimal, or "inf". Blank lines and '#' comments are skipped.
/// Errors: ParseError.
ReferenceTable parseReferences(std::string_view text);

/// Canonical rendering, sorted by key, values in lowest terms.
std::string writeReferences(ReferenceTable const& table);

/// "inf" or the lowest-terms rational.
ReferenceValue parseReferenceValue(std::string_view text);

}  // namespace mdpcheck::io
