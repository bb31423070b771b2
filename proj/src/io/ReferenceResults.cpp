#include "mdpcheck/io/ReferenceResults.h"

#include <sstream>

#include "mdpcheck/Errors.h"

namespace mdpcheck::io {

ReferenceValue parseReferenceValue(std::string_view text) {
    if (text == "inf") {
        return std::nullopt;
    }
    return parseRational(text);
}

ReferenceTable parseReferences(std::string_view text) {
    ReferenceTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNumber = 0;
    while (std::getline(in, line)) {
        ++lineNumber;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string model;
        std::string objective;
        std::string value;
        std::string extra;
        if (!(fields >> model)) {
            continue;
        }
        if (!(fields >> objective >> value) || (fields >> extra)) {
            throw ParseError(lineNumber, "expected 'model-id objective-id value'");
        }
        ReferenceValue parsed;
        try {
            parsed = parseReferenceValue(value);
        } catch (std::invalid_argument const& e) {
            throw ParseError(lineNumber, e.what());
        }
        if (!table.emplace(std::make_pair(model, objective), parsed).second) {
            throw ParseError(lineNumber, "duplicate reference for " + model + " " + objective);
        }
    }
    return table;
}

std::string writeReferences(ReferenceTable const& table) {
    std::ostringstream out;
    for (auto const& [key, value] : table) {
        out << key.first << ' ' << key.second << ' ' << (value ? toString(*value) : std::string("inf")) << '\n';
    }
    return out.str();
}

}  // namespace mdpcheck::io
