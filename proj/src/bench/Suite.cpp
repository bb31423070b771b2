#include "mdpcheck/bench/Suite.h"

#include <fstream>
#include <regex>
#include <sstream>

#include "mdpcheck/Errors.h"
#include "mdpcheck/gen/Generators.h"
#include "mdpcheck/io/ModelFormat.h"

namespace mdpcheck::bench {

Suite parseSuite(std::string_view text, std::filesystem::path baseDirectory) {
    static std::regex const objectivePattern(R"(reach:(min|max):[^:\s]+|reward:(min|max))");
    Suite suite;
    suite.baseDirectory = std::move(baseDirectory);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNumber = 0;
    while (std::getline(in, line)) {
        ++lineNumber;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        SuiteEntry entry;
        entry.line = lineNumber;
        if (!(fields >> entry.model)) {
            continue;
        }
        std::string reference;
        std::string extra;
        if (!(fields >> entry.objective >> entry.algorithm)) {
            throw ParseError(lineNumber, "expected 'model objective algorithm [reference]'");
        }
        if (fields >> reference && fields >> extra) {
            throw ParseError(lineNumber, "unexpected trailing field '" + extra + "'");
        }
        if (!std::regex_match(entry.objective, objectivePattern)) {
            throw ParseError(lineNumber, "malformed objective '" + entry.objective + "'");
        }
        try {
            entry.config = solver::parseSolverConfig(entry.algorithm);
            if (!reference.empty()) {
                entry.reference = io::parseReferenceValue(reference);
            }
        } catch (Error const& e) {
            throw ParseError(lineNumber, e.what());
        } catch (std::invalid_argument const& e) {
            throw ParseError(lineNumber, e.what());
        }
        suite.entries.push_back(std::move(entry));
    }
    return suite;
}

Suite readSuiteFile(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::BadParameter, "cannot open suite file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseSuite(buffer.str(), path.parent_path());
}

model::SparseMdp loadSuiteModel(Suite const& suite, std::string const& model) {
    if (model.rfind("gen:", 0) == 0) {
        auto rest = model.substr(4);
        auto colon = rest.find(':');
        auto family = rest.substr(0, colon);
        auto parameter = colon == std::string::npos ? std::string() : rest.substr(colon + 1);
        try {
            if (family == "hard-mn") {
                return gen::genHardMn(std::stoul(parameter));
            }
            if (family == "pi-trap") {
                return gen::genPiTrap(parseRational(parameter));
            }
        } catch (std::logic_error const&) {
            throw Error(ErrorCode::BadParameter, "bad generator parameter in '" + model + "'");
        }
        throw Error(ErrorCode::BadParameter, "unknown generator '" + family + "'");
    }
    return io::readModelFile(suite.baseDirectory / model);
}

}  // namespace mdpcheck::bench
