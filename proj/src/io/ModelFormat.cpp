#include "mdpcheck/io/ModelFormat.h"

#include <fstream>
#include <json.hpp>
#include <limits>
#include <map>
#include <sstream>

#include "mdpcheck/Errors.h"

namespace mdpcheck::io {

namespace {

using Json = nlohmann::json;

/// Line on which each value of the document starts, keyed by JSON pointer,
/// for values at most three levels deep.
class LineIndex {
   public:
    explicit LineIndex(std::string_view text) {
        struct Frame {
            bool array;
            std::size_t index = std::numeric_limits<std::size_t>::max();
            std::string key;
            bool expectKey = true;
        };
        std::vector<Frame> stack;
        std::size_t line = 1;
        auto valueStart = [&]() {
            if (!stack.empty() && stack.back().array) {
                ++stack.back().index;
            }
            if (stack.size() > 3) {
                return;
            }
            std::string pointer;
            for (auto const& frame : stack) {
                pointer += "/" + (frame.array ? std::to_string(frame.index) : frame.key);
            }
            lines.emplace(pointer, line);
        };
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            switch (c) {
                case '\n':
                    ++line;
                    break;
                case ' ':
                case '\t':
                case '\r':
                case ':':
                    break;
                case ',':
                    if (!stack.empty() && !stack.back().array) {
                        stack.back().expectKey = true;
                    }
                    break;
                case '{':
                case '[':
                    valueStart();
                    stack.push_back(Frame{c == '[', std::numeric_limits<std::size_t>::max(), {}, true});
                    break;
                case '}':
                case ']':
                    if (!stack.empty()) {
                        stack.pop_back();
                    }
                    break;
                case '"': {
                    std::size_t end = i + 1;
                    while (end < text.size() && text[end] != '"') {
                        end += text[end] == '\\' ? 2 : 1;
                    }
                    if (!stack.empty() && !stack.back().array && stack.back().expectKey) {
                        stack.back().key = std::string(text.substr(i + 1, end - i - 1));
                        stack.back().expectKey = false;
                    } else {
                        valueStart();
                    }
                    i = end;
                    break;
                }
                default:
                    valueStart();
                    while (i + 1 < text.size() && std::string_view(",]} \t\r\n").find(text[i + 1]) == std::string_view::npos) {
                        ++i;
                    }
                    break;
            }
        }
    }

    /// Line of the deepest recorded ancestor of `pointer`.
    std::size_t lineOf(std::string pointer) const {
        while (true) {
            if (auto it = lines.find(pointer); it != lines.end()) {
                return it->second;
            }
            if (pointer.empty()) {
                return 1;
            }
            pointer.erase(pointer.rfind('/'));
        }
    }

   private:
    std::map<std::string, std::size_t> lines;
};

class Reader {
   public:
    explicit Reader(std::string_view text) : index(text) {}

    [[noreturn]] void fail(std::string const& pointer, std::string const& reason) const {
        throw ParseError(index.lineOf(pointer), reason + (pointer.empty() ? "" : " (at " + pointer + ")"));
    }

    std::size_t count(Json const& value, std::string const& pointer) const {
        if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
            fail(pointer, "expected a nonnegative integer");
        }
        return value.get<std::size_t>();
    }

    Rational rational(Json const& value, std::string const& pointer) const {
        if (value.is_number_integer()) {
            return Rational(value.get<long>());
        }
        if (value.is_string()) {
            try {
                return parseRational(value.get<std::string>());
            } catch (std::invalid_argument const& e) {
                fail(pointer, e.what());
            }
        }
        if (value.is_number_float()) {
            fail(pointer, "non-integer numbers must be written as strings to stay exact");
        }
        fail(pointer, "expected a rational number");
    }

    Json const& member(Json const& object, std::string const& key, std::string const& pointer) const {
        auto it = object.find(key);
        if (it == object.end()) {
            fail(pointer, "missing field '" + key + "'");
        }
        return *it;
    }

   private:
    LineIndex index;
};

}  // namespace

model::SparseMdp parseModel(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (Json::parse_error const& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
            line += text[i] == '\n' ? 1 : 0;
        }
        std::string what = e.what();
        throw ParseError(line, what.substr(what.find(':') + 2));
    }
    Reader reader(text);
    if (!doc.is_object()) {
        reader.fail("", "a model document must be an object");
    }
    for (auto const& [key, value] : doc.items()) {
        if (key != "states" && key != "initial" && key != "labels" && key != "rewards" && key != "transitions") {
            reader.fail("/" + key, "unknown field '" + key + "'");
        }
    }

    model::RawMdp raw;
    raw.numStates = reader.count(reader.member(doc, "states", ""), "/states");
    raw.initialState = reader.count(reader.member(doc, "initial", ""), "/initial");
    if (raw.initialState >= raw.numStates) {
        reader.fail("/initial", "initial state " + std::to_string(raw.initialState) + " out of range");
    }

    if (auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_object()) {
            reader.fail("/labels", "labels must be an object");
        }
        for (auto const& [name, states] : it->items()) {
            std::string pointer = "/labels/" + name;
            if (!states.is_array()) {
                reader.fail(pointer, "label '" + name + "' must list states");
            }
            auto& members = raw.labels[name];
            for (std::size_t i = 0; i < states.size(); ++i) {
                members.push_back(reader.count(states[i], pointer + "/" + std::to_string(i)));
            }
        }
    }

    if (auto it = doc.find("rewards"); it != doc.end()) {
        if (!it->is_object()) {
            reader.fail("/rewards", "rewards must be an object");
        }
        raw.rewards = std::vector<Rational>(raw.numStates, Rational(0));
        for (auto const& [key, value] : it->items()) {
            std::string pointer = "/rewards/" + key;
            std::size_t state = 0;
            try {
                std::size_t used = 0;
                state = std::stoul(key, &used);
                if (used != key.size()) {
                    throw std::invalid_argument(key);
                }
            } catch (std::logic_error const&) {
                reader.fail(pointer, "reward key '" + key + "' is not a state index");
            }
            if (state >= raw.numStates) {
                reader.fail(pointer, "reward for state " + key + " out of range");
            }
            (*raw.rewards)[state] = reader.rational(value, pointer);
        }
    }

    auto const& transitions = reader.member(doc, "transitions", "");
    if (!transitions.is_array() || transitions.size() != raw.numStates) {
        reader.fail("/transitions", "transitions must list exactly " + std::to_string(raw.numStates) + " states");
    }
    raw.choices.resize(raw.numStates);
    for (std::size_t s = 0; s < raw.numStates; ++s) {
        std::string const statePointer = "/transitions/" + std::to_string(s);
        auto const& actions = transitions[s];
        if (!actions.is_array()) {
            reader.fail(statePointer, "state " + std::to_string(s) + ": expected a list of actions");
        }
        for (std::size_t a = 0; a < actions.size(); ++a) {
            std::string const actionPointer = statePointer + "/" + std::to_string(a);
            auto const& entries = actions[a];
            if (!entries.is_array()) {
                reader.fail(actionPointer, "state " + std::to_string(s) + " action " + std::to_string(a) + ": expected a list of [successor, probability]");
            }
            model::RawMdp::Distribution distribution;
            for (std::size_t e = 0; e < entries.size(); ++e) {
                std::string const entryPointer = actionPointer + "/" + std::to_string(e);
                auto const& entry = entries[e];
                if (!entry.is_array() || entry.size() != 2) {
                    reader.fail(entryPointer, "state " + std::to_string(s) + " action " + std::to_string(a) + ": expected [successor, probability]");
                }
                distribution.emplace_back(reader.count(entry[0], entryPointer), reader.rational(entry[1], entryPointer));
            }
            raw.choices[s].push_back(std::move(distribution));
        }
    }
    return model::buildMdp(raw);
}

std::string writeModel(model::SparseMdp const& mdp) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"states\": " << mdp.getNumberOfStates() << ",\n";
    out << "  \"initial\": " << mdp.getInitialState() << ",\n";
    out << "  \"labels\": {";
    bool firstLabel = true;
    for (auto const& [name, states] : mdp.getLabels()) {
        out << (firstLabel ? "" : ", ") << Json(name).dump() << ": [";
        auto const& members = states;
        for (std::size_t i = 0; i < members.size(); ++i) {
            out << (i ? ", " : "") << members[i];
        }
        out << "]";
        firstLabel = false;
    }
    out << "},\n";
    if (mdp.hasRewards()) {
        out << "  \"rewards\": {";
        bool firstReward = true;
        for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
            if (sgn(mdp.getReward(s)) != 0) {
                out << (firstReward ? "" : ", ") << "\"" << s << "\": \"" << toString(mdp.getReward(s)) << "\"";
                firstReward = false;
            }
        }
        out << "},\n";
    }
    out << "  \"transitions\": [\n";
    for (std::size_t s = 0; s < mdp.getNumberOfStates(); ++s) {
        out << "    [";
        for (std::size_t a = 0; a < mdp.getNumberOfChoices(s); ++a) {
            out << (a ? ", " : "") << "[";
            bool firstEntry = true;
            for (auto const& t : mdp.getTransitions(s, a)) {
                out << (firstEntry ? "" : ", ") << "[" << t.target << ", \"" << toString(t.probability) << "\"]";
                firstEntry = false;
            }
            out << "]";
        }
        out << "]" << (s + 1 < mdp.getNumberOfStates() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

model::SparseMdp readModelFile(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::BadParameter, "cannot open model file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseModel(buffer.str());
}

void writeModelFile(std::filesystem::path const& path, model::SparseMdp const& mdp) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::BadParameter, "cannot write model file " + path.string());
    }
    out << writeModel(mdp);
}

}  // namespace mdpcheck::io
