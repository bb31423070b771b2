#include "mdpcheck/bench/Hardness.h"

#include <map>

namespace mdpcheck::bench {

bool isHard(double viMs, double buildMs, HardnessOptions const& options) {
    return viMs > buildMs && viMs + buildMs >= options.floorMs;
}

std::vector<HardInstance> hardInstances(std::vector<BenchRow> const& rows, HardnessOptions const& options) {
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, HardInstance> found;
    std::map<std::pair<std::string, std::string>, std::pair<bool, bool>> seen;
    for (auto const& row : rows) {
        auto key = std::make_pair(row.model, row.objective);
        auto [it, inserted] = found.try_emplace(key, HardInstance{row.model, row.objective, 0, 0});
        if (inserted) {
            order.push_back(key);
        }
        auto& [hasVi, hasBuild] = seen[key];
        if (row.algorithm == "build" && !hasBuild) {
            it->second.buildMs = row.timeMs;
            hasBuild = true;
        } else if (row.algorithm == "vi" && !hasVi) {
            it->second.viMs = row.timeMs;
            hasVi = true;
        }
    }
    std::vector<HardInstance> result;
    for (auto const& key : order) {
        auto [hasVi, hasBuild] = seen[key];
        auto const& instance = found[key];
        if (hasVi && hasBuild && isHard(instance.viMs, instance.buildMs, options)) {
            result.push_back(instance);
        }
    }
    return result;
}

}  // namespace mdpcheck::bench
