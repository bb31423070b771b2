#pragma once

#include <string>
#include <vector>

#include "mdpcheck/bench/Runner.h"

namespace mdpcheck::bench {

struct HardnessOptions {
    /// Minimum combined build and VI time in milliseconds.
    double floorMs = 1000;
};

struct HardInstance {
    std::string model;
    std::string objective;
    double viMs = 0;
    double buildMs = 0;
};

/// Instances whose first VI run takes longer than building the model and
/// where both together take at least the floor. Instances without a VI row
/// or a build row are skipped.
std::vector<HardInstance> hardInstances(std::vector<BenchRow> const& rows, HardnessOptions const& options = {});

bool isHard(double viMs, double buildMs, HardnessOptions const& options = {});

}  // namespace mdpcheck::bench
