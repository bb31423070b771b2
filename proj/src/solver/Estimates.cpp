// Compiled with -frounding-math: the loop below runs under FE_DOWNWARD.
#include <cfenv>

#include "mdpcheck/solver/ValueIteration.h"

namespace mdpcheck::solver {

namespace {

class RoundingGuard {
   public:
    explicit RoundingGuard(int mode) : previous(std::fegetround()) {
        std::fesetround(mode);
    }
    ~RoundingGuard() {
        std::fesetround(previous);
    }
    RoundingGuard(RoundingGuard const&) = delete;
    RoundingGuard& operator=(RoundingGuard const&) = delete;

   private:
    int previous;
};

}  // namespace

std::vector<double> valueEstimates(ChoiceSystem<double> const& system, std::size_t iterations) {
    // The float system rounds probabilities and constants toward zero, so with
    // downward rounding every iterate is below its exact counterpart.
    RoundingGuard guard(FE_DOWNWARD);
    std::vector<double> x(system.numStates, 0.0);
    std::vector<double> next(system.numStates, 0.0);
    for (std::size_t i = 0; i < iterations; ++i) {
        for (std::size_t s = 0; s < system.numStates; ++s) {
            double best = 0;
            for (std::size_t c = system.groupStart[s]; c < system.groupStart[s + 1]; ++c) {
                double value = system.constants[c];
                for (std::size_t e = system.rowStart[c]; e < system.rowStart[c + 1]; ++e) {
                    value += system.probabilities[e] * x[system.columns[e]];
                }
                if (c == system.groupStart[s] || system.better(value, best)) {
                    best = value;
                }
            }
            next[s] = best;
        }
        x.swap(next);
    }
    return x;
}

}  // namespace mdpcheck::solver
