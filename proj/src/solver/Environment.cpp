#include "mdpcheck/solver/Environment.h"

#include <cmath>

namespace mdpcheck::solver {

bool StoppingCriterion::converged(double previous, double next) const {
    double diff = std::abs(next - previous);
    if (mode == Precision::Absolute) {
        return diff <= epsilon;
    }
    return diff <= epsilon * std::abs(next);
}

void StoppingCriterion::validate() const {
    if (!(epsilon > 0)) {
        throw Error(ErrorCode::BadParameter, "stopping criterion needs a positive epsilon");
    }
}

}  // namespace mdpcheck::solver
