#include "mdpcheck/gen/Generators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "mdpcheck/Errors.h"

namespace mdpcheck::gen {

std::size_t hardMnIndex(std::size_t n, long i) {
    auto magnitude = static_cast<std::size_t>(i < 0 ? -i : i);
    if (magnitude > n) {
        throw Error(ErrorCode::BadIndex, "state " + std::to_string(i) + " is not part of M_" + std::to_string(n));
    }
    return i < 0 ? n + magnitude : magnitude;
}

model::SparseMdp genHardMn(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::BadParameter, "M_n needs n >= 2");
    }
    Rational const half(1, 2);
    long const bound = static_cast<long>(n);
    model::RawMdp raw;
    raw.numStates = 2 * n + 1;
    raw.initialState = 0;
    raw.choices.resize(raw.numStates);
    raw.choices[0].push_back({{hardMnIndex(n, 1), half}, {hardMnIndex(n, -1), half}});
    for (long i = -bound; i <= bound; ++i) {
        auto s = hardMnIndex(n, i);
        if (i == 0) {
            continue;
        }
        if (i == bound || i == -bound) {
            raw.choices[s].push_back({{s, Rational(1)}});
            continue;
        }
        long outward = i > 0 ? i + 1 : i - 1;
        raw.choices[s].push_back({{hardMnIndex(n, outward), half}, {0, half}});
        raw.choices[s].push_back({{hardMnIndex(n, bound), half}, {hardMnIndex(n, -bound), half}});
    }
    raw.labels["goal"] = {hardMnIndex(n, bound)};
    return model::buildMdp(raw);
}

model::SparseMdp genPiTrap(Rational const& delta) {
    if (!(delta > 0 && delta < 1)) {
        throw Error(ErrorCode::BadParameter, "delta must lie strictly between 0 and 1");
    }
    Rational const halfDelta = delta / 2;
    model::RawMdp raw;
    raw.numStates = 5;
    raw.initialState = 0;
    raw.choices = {
        {{{1, Rational(1)}}, {{2, Rational(1)}}},
        {{{4, Rational(1, 10)}, {3, Rational(9, 10)}}},
        {{{4, halfDelta}, {3, halfDelta}, {0, Rational(1 - delta)}}},
        {{{3, Rational(1)}}},
        {{{4, Rational(1)}}},
    };
    raw.labels["goal"] = {4};
    return model::buildMdp(raw);
}

namespace {

constexpr std::size_t maxDenominator = 64;

class Draw {
   public:
    explicit Draw(std::uint64_t seed) : engine(seed) {}

    /// Uniform-ish integer in [0, bound).
    std::size_t below(std::size_t bound) {
        return static_cast<std::size_t>(engine() % bound);
    }

   private:
    std::mt19937_64 engine;
};

}  // namespace

model::SparseMdp genRandomMdp(RandomMdpOptions const& options) {
    std::size_t const n = options.numStates;
    if (n == 0 || options.maxActions == 0) {
        throw Error(ErrorCode::BadParameter, "random models need at least one state and one action");
    }
    if (!(options.density > 0 && options.density <= 1) || !(options.targetFraction > 0 && options.targetFraction <= 1)) {
        throw Error(ErrorCode::BadParameter, "density and target fraction must lie in (0, 1]");
    }
    Draw draw(options.seed);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[draw.below(i)]);
    }
    auto numTargets = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(options.targetFraction * static_cast<double>(n))), 1, n);
    std::vector<bool> isTarget(n, false);
    std::vector<std::size_t> targets(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(numTargets));
    std::sort(targets.begin(), targets.end());
    for (auto t : targets) {
        isTarget[t] = true;
    }

    model::RawMdp raw;
    raw.numStates = n;
    raw.initialState = 0;
    raw.choices.resize(n);
    if (options.maxReward) {
        raw.rewards = std::vector<Rational>(n, Rational(0));
    }
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t const candidates = options.acyclic ? n - s - 1 : n;
        if (isTarget[s] || candidates == 0) {
            raw.choices[s].push_back({{s, Rational(1)}});
            continue;
        }
        if (options.maxReward) {
            (*raw.rewards)[s] = Rational(static_cast<long>(draw.below(*options.maxReward + 1)));
        }
        std::size_t const first = options.acyclic ? s + 1 : 0;
        auto fanOut = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(options.density * static_cast<double>(candidates))), 1,
                                              std::min(candidates, maxDenominator));
        std::size_t const numActions = 1 + draw.below(options.maxActions);
        for (std::size_t a = 0; a < numActions; ++a) {
            std::size_t const width = 1 + draw.below(fanOut);
            std::vector<std::size_t> pool(candidates);
            std::iota(pool.begin(), pool.end(), first);
            for (std::size_t i = 0; i < width; ++i) {
                std::swap(pool[i], pool[i + draw.below(candidates - i)]);
            }
            std::size_t const denominator = width + draw.below(maxDenominator - width + 1);
            std::vector<std::size_t> weights(width, 1);
            for (std::size_t unit = width; unit < denominator; ++unit) {
                ++weights[draw.below(width)];
            }
            model::RawMdp::Distribution distribution;
            for (std::size_t i = 0; i < width; ++i) {
                Rational p(static_cast<long>(weights[i]), static_cast<long>(denominator));
                p.canonicalize();
                distribution.emplace_back(pool[i], p);
            }
            raw.choices[s].push_back(std::move(distribution));
        }
    }
    raw.labels["goal"] = targets;
    return model::buildMdp(raw);
}

}  // namespace mdpcheck::gen
