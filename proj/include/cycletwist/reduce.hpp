#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cycletwist/graded_model.hpp"
#include "cycletwist/hom.hpp"
#include "cycletwist/twist.hpp"

namespace cycletwist {

// Cyclic plateau of the length profile: l_{s0-1} < l_{s0} = ... = l_{t0} > l_{t0+1}.
// s0 lies in [1, n]; t0 may exceed n when the run wraps (t0 - s0 <= n - 2).
struct Plateau {
    int s0 = 1;
    int t0 = 1;
    bool operator==(const Plateau&) const = default;
};

Plateau find_plateau(const std::vector<long long>& profile, const CycleConfig& cycle);

struct DescentStats {
    long long fast_hits = 0;         // decision tree produced the twist
    long long fast_abstentions = 0;  // tree inconclusive, search used
    long long search_expansions = 0;
    long long unresolved_skips = 0;  // candidates dropped as UnresolvedMutation

    DescentStats& operator+=(const DescentStats& o) {
        fast_hits += o.fast_hits;
        fast_abstentions += o.fast_abstentions;
        search_expansions += o.search_expansions;
        unresolved_skips += o.unresolved_skips;
        return *this;
    }
};

// Search knobs; defaults follow the documented windows.
struct EngineOptions {
    int degree_window_below = 2;  // candidate degrees from d_min - below ...
    int degree_window_above = 1;  // ... to d_max + above
    long long search_budget = 200000;
    int pair_depth_cap = 8;
};

// A twist (or composite word) supported on the plateau components that
// strictly decreases the total length.  Hard failure if none exists in the
// searched space.
TwistWord select_descent_twist(const GradedModel& model, const Plateau& plateau,
                               const HomCalculator& calc, DescentStats* stats = nullptr,
                               const EngineOptions& opts = EngineOptions());

// Normal form O_{C_component}(degree)[shift].
struct NormalForm {
    int component = 1;
    int degree = 0;
    int shift = 0;
    bool operator==(const NormalForm&) const = default;
};

struct ReductionStep {
    TwistWord word;
    std::vector<long long> profile_before;
    std::vector<long long> profile_after;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    TwistWord word;
    NormalForm result;
    DescentStats stats;
};

// Length descent: iterate plateau + descent twist until the model is a single
// line bundle on one component.
ReductionTrace reduce_spherical(const GradedModel& model, const HomCalculator& calc,
                                const EngineOptions& opts = EngineOptions());

struct PairReduction {
    TwistWord word;
    NormalForm alpha;  // beta normalizes to O_{C_b}(alpha.degree - 1)[alpha.shift]
    DescentStats stats;
};

// Normalizes a pair modeling images of (O_{C_1}, O_{C_1}(-1)): one word sent
// to both, ending at (O_{C_b}(a)[i], O_{C_b}(a-1)[i]).
PairReduction reduce_pair(const GradedModel& alpha, const GradedModel& beta,
                          const HomCalculator& calc, const EngineOptions& opts = EngineOptions());

}  // namespace cycletwist
