#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cycletwist/cycle.hpp"
#include "cycletwist/graded_model.hpp"
#include "cycletwist/kclass.hpp"
#include "cycletwist/string_sheaf.hpp"

namespace cycletwist {

struct HomDims {
    long long hom = 0;
    long long ext1 = 0;
    long long ext2 = 0;

    bool operator==(const HomDims&) const = default;
};

// Exact dimension of the space of sheaf morphisms source -> target, computed
// from the node-constrained linear system: one homogeneous form per pair of
// passes over a common component, boundary coefficients matched or killed at
// the nodes.  The system only ever equates single coefficients or forces them
// to zero, so union-find computes the exact rank.
long long hom_dim(const StringSheaf& source, const StringSheaf& target, const CycleConfig& cycle);

// Dimension computations with a memo keyed by canonical sheaf pairs.
// One calculator per thread; pure apart from the cache.
class HomCalculator {
  public:
    explicit HomCalculator(const CycleConfig& cycle) : cycle_(cycle) {}

    const CycleConfig& cycle() const { return cycle_; }

    long long hom(const StringSheaf& source, const StringSheaf& target) const;

    // hom / ext1 / ext2 with ext2 by duality and ext1 by the Euler defect
    HomDims table(const StringSheaf& source, const StringSheaf& target) const;

    long long chi(const StringSheaf& a, const StringSheaf& b) const {
        return euler_pairing(a.k_class(cycle_), b.k_class(cycle_), cycle_);
    }

    // dim Hom^k(a, b) for the formal objects, zero differentials
    long long graded_hom(const GradedModel& a, const GradedModel& b, int k) const;

    bool is_spherical(const GradedModel& m) const;
    bool is_rigid(const GradedModel& m) const;

    size_t cache_size() const { return cache_.size(); }

  private:
    CycleConfig cycle_;
    mutable std::unordered_map<std::string, long long> cache_;
};

}  // namespace cycletwist
