#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cycletwist/cycle.hpp"
#include "cycletwist/kclass.hpp"
#include "cycletwist/string_sheaf.hpp"

namespace cycletwist {

// One summand: `sheaf` placed in cohomological degree `shift` with
// multiplicity `mult`.  The modeled object is the formal direct sum
// of sheaf[-shift] over all atoms (zero differentials throughout).
struct Atom {
    int shift = 0;
    StringSheaf sheaf;
    long long mult = 1;

    Atom(int s, StringSheaf sh, long long m = 1) : shift(s), sheaf(std::move(sh)), mult(m) {}

    bool same_slot(const Atom& o) const { return shift == o.shift && sheaf == o.sheaf; }
};

class GradedModel {
  public:
    GradedModel() = default;
    explicit GradedModel(std::vector<Atom> atoms) : atoms_(std::move(atoms)) { normalize(); }

    static GradedModel single(const StringSheaf& s, int shift = 0, long long mult = 1) {
        return GradedModel({Atom(shift, s, mult)});
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    GradedModel shifted(int by) const {  // object-shift [by]: degrees drop by `by`
        std::vector<Atom> out = atoms_;
        for (auto& a : out) a.shift -= by;
        return GradedModel(std::move(out));
    }

    KClass k_class(const CycleConfig& cycle) const {
        KClass total = KClass::zero(cycle);
        for (const auto& a : atoms_) {
            KClass k = a.sheaf.k_class(cycle);
            long long sign = (a.shift % 2 == 0) ? 1 : -1;
            total += k.scale(sign * a.mult);
        }
        return total;
    }

    std::vector<long long> length_profile(const CycleConfig& cycle) const {
        std::vector<long long> l(cycle.size(), 0);
        for (const auto& a : atoms_) {
            auto m = a.sheaf.multiplicities(cycle);
            for (int i = 0; i < cycle.size(); ++i) l[i] += a.mult * m[i];
        }
        return l;
    }

    long long total_length(const CycleConfig& cycle) const {
        long long t = 0;
        for (auto v : length_profile(cycle)) t += v;
        return t;
    }

    // true iff the model is one sheaf atom with multiplicity one
    bool is_single_sheaf() const { return atoms_.size() == 1 && atoms_[0].mult == 1; }

    // true iff all atoms share one cohomological degree (formal object)
    bool single_degree() const {
        for (size_t i = 1; i < atoms_.size(); ++i)
            if (atoms_[i].shift != atoms_[0].shift) return false;
        return true;
    }

    bool operator==(const GradedModel& o) const {
        if (atoms_.size() != o.atoms_.size()) return false;
        for (size_t i = 0; i < atoms_.size(); ++i) {
            if (!(atoms_[i].same_slot(o.atoms_[i]) && atoms_[i].mult == o.atoms_[i].mult)) return false;
        }
        return true;
    }
    bool operator!=(const GradedModel& o) const { return !(*this == o); }

    // stable text key, used for dedup in searches
    std::string key() const {
        std::string k;
        for (const auto& a : atoms_) {
            k += std::to_string(a.shift) + ":" + a.sheaf.str() + "x" + std::to_string(a.mult) + ";";
        }
        return k;
    }

  private:
    void normalize() {
        std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) {
            if (x.shift != y.shift) return x.shift < y.shift;
            return x.sheaf < y.sheaf;
        });
        std::vector<Atom> merged;
        for (const auto& a : atoms_) {
            if (a.mult == 0) continue;
            if (!merged.empty() && merged.back().same_slot(a)) {
                merged.back().mult += a.mult;
                if (merged.back().mult == 0) merged.pop_back();
            } else {
                merged.push_back(a);
            }
        }
        atoms_ = std::move(merged);
    }

    std::vector<Atom> atoms_;
};

}  // namespace cycletwist
