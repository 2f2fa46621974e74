#pragma once

#include <compare>
#include <string>
#include <vector>

#include "cycletwist/cycle.hpp"
#include "cycletwist/errors.hpp"
#include "cycletwist/kclass.hpp"

namespace cycletwist {

// An indecomposable torsion-free, not locally free sheaf on the cycle:
// the pushforward of a line bundle along a chain of k projective lines,
// pass l of the walk lying over component C_{start+l-1} with degree
// degrees[l-1].  Consecutive passes l, l+1 are glued over node N_{start+l-1}.
// Values are immutable once constructed and always canonical
// (1 <= start <= n).  Band objects (locally free modules) are not
// representable by design.
class StringSheaf {
  public:
    StringSheaf(int start, std::vector<int> degrees, const CycleConfig& cycle)
        : start_(cycle.reduce(start)), degrees_(std::move(degrees)) {
        if (degrees_.empty()) throw DomainError("string sheaf needs a nonempty degree sequence");
    }

    // Build from the reversed-orientation reading: `end` is the component of
    // the walk's last pass and `reversed` lists the degrees walking backwards.
    // Same walk, same sheaf; identical restriction data and K-class.
    static StringSheaf from_reversed(int end, std::vector<int> reversed, const CycleConfig& cycle) {
        if (reversed.empty()) throw DomainError("string sheaf needs a nonempty degree sequence");
        std::vector<int> fwd(reversed.rbegin(), reversed.rend());
        int start = end - static_cast<int>(fwd.size()) + 1;
        return StringSheaf(start, std::move(fwd), cycle);
    }

    int start() const { return start_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int length() const { return static_cast<int>(degrees_.size()); }

    // component of pass l (1-based)
    int component(int l, const CycleConfig& cycle) const { return cycle.reduce(start_ + l - 1); }

    // node gluing pass l to pass l+1, for 1 <= l < k
    int transit_node(int l, const CycleConfig& cycle) const { return node_reduce(start_ + l - 1, cycle); }

    // free end nodes: low end of pass 1 and high end of pass k
    int low_end_node(const CycleConfig& cycle) const { return node_reduce(start_ - 1, cycle); }
    int high_end_node(const CycleConfig& cycle) const { return node_reduce(start_ + length() - 1, cycle); }

    std::vector<long long> multiplicities(const CycleConfig& cycle) const {
        std::vector<long long> m(cycle.size(), 0);
        for (int l = 1; l <= length(); ++l) m[component(l, cycle) - 1]++;
        return m;
    }

    // degrees of the direct summands of the restriction to C_comp, sorted
    std::vector<int> restrict(int comp, const CycleConfig& cycle) const;

    KClass k_class(const CycleConfig& cycle) const {
        long long e = 1;
        for (int d : degrees_) e += d;
        return KClass(multiplicities(cycle), e);
    }

    bool is_line_bundle_on(int comp, int degree, const CycleConfig& cycle) const {
        return length() == 1 && component(1, cycle) == cycle.reduce(comp) && degrees_[0] == degree;
    }

    std::strong_ordering operator<=>(const StringSheaf& o) const {
        if (auto c = start_ <=> o.start_; c != 0) return c;
        return degrees_ <=> o.degrees_;
    }
    bool operator==(const StringSheaf& o) const = default;

    std::string str() const {
        std::string s = "S_" + std::to_string(start_) + "(";
        for (size_t i = 0; i < degrees_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(degrees_[i]);
        }
        return s + ")";
    }

  private:
    static int node_reduce(long long j, const CycleConfig& cycle) { return cycle.reduce(j); }

    int start_;
    std::vector<int> degrees_;
};

// Canonical representative of presentation data: reduces the start modulo n.
// Presentations differing by a full wind of the start index (s vs s +/- n)
// denote the same walk; see StringSheaf::from_reversed for data written in
// the reversed traversal.
inline StringSheaf canonicalize(int start, const std::vector<int>& degrees, const CycleConfig& cycle) {
    return StringSheaf(start, degrees, cycle);
}

}  // namespace cycletwist
