#pragma once

#include <vector>

#include "cycletwist/cycle.hpp"
#include "cycletwist/errors.hpp"

namespace cycletwist {

// Numerical class (c_1 component multiplicities, Euler characteristic).
// Everything in the model is rank zero, so this pair is complete data for
// the pairing and for twist bookkeeping.
struct KClass {
    std::vector<long long> mult;
    long long euler = 0;

    KClass() = default;
    KClass(std::vector<long long> m, long long e) : mult(std::move(m)), euler(e) {}

    static KClass zero(const CycleConfig& cycle) {
        return KClass(std::vector<long long>(cycle.size(), 0), 0);
    }

    // class of a point O_x
    static KClass point(const CycleConfig& cycle) {
        return KClass(std::vector<long long>(cycle.size(), 0), 1);
    }

    KClass operator-() const {
        KClass r = *this;
        for (auto& m : r.mult) m = -m;
        r.euler = -r.euler;
        return r;
    }

    KClass& operator+=(const KClass& o) {
        if (mult.size() != o.mult.size()) throw CycleError("K-class size mismatch");
        for (size_t i = 0; i < mult.size(); ++i) mult[i] += o.mult[i];
        euler += o.euler;
        return *this;
    }

    KClass& operator-=(const KClass& o) { return *this += -o; }

    KClass& scale(long long k) {
        for (auto& m : mult) m *= k;
        euler *= k;
        return *this;
    }

    friend KClass operator+(KClass a, const KClass& b) { return a += b; }
    friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
    friend KClass operator*(long long k, KClass a) { return a.scale(k); }

    bool operator==(const KClass& o) const { return mult == o.mult && euler == o.euler; }
    bool operator!=(const KClass& o) const { return !(*this == o); }
};

// chi(x, y) = -c_1(x).c_1(y), symmetric, blind to the euler fields.
inline long long euler_pairing(const KClass& x, const KClass& y, const CycleConfig& cycle) {
    return -cycle.pair(x.mult, y.mult);
}

}  // namespace cycletwist
