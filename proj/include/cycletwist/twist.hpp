#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cycletwist/cycle.hpp"
#include "cycletwist/graded_model.hpp"
#include "cycletwist/hom.hpp"
#include "cycletwist/kclass.hpp"

namespace cycletwist {

// Elementary twist T_{O_{C_component}(degree)}, or its inverse.
struct TwistGen {
    int component = 1;
    int degree = 0;
    bool inverse = false;

    TwistGen() = default;
    TwistGen(int c, int d, bool inv = false) : component(c), degree(d), inverse(inv) {}

    TwistGen inverted() const { return TwistGen(component, degree, !inverse); }

    StringSheaf line_bundle(const CycleConfig& cycle) const {
        return StringSheaf(component, {degree}, cycle);
    }

    KClass k_class(const CycleConfig& cycle) const { return line_bundle(cycle).k_class(cycle); }

    bool operator==(const TwistGen&) const = default;

    std::string str() const {
        std::string s = inverse ? "T'" : "T";
        return s + "(C" + std::to_string(component) + "," + std::to_string(degree) + ")";
    }
};

// Free word of twists and shifts, applied left to right.  No automatic
// cancellation; `cancelled` and `normalized` are explicit.
class TwistWord {
  public:
    struct Step {
        bool is_shift = false;
        TwistGen gen;
        int shift = 0;

        static Step twist(TwistGen g) {
            Step s;
            s.gen = g;
            return s;
        }
        static Step shift_by(int k) {
            Step s;
            s.is_shift = true;
            s.shift = k;
            return s;
        }
        bool operator==(const Step&) const = default;
    };

    TwistWord() = default;
    explicit TwistWord(std::vector<Step> steps) : steps_(std::move(steps)) {}

    const std::vector<Step>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }
    size_t size() const { return steps_.size(); }

    void push_twist(TwistGen g) { steps_.push_back(Step::twist(g)); }
    void push_shift(int k) {
        if (k != 0) steps_.push_back(Step::shift_by(k));
    }
    void append(const TwistWord& w) {
        steps_.insert(steps_.end(), w.steps_.begin(), w.steps_.end());
    }

    // shifts commute with twists; move them to the right end as one step
    TwistWord normalized() const;
    // remove adjacent g, g^{-1} pairs (repeatedly)
    TwistWord cancelled() const;

    std::string str() const;

    bool operator==(const TwistWord&) const = default;

  private:
    std::vector<Step> steps_;
};

// K-class action [T_alpha(beta)] = [beta] - chi(alpha, beta) [alpha].
// `alpha` must be a spherical class (chi(alpha, alpha) = 2).
KClass twist_kclass(const KClass& alpha, const KClass& beta, const CycleConfig& cycle);

// Twist of the formal model, atom by atom, via the triangle
// RHom(O_C(a), -) (x) O_C(a) -> id -> T.  Throws UnresolvedMutation when the
// cohomology is not forced.
//
// `faithful`, when given, reports whether every atom's image stayed in a
// single cohomological degree.  Such images are honest shifted sheaves, so
// the output model is again the exact cohomology of the twisted object.  An
// atom spread over two degrees is a genuine two-term complex and the formal
// model only bounds it; downstream exact invariants (isometry, sphericality)
// hold on faithful outputs only.
GradedModel twist_model(const TwistGen& gen, const GradedModel& model, const HomCalculator& calc,
                        bool* faithful = nullptr);

// Sequential application; the K-class is tracked independently through
// twist_kclass and asserted equal after every step.
GradedModel apply_word(const TwistWord& word, const GradedModel& model, const HomCalculator& calc);

}  // namespace cycletwist
