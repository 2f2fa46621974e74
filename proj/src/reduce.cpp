#include "cycletwist/reduce.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "cycletwist/errors.hpp"

namespace cycletwist {

Plateau find_plateau(const std::vector<long long>& profile, const CycleConfig& cycle) {
    const int n = cycle.size();
    if (static_cast<int>(profile.size()) != n) throw CycleError("profile length does not match cycle");
    long long mx = 0;
    bool all_equal = true;
    for (int i = 0; i < n; ++i) {
        mx = std::max(mx, profile[i]);
        if (profile[i] != profile[0]) all_equal = false;
    }
    if (mx == 0) throw ZeroProfile("length profile has empty support");
    if (all_equal) throw ConstantProfile("constant positive length profile has no plateau");

    auto at = [&](int i) { return profile[cycle.reduce(i) - 1]; };
    Plateau best;
    bool found = false;
    for (int s = 1; s <= n; ++s) {
        if (at(s) != mx || at(s - 1) == mx) continue;  // runs start after a strict rise
        int t = s;
        while (at(t + 1) == mx) ++t;
        if (!found) {
            best = {s, t};
            found = true;
        }
    }
    return best;
}

namespace {

struct ArcShape {
    // one maximal run of passes of some atom lying over the plateau arc
    bool glued_left = false;
    bool glued_right = false;
    bool spans = false;       // covers the whole arc
    int deg_first = 0;        // degree at C_{s0}
    int deg_last = 0;         // degree at C_{t0}
    long long copies = 1;     // atom multiplicity
};

std::vector<ArcShape> arc_shapes(const GradedModel& model, const Plateau& p, const CycleConfig& cycle) {
    const int arc_len = p.t0 - p.s0 + 1;
    std::vector<char> in_arc(cycle.size() + 1, 0);
    for (int j = p.s0; j <= p.t0; ++j) in_arc[cycle.reduce(j)] = 1;

    std::vector<ArcShape> shapes;
    for (const auto& atom : model.atoms()) {
        const auto& s = atom.sheaf;
        const int k = s.length();
        int l = 1;
        while (l <= k) {
            if (!in_arc[s.component(l, cycle)]) {
                ++l;
                continue;
            }
            int r = l;
            while (r + 1 <= k && in_arc[s.component(r + 1, cycle)]) ++r;
            ArcShape sh;
            sh.glued_left = l > 1;
            sh.glued_right = r < k;
            sh.spans = (r - l + 1 == arc_len) && s.component(l, cycle) == cycle.reduce(p.s0);
            sh.deg_first = s.degrees()[l - 1];
            sh.deg_last = s.degrees()[r - 1];
            sh.copies = atom.mult;
            shapes.push_back(sh);
            l = r + 1;
        }
    }
    return shapes;
}

// Decision tree at a single-component plateau.  Returns the
// chosen twist or nothing when the configuration is outside the tree.
std::optional<TwistGen> descent_tree_single(const std::vector<ArcShape>& shapes, int comp) {
    if (shapes.empty()) return std::nullopt;
    long long r1 = 0, r2 = 0, r3 = 0, r4 = 0;
    std::vector<int> side_degs, iso_degs, trans_degs;
    for (const auto& sh : shapes) {
        if (sh.glued_left && sh.glued_right) {
            r1 += sh.copies;
            trans_degs.push_back(sh.deg_first);
        } else if (!sh.glued_left && sh.glued_right) {
            r2 += sh.copies;
            side_degs.insert(side_degs.end(), sh.copies, sh.deg_first);
        } else if (sh.glued_left && !sh.glued_right) {
            r4 += sh.copies;
            side_degs.insert(side_degs.end(), sh.copies, sh.deg_first);
        } else {
            r3 += sh.copies;
            iso_degs.insert(iso_degs.end(), sh.copies, sh.deg_first);
        }
    }

    auto all_eq = [](const std::vector<int>& v, int x) {
        return std::all_of(v.begin(), v.end(), [x](int d) { return d == x; });
    };

    if (r2 > 0 && r4 > 0) {
        int a = side_degs.front();
        if (!all_eq(side_degs, a)) return std::nullopt;
        for (int d : iso_degs)
            if (d != a && d != a - 1) return std::nullopt;
        if (!all_eq(trans_degs, a)) return std::nullopt;
        return TwistGen(comp, a - 1);
    }
    if (r3 > 0) {
        int b = shapes.front().deg_first;
        for (const auto& sh : shapes) b = std::max(b, sh.deg_first);
        bool iso_at_max = std::any_of(iso_degs.begin(), iso_degs.end(), [b](int d) { return d == b; });
        if (iso_at_max) {
            if (!all_eq(side_degs, b) || !all_eq(trans_degs, b)) return std::nullopt;
            for (int d : iso_degs)
                if (d != b && d != b - 1) return std::nullopt;
            return TwistGen(comp, b - 1);
        }
        if (!all_eq(iso_degs, b - 1) || !all_eq(trans_degs, b)) return std::nullopt;
        long long at_b = 0, at_b1 = 0;
        for (int d : side_degs) {
            if (d == b)
                ++at_b;
            else if (d == b - 1)
                ++at_b1;
            else
                return std::nullopt;
        }
        if (at_b > at_b1) return TwistGen(comp, b - 1);
        if (at_b < at_b1) return TwistGen(comp, b - 2);
        return std::nullopt;  // balanced counts: delegated branch, search decides
    }
    return std::nullopt;
}

struct Candidate {
    TwistGen gen;
};

std::vector<Candidate> candidate_gens(const GradedModel& model, int comp_lo, int comp_hi,
                                      const CycleConfig& cycle, const EngineOptions& opts,
                                      const std::vector<int>& extra_comps = {}) {
    std::vector<int> comps;
    for (int j = comp_lo; j <= comp_hi; ++j) comps.push_back(cycle.reduce(j));
    for (int c : extra_comps) comps.push_back(cycle.reduce(c));
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());

    int dmin = 0, dmax = 0;
    bool have = false;
    for (const auto& atom : model.atoms()) {
        const auto& s = atom.sheaf;
        for (int l = 1; l <= s.length(); ++l) {
            int c = s.component(l, cycle);
            if (std::find(comps.begin(), comps.end(), c) == comps.end()) continue;
            int d = s.degrees()[l - 1];
            if (!have) {
                dmin = dmax = d;
                have = true;
            } else {
                dmin = std::min(dmin, d);
                dmax = std::max(dmax, d);
            }
        }
    }
    if (!have) dmin = dmax = 0;

    std::vector<Candidate> out;
    for (int c : comps)
        for (int d = dmin - opts.degree_window_below; d <= dmax + opts.degree_window_above; ++d)
            for (int inv = 0; inv < 2; ++inv) out.push_back({TwistGen(c, d, inv != 0)});
    return out;
}

std::vector<Candidate> candidate_gens_merged(const GradedModel& m1, const GradedModel& m2,
                                             int comp_lo, int comp_hi, const CycleConfig& cycle,
                                             const EngineOptions& opts,
                                             const std::vector<int>& extra_comps) {
    std::vector<Atom> atoms = m1.atoms();
    for (const auto& a : m2.atoms()) atoms.push_back(a);
    return candidate_gens(GradedModel(std::move(atoms)), comp_lo, comp_hi, cycle, opts, extra_comps);
}

using StateVec = std::vector<GradedModel>;

std::string state_key(const StateVec& s) {
    std::string k;
    for (const auto& m : s) {
        k += m.key();
        k += '|';
    }
    return k;
}

// Breadth-first search over twist words, applied simultaneously to every
// model in the state.  Deterministic candidate order; unresolvable twists are
// skipped and counted.  With `faithful_only`, candidates that spread an atom
// over two degrees are rejected, keeping every state an exact cohomology
// model.
std::optional<TwistWord> bounded_word_search(const StateVec& start, const std::vector<Candidate>& cands,
                                             int max_len, long long budget, bool faithful_only,
                                             const std::function<bool(const StateVec&)>& keep,
                                             const std::function<bool(const StateVec&)>& accept,
                                             const HomCalculator& calc, DescentStats& stats) {
    std::deque<std::pair<StateVec, TwistWord>> queue;
    std::unordered_set<std::string> seen;
    queue.push_back({start, TwistWord()});
    seen.insert(state_key(start));
    long long spent = 0;

    while (!queue.empty()) {
        auto [state, word] = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(word.size()) >= max_len) continue;
        for (const auto& cand : cands) {
            if (++spent > budget) return std::nullopt;
            StateVec next;
            next.reserve(state.size());
            bool ok = true;
            for (const auto& m : state) {
                try {
                    bool faithful = true;
                    next.push_back(twist_model(cand.gen, m, calc, &faithful));
                    if (faithful_only && !faithful) {
                        ok = false;
                        break;
                    }
                } catch (const UnresolvedMutation&) {
                    ++stats.unresolved_skips;
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ++stats.search_expansions;
            TwistWord next_word = word;
            next_word.push_twist(cand.gen);
            if (accept(next)) return next_word;
            if (!keep(next)) continue;
            auto key = state_key(next);
            if (seen.insert(std::move(key)).second) queue.push_back({std::move(next), std::move(next_word)});
        }
    }
    return std::nullopt;
}

std::string dump_state(const GradedModel& model, const CycleConfig& cycle) {
    std::string s = "model=" + model.key() + " profile=(";
    auto prof = model.length_profile(cycle);
    for (size_t i = 0; i < prof.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(prof[i]);
    }
    return s + ")";
}

}  // namespace

TwistWord select_descent_twist(const GradedModel& model, const Plateau& plateau,
                               const HomCalculator& calc, DescentStats* stats,
                               const EngineOptions& opts) {
    const CycleConfig& cycle = calc.cycle();
    DescentStats local;
    DescentStats& st = stats ? *stats : local;
    const long long l0 = model.total_length(cycle);

    auto shapes = arc_shapes(model, plateau, cycle);
    if (plateau.s0 == plateau.t0) {
        if (auto gen = descent_tree_single(shapes, cycle.reduce(plateau.s0))) {
            try {
                GradedModel out = twist_model(*gen, model, calc);
                if (out.total_length(cycle) < l0) {
                    ++st.fast_hits;
                    TwistWord w;
                    w.push_twist(*gen);
                    return w;
                }
            } catch (const UnresolvedMutation&) {
                ++st.unresolved_skips;
            }
        }
    }
    ++st.fast_abstentions;

    auto cands = candidate_gens(model, plateau.s0, plateau.t0, cycle, opts);
    const int max_len = plateau.t0 - plateau.s0 + 2;
    auto keep = [&](const StateVec& s) { return s[0].total_length(cycle) <= l0; };
    auto accept = [&](const StateVec& s) { return s[0].total_length(cycle) < l0; };
    // exact cohomology models first, bounding models as a fallback
    for (bool faithful_only : {true, false}) {
        auto found = bounded_word_search({model}, cands, max_len, opts.search_budget, faithful_only,
                                         keep, accept, calc, st);
        if (found) return *found;
    }

    throw NoDescentFound("no descending twist word found at plateau [" + std::to_string(plateau.s0) +
                         "," + std::to_string(plateau.t0) + "]; " + dump_state(model, cycle));
}

namespace {

NormalForm normal_form_of(const GradedModel& model, const CycleConfig& cycle) {
    const auto& atoms = model.atoms();
    if (atoms.size() != 1 || atoms[0].mult != 1 || atoms[0].sheaf.length() != 1)
        throw EngineError("internal: model is not a single line bundle: " + model.key());
    const Atom& a = atoms[0];
    return {a.sheaf.component(1, cycle), a.sheaf.degrees()[0], -a.shift};
}

}  // namespace

namespace {

// Sphericality is decidable from the formal model only when all atoms share
// one degree; a spread model bounds a two-term complex, where the class-level
// condition chi = 2 is what remains checkable.
bool spherical_like(const GradedModel& m, const HomCalculator& calc) {
    if (m.single_degree()) return calc.is_spherical(m);
    KClass k = m.k_class(calc.cycle());
    return euler_pairing(k, k, calc.cycle()) == 2;
}

}  // namespace

ReductionTrace reduce_spherical(const GradedModel& model, const HomCalculator& calc,
                                const EngineOptions& opts) {
    const CycleConfig& cycle = calc.cycle();
    if (!spherical_like(model, calc)) throw DomainError("reduce_spherical: model is not spherical");

    ReductionTrace trace;
    GradedModel current = model;
    long long l = current.total_length(cycle);
    if (l == 0) throw ZeroProfile("empty model");

    while (l > 1) {
        auto before = current.length_profile(cycle);
        Plateau p = find_plateau(before, cycle);
        TwistWord step = select_descent_twist(current, p, calc, &trace.stats, opts);
        GradedModel next = apply_word(step, current, calc);
        long long l2 = next.total_length(cycle);
        if (l2 >= l) throw NoDescentFound("internal: selected word failed to descend");
        trace.steps.push_back({step, before, next.length_profile(cycle)});
        trace.word.append(step);
        current = std::move(next);
        l = l2;
    }
    trace.result = normal_form_of(current, cycle);
    return trace;
}

PairReduction reduce_pair(const GradedModel& alpha, const GradedModel& beta,
                          const HomCalculator& calc, const EngineOptions& opts) {
    const CycleConfig& cycle = calc.cycle();
    if (!spherical_like(alpha, calc) || !spherical_like(beta, calc))
        throw InvalidPair("reduce_pair: both objects must be spherical");
    KClass diff = alpha.k_class(cycle) - beta.k_class(cycle);
    for (long long m : diff.mult)
        if (m != 0) throw InvalidPair("reduce_pair: c_1 classes differ");
    if (diff.euler != 1 && diff.euler != -1)
        throw InvalidPair("reduce_pair: euler characteristics must differ by one");

    PairReduction out;
    GradedModel A = alpha, B = beta;

    auto apply_both = [&](const TwistWord& w) {
        A = apply_word(w, A, calc);
        B = apply_word(w, B, calc);
        out.word.append(w);
    };

    // apply w to both sides only when every twist keeps every atom in a
    // single degree; a spread partner model would stop tracking its object
    auto try_faithful = [&](const TwistWord& w, GradedModel& a2, GradedModel& b2) -> bool {
        a2 = A;
        b2 = B;
        for (const auto& step : w.steps()) {
            if (step.is_shift) {
                a2 = a2.shifted(step.shift);
                b2 = b2.shifted(step.shift);
                continue;
            }
            try {
                bool fa = true, fb = true;
                GradedModel na = twist_model(step.gen, a2, calc, &fa);
                GradedModel nb = twist_model(step.gen, b2, calc, &fb);
                if (!fa || !fb) return false;
                a2 = std::move(na);
                b2 = std::move(nb);
            } catch (const UnresolvedMutation&) {
                ++out.stats.unresolved_skips;
                return false;
            }
        }
        return true;
    };

    // one descent round for the designated mover (descend == index into
    // {A, B}), dragging the partner faithfully; the partner must end at
    // length keep_partner_at if that is positive
    auto descend_once = [&](int mover, long long partner_cap) -> bool {
        GradedModel& M = (mover == 0) ? A : B;
        GradedModel& P = (mover == 0) ? B : A;
        long long lM = M.total_length(cycle);
        Plateau p = find_plateau(M.length_profile(cycle), cycle);

        // primary: the mover's own descent selection, if the partner follows
        try {
            TwistWord w = select_descent_twist(M, p, calc, &out.stats, opts);
            GradedModel a2 = A, b2 = B;
            if (try_faithful(w, a2, b2)) {
                GradedModel& m2 = (mover == 0) ? a2 : b2;
                GradedModel& p2 = (mover == 0) ? b2 : a2;
                if (m2.total_length(cycle) < lM &&
                    (partner_cap == 0 || p2.total_length(cycle) <= partner_cap)) {
                    out.word.append(w);
                    A = std::move(a2);
                    B = std::move(b2);
                    return true;
                }
            }
        } catch (const UnresolvedMutation&) {
            ++out.stats.unresolved_skips;
        } catch (const NoDescentFound&) {
        }

        // joint faithful search around the mover's plateau and the partner
        std::vector<int> extra;
        for (const auto& at : P.atoms())
            for (int l = 1; l <= at.sheaf.length(); ++l) extra.push_back(at.sheaf.component(l, cycle));
        auto cands = candidate_gens_merged(M, P, p.s0, p.t0, cycle, opts, extra);
        int depth = std::min<int>(static_cast<int>(lM) + 2, opts.pair_depth_cap);
        const int mi = mover, pi = 1 - mover;
        const long long partner_bound =
            (partner_cap == 0) ? P.total_length(cycle) + 3 : partner_cap + 3;
        auto found = bounded_word_search(
            {A, B}, cands, depth, opts.search_budget, /*faithful_only=*/true,
            [&](const StateVec& s) {
                return s[mi].total_length(cycle) <= lM &&
                       s[pi].total_length(cycle) <= partner_bound;
            },
            [&](const StateVec& s) {
                if (s[mi].total_length(cycle) >= lM) return false;
                return partner_cap == 0 || s[pi].total_length(cycle) <= partner_cap;
            },
            calc, out.stats);
        if (!found) return false;
        apply_both(*found);
        return true;
    };

    // Phase 1: bring one side down to length one, the other side tagging
    // along faithfully; prefer alpha, fall back to beta-first.
    int rounds_guard = 0;
    while (A.total_length(cycle) > 1 || B.total_length(cycle) > 1) {
        if (++rounds_guard > 200)
            throw NoDescentFound("pair reduction: no progress; alpha " + dump_state(A, cycle) +
                                 ", beta " + dump_state(B, cycle));
        long long lA = A.total_length(cycle), lB = B.total_length(cycle);
        if (lA > 1 && lB > 1) {
            // neither normalized yet: free round on either side
            if (descend_once(0, 0)) continue;
            if (descend_once(1, 0)) continue;
        } else {
            // one side is a line bundle; descend the other, keeping it there
            int mover = (lA > 1) ? 0 : 1;
            if (descend_once(mover, 1)) continue;
        }
        throw NoDescentFound("pair reduction: cannot descend; alpha " + dump_state(A, cycle) +
                             ", beta " + dump_state(B, cycle));
    }

    // with one side a line bundle, both c_1 classes must sit on that curve
    if (A.k_class(cycle).mult != B.k_class(cycle).mult)
        throw EngineError("internal: pair lost the common c_1 class");

    // Phase 3: both are line bundles now; align onto (a, a-1) with equal shift.
    NormalForm na = normal_form_of(A, cycle);
    NormalForm nb = normal_form_of(B, cycle);
    if (na.component != nb.component)
        throw NoDescentFound("pair reduction: normal forms landed on different components");
    if (!(na.degree == nb.degree + 1 && na.shift == nb.shift)) {
        const int comp = na.component;
        int dlo = std::min(na.degree, nb.degree) - 2;
        int dhi = std::max(na.degree, nb.degree) + 2;
        std::vector<Candidate> cands;
        for (int d = dlo; d <= dhi; ++d)
            for (int inv = 0; inv < 2; ++inv) cands.push_back({TwistGen(comp, d, inv != 0)});
        int gap = std::abs(na.degree - nb.degree) + std::abs(na.shift - nb.shift);
        auto found = bounded_word_search(
            {A, B}, cands, 2 * gap + 6, opts.search_budget, /*faithful_only=*/true,
            [&](const StateVec& s) {
                return s[0].is_single_sheaf() && s[1].is_single_sheaf() &&
                       s[0].atoms()[0].sheaf.length() == 1 && s[1].atoms()[0].sheaf.length() == 1;
            },
            [&](const StateVec& s) {
                if (!(s[0].is_single_sheaf() && s[1].is_single_sheaf())) return false;
                const Atom& x = s[0].atoms()[0];
                const Atom& y = s[1].atoms()[0];
                return x.sheaf.length() == 1 && y.sheaf.length() == 1 && x.shift == y.shift &&
                       x.sheaf.degrees()[0] == y.sheaf.degrees()[0] + 1;
            },
            calc, out.stats);
        if (!found)
            throw NoDescentFound("pair reduction: cleanup failed to align degrees/shifts (" +
                                 A.key() + " vs " + B.key() + ")");
        apply_both(*found);
        na = normal_form_of(A, cycle);
        nb = normal_form_of(B, cycle);
    }
    if (!(na.component == nb.component && na.degree == nb.degree + 1 && na.shift == nb.shift))
        throw EngineError("internal: pair cleanup postcondition failed");
    out.alpha = na;
    return out;
}

}  // namespace cycletwist
