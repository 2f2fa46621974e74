#include "cycletwist/twist.hpp"

#include <algorithm>

#include "cycletwist/errors.hpp"

namespace cycletwist {

TwistWord TwistWord::normalized() const {
    TwistWord out;
    int net_shift = 0;
    for (const auto& s : steps_) {
        if (s.is_shift)
            net_shift += s.shift;
        else
            out.push_twist(s.gen);
    }
    out.push_shift(net_shift);
    return out;
}

TwistWord TwistWord::cancelled() const {
    std::vector<Step> out;
    for (const auto& s : steps_) {
        if (!s.is_shift && !out.empty() && !out.back().is_shift &&
            out.back().gen == s.gen.inverted()) {
            out.pop_back();
        } else {
            out.push_back(s);
        }
    }
    return TwistWord(std::move(out));
}

std::string TwistWord::str() const {
    std::string s;
    for (const auto& st : steps_) {
        if (!s.empty()) s += " ";
        s += st.is_shift ? ("[" + std::to_string(st.shift) + "]") : st.gen.str();
    }
    return s.empty() ? "(id)" : s;
}

KClass twist_kclass(const KClass& alpha, const KClass& beta, const CycleConfig& cycle) {
    if (euler_pairing(alpha, alpha, cycle) != 2)
        throw NotSphericalClass("twist class is not spherical: chi(alpha,alpha) != 2");
    long long c = euler_pairing(alpha, beta, cycle);
    KClass out = beta;
    KClass sub = alpha;
    out -= sub.scale(c);
    return out;
}

namespace {

struct Run {
    int first;  // 1-based pass range kept
    int last;
};

// maximal runs of passes surviving after deleting `removed`
std::vector<Run> surviving_runs(const std::vector<char>& removed, int k) {
    std::vector<Run> runs;
    int i = 1;
    while (i <= k) {
        if (removed[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 <= k && !removed[j + 1]) ++j;
        runs.push_back({i, j});
        i = j + 1;
    }
    return runs;
}

std::string partial_report(const Atom& atom, const TwistGen& gen, long long h0, long long h1, long long h2) {
    return std::string("{\"atom\":\"") + atom.sheaf.str() + "[" + std::to_string(atom.shift) +
           "]\",\"gen\":\"" + gen.str() + "\",\"rhom\":[" + std::to_string(h0) + "," +
           std::to_string(h1) + "," + std::to_string(h2) + "]}";
}

// Twist of a single unit-multiplicity atom.  Output multiplicities are scaled
// by the caller.
std::vector<Atom> twist_atom(const TwistGen& gen, const Atom& atom, const HomCalculator& calc) {
    const CycleConfig& cycle = calc.cycle();
    const StringSheaf alpha = gen.line_bundle(cycle);
    const StringSheaf& S = atom.sheaf;
    const int p = atom.shift;
    const int k = S.length();
    const int comp = cycle.reduce(gen.component);
    const int c = gen.degree;

    const long long h_alpha_S = calc.hom(alpha, S);  // Hom(alpha, S)
    const long long h_S_alpha = calc.hom(S, alpha);  // Hom(S, alpha)
    const long long chi = calc.chi(alpha, S);
    const long long h1 = h_alpha_S + h_S_alpha - chi;
    if (h1 < 0)
        throw NegativeExtError("negative ext1 against twist bundle for " + S.str());

    // per-pass contributions over the twisting component
    std::vector<char> removed(k + 1, 0);
    std::vector<Atom> out;
    long long contrib_fwd = 0, contrib_inv = 0;
    std::vector<long long> m_fwd(k + 1, 0), m_inv(k + 1, 0);
    for (int q = 1; q <= k; ++q) {
        if (S.component(q, cycle) != comp) continue;
        int d = S.degrees()[q - 1];
        int nbrs = (q > 1 ? 1 : 0) + (q < k ? 1 : 0);
        m_fwd[q] = std::max<long long>(d - c + 1 - nbrs, 0);
        m_inv[q] = std::max<long long>(c - d + 1, 0);
        contrib_fwd += m_fwd[q];
        contrib_inv += m_inv[q];
    }
    // the structural per-pass count must reproduce the node-system dimension
    if (contrib_fwd != h_alpha_S || contrib_inv != h_S_alpha)
        throw EngineError("internal: per-pass hom count disagrees with node system for " + S.str());

    const bool adj_low = cycle.reduce(S.start() - 1) == comp;       // branch before the walk
    const bool adj_high = cycle.reduce(S.start() + k) == comp;      // branch after the walk
    const int free_adjacent = (adj_low ? 1 : 0) + (adj_high ? 1 : 0);

    auto make_run_sheaf = [&](const Run& r, int dec_left, int dec_right) {
        std::vector<int> degs(S.degrees().begin() + (r.first - 1), S.degrees().begin() + r.last);
        degs.front() += dec_left;
        degs.back() += dec_right;
        return StringSheaf(S.start() + r.first - 1, std::move(degs), cycle);
    };

    if (!gen.inverse) {
        // H^{-1}: Euler kernels of the evaluation, one per consumed pass
        for (int q = 1; q <= k; ++q) {
            if (m_fwd[q] >= 2) out.emplace_back(p - 1, StringSheaf(comp, {c - 1}, cycle), m_fwd[q] - 1);
            if (m_fwd[q] >= 1) removed[q] = 1;
        }
        // coker of the degree-zero evaluation: the string split at consumed passes
        std::vector<Atom> coker;
        for (const auto& r : surviving_runs(removed, k)) coker.emplace_back(p, make_run_sheaf(r, 0, 0), 1);
        // H^1
        if (h_S_alpha > 0) out.emplace_back(p + 1, alpha, h_S_alpha);
        // H^0: extension of alpha^{h1} by the cokernel
        if (h1 == 0) {
            out.insert(out.end(), coker.begin(), coker.end());
        } else if (coker.empty()) {
            out.emplace_back(p, alpha, h1);
        } else if (h_alpha_S == 0 && h_S_alpha == 0) {
            // pure extension: glue alpha passes onto the adjacent free ends
            if (free_adjacent != h1)
                throw UnresolvedMutation("extension shape mismatch twisting " + S.str() + " by " + gen.str(),
                                         partial_report(atom, gen, h_alpha_S, h1, h_S_alpha));
            std::vector<int> degs = S.degrees();
            int start = S.start();
            if (adj_low) {
                degs.front() += 1;
                degs.insert(degs.begin(), c);
                start -= 1;
            }
            if (adj_high) {
                degs.back() += 1;
                degs.push_back(c);
            }
            out.emplace_back(p, StringSheaf(start, std::move(degs), cycle), 1);
        } else {
            long long obstruction = 0;
            for (const auto& a : coker) obstruction += calc.table(alpha, a.sheaf).ext1;
            if (obstruction == 0) {
                out.insert(out.end(), coker.begin(), coker.end());
                out.emplace_back(p, alpha, h1);
            } else {
                throw UnresolvedMutation("ambiguous degree-zero extension twisting " + S.str() + " by " + gen.str(),
                                         partial_report(atom, gen, h_alpha_S, h1, h_S_alpha));
            }
        }
    } else {
        // inverse twist: dual triangle id -> RHom(-, alpha)^v (x) alpha
        for (int q = 1; q <= k; ++q) {
            if (m_inv[q] >= 2) out.emplace_back(p + 1, StringSheaf(comp, {c + 1}, cycle), m_inv[q] - 1);
            if (m_inv[q] >= 1) removed[q] = 1;
        }
        if (h_alpha_S > 0) out.emplace_back(p - 1, alpha, h_alpha_S);
        // kernel of the coevaluation: cut ends lose a degree
        std::vector<Atom> kernel;
        for (const auto& r : surviving_runs(removed, k))
            kernel.emplace_back(p, make_run_sheaf(r, r.first > 1 ? -1 : 0, r.last < k ? -1 : 0), 1);
        if (h1 == 0) {
            out.insert(out.end(), kernel.begin(), kernel.end());
        } else if (kernel.empty()) {
            out.emplace_back(p, alpha, h1);
        } else if (h_alpha_S == 0 && h_S_alpha == 0) {
            if (free_adjacent != h1)
                throw UnresolvedMutation("extension shape mismatch untwisting " + S.str() + " by " + gen.str(),
                                         partial_report(atom, gen, h_alpha_S, h1, h_S_alpha));
            std::vector<int> degs = S.degrees();
            int start = S.start();
            if (adj_low) {
                degs.insert(degs.begin(), c + 1);
                start -= 1;
            }
            if (adj_high) degs.push_back(c + 1);
            out.emplace_back(p, StringSheaf(start, std::move(degs), cycle), 1);
        } else {
            long long obstruction = 0;
            for (const auto& a : kernel) obstruction += calc.table(a.sheaf, alpha).ext1;
            if (obstruction == 0) {
                out.insert(out.end(), kernel.begin(), kernel.end());
                out.emplace_back(p, alpha, h1);
            } else {
                throw UnresolvedMutation("ambiguous degree-zero extension untwisting " + S.str() + " by " + gen.str(),
                                         partial_report(atom, gen, h_alpha_S, h1, h_S_alpha));
            }
        }
    }
    return out;
}

}  // namespace

GradedModel twist_model(const TwistGen& gen, const GradedModel& model, const HomCalculator& calc,
                        bool* faithful) {
    const CycleConfig& cycle = calc.cycle();
    if (faithful) *faithful = true;
    std::vector<Atom> out;
    for (const auto& atom : model.atoms()) {
        Atom unit(atom.shift, atom.sheaf, 1);
        std::vector<Atom> pieces = twist_atom(gen, unit, calc);
        if (pieces.empty())
            throw EngineError("internal: twist annihilated " + atom.sheaf.str());
        if (faithful) {
            for (const auto& piece : pieces)
                if (piece.shift != pieces.front().shift) *faithful = false;
        }
        for (auto& piece : pieces) {
            piece.mult *= atom.mult;
            out.push_back(piece);
        }
    }
    GradedModel result(std::move(out));

    // the K-class rule must hold on the nose for every resolved twist
    KClass expect = twist_kclass(gen.k_class(cycle), model.k_class(cycle), cycle);
    if (result.k_class(cycle) != expect)
        throw EngineError("internal: K-conservation violated by " + gen.str());
    return result;
}

GradedModel apply_word(const TwistWord& word, const GradedModel& model, const HomCalculator& calc) {
    const CycleConfig& cycle = calc.cycle();
    GradedModel current = model;
    KClass track = model.k_class(cycle);
    size_t step_index = 0;
    for (const auto& step : word.steps()) {
        if (step.is_shift) {
            current = current.shifted(step.shift);
            if (step.shift % 2 != 0) track = -track;
        } else {
            try {
                current = twist_model(step.gen, current, calc);
            } catch (UnresolvedMutation& e) {
                throw UnresolvedMutation("at word step " + std::to_string(step_index) + " (" +
                                             step.gen.str() + "): " + e.what(),
                                         e.partial_json);
            }
            track = twist_kclass(step.gen.k_class(cycle), track, cycle);
        }
        if (current.k_class(cycle) != track)
            throw EngineError("internal: tracked K-class diverged at word step " + std::to_string(step_index));
        ++step_index;
    }
    return current;
}

}  // namespace cycletwist
