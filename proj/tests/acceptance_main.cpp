// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are exact (integer equality) throughout; the stated
// runtime budgets are asserted.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cycletwist/reduce.hpp"
#include "cycletwist/sl2.hpp"
#include "cycletwist/surface.hpp"
#include "forward_words.hpp"

using namespace cycletwist;
namespace cttest = cycletwist::testing;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& note = "") {
    std::printf("criterion %d [%s] %-34s (%.2fs)%s%s\n", number, pass ? "PASS" : "FAIL",
                name.c_str(), seconds, note.empty() ? "" : "  ", note.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double run_timed(const std::function<bool(std::string&)>& body, int number, const std::string& name,
                 double budget_seconds) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
        pass = body(note);
    } catch (const std::exception& e) {
        pass = false;
        note += std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        pass = false;
        note += " over budget " + std::to_string(budget_seconds) + "s";
    }
    report(number, name, pass, secs, note);
    return secs;
}

std::vector<StringSheaf> corpus(const CycleConfig& cyc, int kmax, int dmin = -2, int dmax = 2) {
    std::vector<StringSheaf> out;
    std::vector<int> degs;
    auto rec = [&](auto&& self) -> void {
        if (!degs.empty())
            for (int s = 1; s <= cyc.size(); ++s) out.emplace_back(s, degs, cyc);
        if (static_cast<int>(degs.size()) == kmax) return;
        for (int d = dmin; d <= dmax; ++d) {
            degs.push_back(d);
            self(self);
            degs.pop_back();
        }
    };
    rec(rec);
    return out;
}

// Shape constraints on a cohomology model of a spherical object:
// no summand ends one step before another begins, and degrees of passes over
// a common component differ by at most one.
bool degree_restrictions_hold(const GradedModel& m, const CycleConfig& cyc, std::string& why) {
    const auto& atoms = m.atoms();
    for (const auto& fa : atoms) {
        for (const auto& ga : atoms) {
            const StringSheaf& F = fa.sheaf;
            const StringSheaf& G = ga.sheaf;
            int tF = cyc.reduce(F.start() + F.length() - 1);
            if (tF == cyc.reduce(G.start() - 1)) {
                why = "endpoint adjacency: " + F.str() + " against " + G.str();
                return false;
            }
            for (int l = 1; l <= F.length(); ++l)
                for (int q = 1; q <= G.length(); ++q) {
                    if (F.component(l, cyc) != G.component(q, cyc)) continue;
                    int diff = F.degrees()[l - 1] - G.degrees()[q - 1];
                    if (diff < -1 || diff > 1) {
                        why = "degree gap: " + F.str() + " vs " + G.str();
                        return false;
                    }
                }
        }
    }
    return true;
}

bool criterion1(std::string&) {
    CycleConfig cyc(3);
    HomCalculator calc(cyc);
    for (int a = -8; a <= 8; ++a)
        for (int d = -6; d <= 6; ++d) {
            int b = a + d;
            HomDims t = calc.table(StringSheaf(1, {a}, cyc), StringSheaf(1, {b}, cyc));
            long long expect = (d > 1) ? d - 1 : ((d < -1) ? -d - 1 : 0);
            if (t.ext1 != expect) return false;
            if (t.hom != std::max(d + 1, 0)) return false;
            if (t.ext2 != std::max(-d + 1, 0)) return false;
        }
    return true;
}

bool criterion2(std::string&) {
    CycleConfig cyc(3);
    HomCalculator calc(cyc);
    for (int a = -5; a <= 5; ++a) {
        KClass k = StringSheaf(1, {a}, cyc).k_class(cyc);
        if (euler_pairing(k, k, cyc) != 2) return false;
        if (euler_pairing(k, KClass::point(cyc), cyc) != 0) return false;
        if (!calc.is_spherical(GradedModel::single(StringSheaf(1, {a}, cyc)))) return false;
    }
    return true;
}

bool criterion3(std::string&) {
    CycleConfig c3(3);
    HomCalculator calc(c3);

    GradedModel spread = twist_model(TwistGen(1, 0), GradedModel::single(StringSheaf(1, {2}, c3)), calc);
    GradedModel expect_spread(
        {Atom(-1, StringSheaf(1, {-1}, c3), 2), Atom(0, StringSheaf(1, {0}, c3), 1)});
    if (spread != expect_spread) return false;

    GradedModel collapse =
        twist_model(TwistGen(1, -1), GradedModel::single(StringSheaf(1, {0, 0, 0, 0}, c3)), calc);
    if (collapse != GradedModel::single(StringSheaf(2, {0, 0}, c3))) return false;

    CycleConfig c5(5);
    HomCalculator calc5(c5);
    for (int a = -3; a <= 3; ++a) {
        GradedModel m = GradedModel::single(StringSheaf(3, {a}, c5));
        if (twist_model(TwistGen(1, a), m, calc5) != m) return false;
        if (twist_model(TwistGen(5, 0, true), m, calc5) != m) return false;
    }
    return true;
}

bool criterion4(std::string& note) {
    long long resolved = 0, unresolved = 0, k_checked = 0;

    // K-conservation over the whole corpus, one calculator per generator to
    // keep the memo bounded
    for (int n : {2, 3, 4}) {
        CycleConfig cyc(n);
        auto sheaves = corpus(cyc, 6);
        for (int comp = 1; comp <= n; ++comp)
            for (int deg = -2; deg <= 2; ++deg)
                for (int inv = 0; inv < 2; ++inv) {
                    TwistGen g(comp, deg, inv != 0);
                    HomCalculator calc(cyc);
                    KClass gk = g.k_class(cyc);
                    for (const auto& s : sheaves) {
                        GradedModel m = GradedModel::single(s);
                        try {
                            GradedModel t = twist_model(g, m, calc);
                            // independent recomputation of the K-class rule
                            if (t.k_class(cyc) != twist_kclass(gk, m.k_class(cyc), cyc)) return false;
                            ++resolved;
                            ++k_checked;
                        } catch (const UnresolvedMutation&) {
                            ++unresolved;
                        }
                    }
                }
    }

    // isometry: all ordered pairs of the k <= 3 subcorpus, every generator
    long long pairs = 0;
    for (int n : {2, 3, 4}) {
        CycleConfig cyc(n);
        HomCalculator calc(cyc);
        auto sheaves = corpus(cyc, 3);
        for (int comp = 1; comp <= n; ++comp)
            for (int deg = -2; deg <= 2; ++deg)
                for (int inv = 0; inv < 2; ++inv) {
                    TwistGen g(comp, deg, inv != 0);
                    std::vector<int> ok_index;
                    std::vector<GradedModel> images;
                    for (size_t i = 0; i < sheaves.size(); ++i) {
                        try {
                            bool faithful = true;
                            GradedModel t =
                                twist_model(g, GradedModel::single(sheaves[i]), calc, &faithful);
                            if (faithful) {
                                ok_index.push_back(static_cast<int>(i));
                                images.push_back(std::move(t));
                            }
                        } catch (const UnresolvedMutation&) {
                        }
                    }
                    for (size_t x = 0; x < ok_index.size(); ++x)
                        for (size_t y = 0; y < ok_index.size(); ++y) {
                            GradedModel mx = GradedModel::single(sheaves[ok_index[x]]);
                            GradedModel my = GradedModel::single(sheaves[ok_index[y]]);
                            for (int k = -2; k <= 4; ++k)
                                if (calc.graded_hom(mx, my, k) != calc.graded_hom(images[x], images[y], k))
                                    return false;
                            ++pairs;
                        }
                }
    }

    // seeded spot checks across the full k <= 6 range
    std::mt19937_64 rng(20260809ULL);
    for (int n : {2, 3, 4}) {
        CycleConfig cyc(n);
        HomCalculator calc(cyc);
        auto sheaves = corpus(cyc, 6);
        for (int trial = 0; trial < 1500; ++trial) {
            const StringSheaf& x = sheaves[rng() % sheaves.size()];
            const StringSheaf& y = sheaves[rng() % sheaves.size()];
            TwistGen g(1 + static_cast<int>(rng() % n), static_cast<int>(rng() % 5) - 2,
                       (rng() % 2) == 0);
            try {
                bool fx = true, fy = true;
                GradedModel tx = twist_model(g, GradedModel::single(x), calc, &fx);
                GradedModel ty = twist_model(g, GradedModel::single(y), calc, &fy);
                if (!fx || !fy) continue;
                for (int k = -2; k <= 4; ++k)
                    if (calc.graded_hom(GradedModel::single(x), GradedModel::single(y), k) !=
                        calc.graded_hom(tx, ty, k))
                        return false;
                ++pairs;
            } catch (const UnresolvedMutation&) {
            }
        }
    }

    note = "K on " + std::to_string(k_checked) + " twists (" + std::to_string(unresolved) +
           " unresolved skips), isometry on " + std::to_string(pairs) + " pairs";
    // the corpus is dominated by non-rigid strings whose twists legitimately
    // exceed the rule table; the gate is on the resolved population
    return resolved > 300000 && pairs > 1000000;
}

bool criterion5_9(std::string& note5, std::string& note9, bool& pass9) {
    std::mt19937_64 rng(424242ULL);
    cttest::ForwardCampaignStats stats;
    long long reductions = 0, shape_checked = 0;
    pass9 = true;
    std::string why;

    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);  // 2..5
        CycleConfig cyc(n);
        HomCalculator calc(cyc);
        int b = 1 + static_cast<int>(rng() % n);
        int a = static_cast<int>(rng() % 7) - 3;

        std::vector<GradedModel> models = {GradedModel::single(StringSheaf(b, {a}, cyc))};
        std::vector<std::vector<GradedModel>> inter;
        TwistWord w = cttest::random_faithful_word(models, 6, rng, calc, stats, &inter);

        // criterion 9: every faithful forward intermediate is the cohomology
        // of a twist-generated spherical object
        for (const auto& snapshot : inter) {
            if (pass9 && !degree_restrictions_hold(snapshot[0], cyc, why)) {
                pass9 = false;
                note9 = why + " (n=" + std::to_string(n) + ")";
            }
            ++shape_checked;
        }

        KClass tracked = StringSheaf(b, {a}, cyc).k_class(cyc);
        for (const auto& s : w.steps())
            if (!s.is_shift) tracked = twist_kclass(s.gen.k_class(cyc), tracked, cyc);
        if (models[0].k_class(cyc) != tracked) return false;

        ReductionTrace t = reduce_spherical(models[0], calc);  // NoDescentFound -> exception
        ++reductions;

        long long prev = models[0].total_length(cyc);
        for (const auto& step : t.steps) {
            long long before = std::accumulate(step.profile_before.begin(), step.profile_before.end(), 0LL);
            long long after = std::accumulate(step.profile_after.begin(), step.profile_after.end(), 0LL);
            if (before != prev || after >= before) return false;
            prev = after;
        }
        if (prev != 1) return false;

        for (const auto& s : t.word.steps()) {
            if (s.is_shift) {
                if (s.shift % 2 != 0) tracked = -tracked;
            } else {
                tracked = twist_kclass(s.gen.k_class(cyc), tracked, cyc);
            }
        }
        GradedModel nf = apply_word(t.word, models[0], calc);
        if (nf.total_length(cyc) != 1) return false;
        if (nf.k_class(cyc) != tracked) return false;
    }

    note5 = std::to_string(reductions) + " reductions, zero descent failures; draws rejected: " +
            std::to_string(stats.rejected_unresolved) + " unresolved, " +
            std::to_string(stats.rejected_spread) + " spread";
    note9 += (pass9 ? std::string("no violations over ") + std::to_string(shape_checked) + " models"
                    : "");
    return reductions == trials;
}

bool criterion6(std::string& note) {
    std::mt19937_64 rng(171717ULL);
    cttest::ForwardCampaignStats stats;
    long long done_low = 0, total_low = 0, findings_n4 = 0, done_n4 = 0;

    const int trials = 500;
    for (int trial = 0; trial < trials; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);  // 2..4; zero tolerance on n <= 3
        CycleConfig cyc(n);
        HomCalculator calc(cyc);

        std::vector<GradedModel> pair = {GradedModel::single(StringSheaf(1, {0}, cyc)),
                                         GradedModel::single(StringSheaf(1, {-1}, cyc))};
        cttest::random_faithful_word(pair, 6, rng, calc, stats);

        bool ok = false;
        try {
            PairReduction r = reduce_pair(pair[0], pair[1], calc);
            GradedModel a2 = apply_word(r.word, pair[0], calc);
            GradedModel b2 = apply_word(r.word, pair[1], calc);
            ok = a2.is_single_sheaf() && b2.is_single_sheaf() &&
                 a2.atoms()[0].sheaf.length() == 1 && b2.atoms()[0].sheaf.length() == 1 &&
                 a2.atoms()[0].shift == b2.atoms()[0].shift &&
                 a2.atoms()[0].sheaf.component(1, cyc) == b2.atoms()[0].sheaf.component(1, cyc) &&
                 a2.atoms()[0].sheaf.degrees()[0] == b2.atoms()[0].sheaf.degrees()[0] + 1 &&
                 r.alpha.component == a2.atoms()[0].sheaf.component(1, cyc);
        } catch (const EngineError&) {
            ok = false;
        }

        if (n <= 3) {
            ++total_low;
            if (ok) ++done_low;
        } else {
            ++done_n4;
            if (!ok) ++findings_n4;
        }
    }
    note = std::to_string(done_low) + "/" + std::to_string(total_low) + " on n<=3; n=4 findings: " +
           std::to_string(findings_n4) + "/" + std::to_string(done_n4);
    return done_low == total_low;
}

bool criterion7(std::string& note) {
    if (coset_index(5, UnitSubgroup::closure({2}, 5)) != 6) return false;
    if (coset_index(5, UnitSubgroup::from_elements({1, 4}, 5)) != 12) return false;
    if (fm_partner_count(5, UnitSubgroup::from_elements({1, 4}, 5)) != 2) return false;

    long long subgroups = 0;
    for (long long level = 1; level <= 20; ++level) {
        // all subgroups of (Z/level)^*: closures of every unit subset, deduped
        std::vector<long long> units;
        for (long long u = 1; u <= std::max<long long>(1, level - 1); ++u)
            if (level == 1 || std::gcd(u, level) == 1) units.push_back(u);
        if (level == 1) units = {1};
        std::set<std::set<long long>> seen;
        std::vector<UnitSubgroup> subs;
        const size_t m = units.size();
        for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
            std::vector<long long> gens;
            for (size_t i = 0; i < m; ++i)
                if (mask & (size_t(1) << i)) gens.push_back(units[i]);
            UnitSubgroup h = UnitSubgroup::closure(gens, level);
            if (seen.insert(h.elements()).second) subs.push_back(std::move(h));
        }
        for (const auto& h : subs) {
            long long expect = gamma0_index(level) * (euler_phi(level) / h.order());
            if (coset_index(level, h) != expect) return false;
            ++subgroups;
        }
    }
    note = "index identity over " + std::to_string(subgroups) + " subgroups, levels 1..20";
    return true;
}

bool criterion8(std::string&) {
    SurfaceConfig cfg;
    cfg.fibers = {KodairaFiber::parse("I7", 1), KodairaFiber::parse("I2", 1),
                  KodairaFiber::parse("II", 1), KodairaFiber::parse("I1", 5)};
    cfg.lambda = 5;
    cfg.kappa_nonzero = true;
    cfg.h_generators = {-1};

    for (const auto& d : validate(cfg))
        if (d.severity != Diagnostic::Severity::Warning) return false;

    AuteqReport rep = auteq_structure(cfg);
    if (rep.kernel_twist_families.size() != 2) return false;
    if (rep.kernel_twist_families[0].curves != 7 || rep.kernel_twist_families[1].curves != 2)
        return false;
    if (rep.subgroup != std::vector<long long>{1, 4}) return false;
    if (rep.index_in_gamma0 != 2) return false;
    if (rep.fm_residues != std::vector<long long>{1, 2}) return false;
    for (const auto& lift : rep.lifts)
        if (!in_theta_image(lift, 5, UnitSubgroup::from_elements({1, 4}, 5))) return false;

    SurfaceConfig base = cfg;
    base.fibers.back() = KodairaFiber::parse("I1", 1);
    if (euler_number_check(base) != 12) return false;
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite: exact tolerances, budgets asserted\n");

    run_timed(criterion1, 1, "single-curve ext1 table", 1.0);
    run_timed(criterion2, 2, "spherical certificates", 1.0);
    run_timed(criterion3, 3, "twist fixtures", 1.0);
    run_timed(criterion4, 4, "K-conservation + isometry", 300.0);

    {
        auto start = std::chrono::steady_clock::now();
        std::string note5, note9;
        bool pass9 = false;
        bool pass5 = false;
        try {
            pass5 = criterion5_9(note5, note9, pass9);
        } catch (const std::exception& e) {
            pass5 = false;
            pass9 = false;
            note5 = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > 600.0) {
            pass5 = false;
            note5 += " over budget";
        }
        report(5, "reduction round trips", pass5, secs, note5);
        report(9, "degree-restriction invariants", pass9, secs, note9);
    }

    run_timed(criterion6, 6, "pair round trips", 600.0);
    run_timed(criterion7, 7, "modular arithmetic", 120.0);
    run_timed(criterion8, 8, "worked surface fixture", 1.0);

    if (g_failures) {
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
