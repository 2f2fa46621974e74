#include "cycletwist/json_io.hpp"

#include <set>

#include "cycletwist/errors.hpp"

namespace cycletwist::io {

namespace {

void expect_object(const json& j, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + ": expected a JSON object");
}

void expect_keys(const json& j, const char* what, const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
    expect_object(j, what);
    for (const auto& k : required)
        if (!j.contains(k)) throw SchemaError(std::string(what) + ": missing field '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!required.count(it.key()) && !optional.count(it.key()))
            throw SchemaError(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

long long get_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw SchemaError(std::string(what) + ": expected an integer");
    return j.get<long long>();
}

std::vector<int> get_int_array(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(static_cast<int>(get_int(v, what)));
    return out;
}

}  // namespace

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("malformed JSON input");
    return j;
}

CycleConfig parse_cycle(const json& j) {
    expect_keys(j, "cycle", {"n"});
    long long n = get_int(j.at("n"), "cycle.n");
    if (n < 2) throw SchemaError("cycle.n must be at least 2");
    return CycleConfig(static_cast<int>(n));
}

StringSheaf parse_sheaf(const json& j, const CycleConfig& cycle) {
    expect_keys(j, "sheaf", {"start", "degrees"}, {"orientation"});
    int start = static_cast<int>(get_int(j.at("start"), "sheaf.start"));
    auto degrees = get_int_array(j.at("degrees"), "sheaf.degrees");
    if (degrees.empty()) throw SchemaError("sheaf.degrees must be nonempty");
    if (j.contains("orientation")) {
        std::string o = j.at("orientation").is_string() ? j.at("orientation").get<std::string>() : "";
        if (o == "reverse") return StringSheaf::from_reversed(start, degrees, cycle);
        if (o != "forward") throw SchemaError("sheaf.orientation must be 'forward' or 'reverse'");
    }
    return StringSheaf(start, degrees, cycle);
}

GradedModel parse_model(const json& j, const CycleConfig& cycle) {
    std::vector<Atom> atoms;
    auto parse_atom = [&](const json& a) {
        expect_keys(a, "atom", {"sheaf"}, {"shift", "mult"});
        int shift = a.contains("shift") ? static_cast<int>(get_int(a.at("shift"), "atom.shift")) : 0;
        long long mult = a.contains("mult") ? get_int(a.at("mult"), "atom.mult") : 1;
        if (mult < 1) throw SchemaError("atom.mult must be positive");
        atoms.emplace_back(shift, parse_sheaf(a.at("sheaf"), cycle), mult);
    };
    if (j.is_array()) {
        for (const auto& a : j) parse_atom(a);
    } else if (j.is_object() && j.contains("sheaf")) {
        parse_atom(j);
    } else if (j.is_object() && j.contains("start")) {
        atoms.emplace_back(0, parse_sheaf(j, cycle), 1);
    } else {
        throw SchemaError("model: expected an atom array, an atom, or a sheaf");
    }
    if (atoms.empty()) throw SchemaError("model: needs at least one atom");
    return GradedModel(std::move(atoms));
}

KClass parse_kclass(const json& j, const CycleConfig& cycle) {
    expect_keys(j, "kclass", {"mult", "euler"});
    if (!j.at("mult").is_array()) throw SchemaError("kclass.mult: expected an array");
    std::vector<long long> mult;
    for (const auto& v : j.at("mult")) mult.push_back(get_int(v, "kclass.mult"));
    if (static_cast<int>(mult.size()) != cycle.size())
        throw SchemaError("kclass.mult length must equal cycle size");
    return KClass(std::move(mult), get_int(j.at("euler"), "kclass.euler"));
}

KClass parse_class_like(const json& j, const CycleConfig& cycle) {
    if (j.is_object() && j.contains("mult")) return parse_kclass(j, cycle);
    if (j.is_object() && j.contains("start")) return parse_sheaf(j, cycle).k_class(cycle);
    return parse_model(j, cycle).k_class(cycle);
}

TwistGen parse_gen(const json& j, const CycleConfig& cycle) {
    expect_keys(j, "gen", {"component", "degree"}, {"inverse"});
    int comp = static_cast<int>(get_int(j.at("component"), "gen.component"));
    if (comp < 1 || comp > cycle.size()) throw SchemaError("gen.component out of range");
    int deg = static_cast<int>(get_int(j.at("degree"), "gen.degree"));
    bool inv = false;
    if (j.contains("inverse")) {
        if (!j.at("inverse").is_boolean()) throw SchemaError("gen.inverse must be a boolean");
        inv = j.at("inverse").get<bool>();
    }
    return TwistGen(comp, deg, inv);
}

TwistWord parse_word(const json& j, const CycleConfig& cycle) {
    if (!j.is_array()) throw SchemaError("word: expected an array of steps");
    TwistWord w;
    for (const auto& s : j) {
        expect_object(s, "word step");
        if (s.contains("t")) {
            expect_keys(s, "word step", {"t"});
            w.push_twist(parse_gen(s.at("t"), cycle));
        } else if (s.contains("shift")) {
            expect_keys(s, "word step", {"shift"});
            w.push_shift(static_cast<int>(get_int(s.at("shift"), "word.shift")));
        } else {
            throw SchemaError("word step: expected 't' or 'shift'");
        }
    }
    return w;
}

SL2Matrix parse_matrix(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw SchemaError("matrix: expected [[c,a],[d,b]]");
    long long c = get_int(j[0][0], "matrix.c"), a = get_int(j[0][1], "matrix.a");
    long long d = get_int(j[1][0], "matrix.d"), b = get_int(j[1][1], "matrix.b");
    if (c * b - a * d != 1) throw SchemaError("matrix: determinant cb - ad must be 1");
    return SL2Matrix(c, a, d, b);
}

SurfaceConfig parse_surface_config(const json& j) {
    expect_keys(j, "surface config", {"kodaira_fibers", "lambda"}, {"kappa_nonzero", "h_generators"});
    SurfaceConfig cfg;
    if (!j.at("kodaira_fibers").is_array()) throw SchemaError("kodaira_fibers: expected an array");
    for (const auto& f : j.at("kodaira_fibers")) {
        expect_keys(f, "fiber", {"type"}, {"multiplicity"});
        if (!f.at("type").is_string()) throw SchemaError("fiber.type must be a string");
        int mult = f.contains("multiplicity")
                       ? static_cast<int>(get_int(f.at("multiplicity"), "fiber.multiplicity"))
                       : 1;
        try {
            cfg.fibers.push_back(KodairaFiber::parse(f.at("type").get<std::string>(), mult));
        } catch (const DomainError& e) {
            throw SchemaError(e.what());
        }
    }
    cfg.lambda = get_int(j.at("lambda"), "lambda");
    if (cfg.lambda < 1) throw SchemaError("lambda must be positive");
    cfg.kappa_nonzero = j.contains("kappa_nonzero") ? j.at("kappa_nonzero").get<bool>() : true;
    if (j.contains("h_generators"))
        for (const auto& g : j.at("h_generators")) cfg.h_generators.push_back(get_int(g, "h_generators"));
    return cfg;
}

json encode_cycle(const CycleConfig& cycle) { return json{{"n", cycle.size()}}; }

json encode_sheaf(const StringSheaf& s) {
    return json{{"start", s.start()}, {"degrees", s.degrees()}};
}

json encode_model(const GradedModel& m) {
    json arr = json::array();
    for (const auto& a : m.atoms())
        arr.push_back(json{{"shift", a.shift}, {"sheaf", encode_sheaf(a.sheaf)}, {"mult", a.mult}});
    return arr;
}

json encode_kclass(const KClass& k) { return json{{"mult", k.mult}, {"euler", k.euler}}; }

json encode_gen(const TwistGen& g) {
    return json{{"component", g.component}, {"degree", g.degree}, {"inverse", g.inverse}};
}

json encode_word(const TwistWord& w) {
    json arr = json::array();
    for (const auto& s : w.steps()) {
        if (s.is_shift)
            arr.push_back(json{{"shift", s.shift}});
        else
            arr.push_back(json{{"t", encode_gen(s.gen)}});
    }
    return arr;
}

json encode_homdims(const HomDims& d) {
    return json{{"hom", d.hom}, {"ext1", d.ext1}, {"ext2", d.ext2}};
}

json encode_matrix(const SL2Matrix& m) {
    return json::array({json::array({m.c, m.a}), json::array({m.d, m.b})});
}

json encode_sl2_word(const SL2Word& w) {
    json factors = json::array();
    for (const auto& f : w.factors)
        factors.push_back(json{{"gen", std::string(1, f.gen)}, {"power", f.power}});
    return json{{"central", w.central}, {"factors", factors}};
}

json encode_normal_form(const NormalForm& nf) {
    return json{{"component", nf.component}, {"degree", nf.degree}, {"shift", nf.shift}};
}

namespace {
json encode_stats(const DescentStats& s) {
    return json{{"fast_hits", s.fast_hits},
                {"fast_abstentions", s.fast_abstentions},
                {"search_expansions", s.search_expansions},
                {"unresolved_skips", s.unresolved_skips}};
}
}  // namespace

json encode_trace(const ReductionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back(json{{"word", encode_word(s.word)},
                             {"before", s.profile_before},
                             {"after", s.profile_after}});
    return json{{"steps", steps},
                {"word", encode_word(t.word)},
                {"result", encode_normal_form(t.result)},
                {"stats", encode_stats(t.stats)}};
}

json encode_pair_reduction(const PairReduction& p) {
    NormalForm beta{p.alpha.component, p.alpha.degree - 1, p.alpha.shift};
    return json{{"word", encode_word(p.word)},
                {"alpha", encode_normal_form(p.alpha)},
                {"beta", encode_normal_form(beta)},
                {"stats", encode_stats(p.stats)}};
}

json encode_report(const AuteqReport& r) {
    json families = json::array();
    for (const auto& tf : r.kernel_twist_families)
        families.push_back(json{{"fiber", tf.fiber_index}, {"type", tf.fiber_name}, {"curves", tf.curves}});
    json lifts = json::array();
    for (const auto& m : r.lifts) lifts.push_back(encode_matrix(m));
    return json{
        {"kernel",
         {{"twist_families", families},
          {"line_bundle_family", "tensor by O_S(D) with D.F = 0"},
          {"automorphisms", "Aut S (symbolic)"},
          {"shift", "Z[2]"}}},
        {"image",
         {{"level", r.level},
          {"subgroup", r.subgroup},
          {"index_in_gamma0", r.index_in_gamma0},
          {"gamma0_index_in_sl2", r.gamma0_index_sl2},
          {"index_in_sl2", r.theta_index_sl2},
          {"lifts", lifts},
          {"description", r.image_description}}},
        {"fm_partners", {{"count", r.fm_residues.size()}, {"residues", r.fm_residues}}}};
}

json encode_diagnostics(const std::vector<Diagnostic>& diags) {
    json arr = json::array();
    for (const auto& d : diags) {
        const char* sev = d.severity == Diagnostic::Severity::Error
                              ? "error"
                              : (d.severity == Diagnostic::Severity::NotCovered ? "not_covered" : "warning");
        arr.push_back(json{{"severity", sev}, {"message", d.message}});
    }
    return arr;
}

}  // namespace cycletwist::io
