#include "cycletwist/surface.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "cycletwist/errors.hpp"

namespace cycletwist {

std::string KodairaFiber::name() const {
    switch (type) {
        case KodairaType::In:
            return "I" + std::to_string(n);
        case KodairaType::II:
            return "II";
        case KodairaType::III:
            return "III";
        case KodairaType::IV:
            return "IV";
        case KodairaType::InStar:
            return "I" + std::to_string(n) + "*";
        case KodairaType::IIStar:
            return "II*";
        case KodairaType::IIIStar:
            return "III*";
        case KodairaType::IVStar:
            return "IV*";
    }
    return "?";
}

KodairaFiber KodairaFiber::parse(const std::string& name, int multiplicity) {
    if (multiplicity < 1) throw DomainError("fiber multiplicity must be positive");
    KodairaFiber f;
    f.multiplicity = multiplicity;
    std::string s = name;
    bool star = !s.empty() && s.back() == '*';
    if (star) s.pop_back();
    if (s == "II")
        f.type = star ? KodairaType::IIStar : KodairaType::II;
    else if (s == "III")
        f.type = star ? KodairaType::IIIStar : KodairaType::III;
    else if (s == "IV")
        f.type = star ? KodairaType::IVStar : KodairaType::IV;
    else if (s.size() >= 2 && s[0] == 'I') {
        std::string digits = s.substr(1);
        if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw DomainError("unknown Kodaira type: " + name);
        f.type = star ? KodairaType::InStar : KodairaType::In;
        f.n = std::stoi(digits);
    } else {
        throw DomainError("unknown Kodaira type: " + name);
    }
    if (f.multiplicity > 1 && f.type != KodairaType::In)
        throw DomainError("only I_n fibers admit multiplicity > 1, got " + name);
    return f;
}

bool KodairaFiber::reducible() const {
    switch (type) {
        case KodairaType::In:
            return n >= 2;
        case KodairaType::II:
            return false;
        default:
            return true;  // III, IV and all starred types
    }
}

int KodairaFiber::euler_number() const {
    switch (type) {
        case KodairaType::In:
            return n;
        case KodairaType::II:
            return 2;
        case KodairaType::III:
            return 3;
        case KodairaType::IV:
            return 4;
        case KodairaType::InStar:
            return n + 6;
        case KodairaType::IIStar:
            return 10;
        case KodairaType::IIIStar:
            return 9;
        case KodairaType::IVStar:
            return 8;
    }
    return 0;
}

std::vector<Diagnostic> validate(const SurfaceConfig& config) {
    std::vector<Diagnostic> out;
    if (!config.kappa_nonzero)
        out.push_back({Diagnostic::Severity::Error, "Kodaira dimension zero is outside scope"});
    if (config.lambda < 1)
        out.push_back({Diagnostic::Severity::Error, "lambda must be a positive integer"});
    for (size_t i = 0; i < config.fibers.size(); ++i) {
        const auto& f = config.fibers[i];
        if (f.reducible()) {
            if (f.type != KodairaType::In) {
                out.push_back({Diagnostic::Severity::NotCovered,
                               "fiber " + std::to_string(i) + " (" + f.name() +
                                   "): additive reducible type outside the I_n setting"});
            } else if (f.multiplicity > 1) {
                out.push_back({Diagnostic::Severity::NotCovered,
                               "fiber " + std::to_string(i) + " (" + f.name() +
                                   "): multiple reducible fiber outside scope"});
            }
        }
        if (f.multiplicity > 1 && config.lambda % f.multiplicity != 0)
            out.push_back({Diagnostic::Severity::Warning,
                           "fiber " + std::to_string(i) + " multiplicity " +
                               std::to_string(f.multiplicity) + " does not divide lambda"});
    }
    for (long long g : config.h_generators) {
        long long r = g % config.lambda;
        if (r < 0) r += config.lambda;
        if (config.lambda > 1 && std::gcd(r, config.lambda) != 1)
            out.push_back({Diagnostic::Severity::Error,
                           "H generator " + std::to_string(g) + " is not a unit modulo lambda"});
    }
    return out;
}

long long euler_number_check(const SurfaceConfig& config) {
    long long total = 0;
    for (const auto& f : config.fibers) total += f.euler_number();
    return total;
}

AuteqReport auteq_structure(const SurfaceConfig& config, long long max_cosets) {
    auto diags = validate(config);
    for (const auto& d : diags) {
        if (d.severity != Diagnostic::Severity::Warning)
            throw DomainError("configuration rejected: " + d.message);
    }

    AuteqReport rep;
    rep.level = config.lambda;

    for (size_t i = 0; i < config.fibers.size(); ++i) {
        const auto& f = config.fibers[i];
        if (f.type == KodairaType::In && f.n >= 2)
            rep.kernel_twist_families.push_back({static_cast<int>(i), f.name(), f.n});
    }

    UnitSubgroup h = UnitSubgroup::closure(config.h_generators, config.lambda);
    if (config.lambda > 2 && !h.contains_minus_one())
        throw DomainError("H must contain -1 (J(b) and J(-b) are always isomorphic)");
    for (long long e : h.elements()) rep.subgroup.push_back(e);

    rep.index_in_gamma0 = fm_partner_count(config.lambda, h);  // phi / |H|
    rep.gamma0_index_sl2 = gamma0_index(config.lambda);
    rep.theta_index_sl2 = coset_index(config.lambda, h, max_cosets);

    for (long long g : config.h_generators) {
        SL2Matrix lift = lift_residue(g, config.lambda);
        if (!in_theta_image(lift, config.lambda, h))
            throw EngineError("internal: generator lift escaped the theta image");
        rep.lifts.push_back(lift);
    }

    // coset representatives of (Z/lambda)^* / H, smallest member first, 1 leading
    std::vector<char> used(config.lambda == 1 ? 2 : config.lambda, 0);
    if (config.lambda <= 2) {
        rep.fm_residues.push_back(1);
    } else {
        for (long long b = 1; b < config.lambda; ++b) {
            if (std::gcd(b, config.lambda) != 1 || used[b]) continue;
            rep.fm_residues.push_back(b);
            for (long long x : h.elements()) used[(x * b) % config.lambda] = 1;
        }
    }

    std::string subgroup_str;
    for (long long e : rep.subgroup) {
        if (!subgroup_str.empty()) subgroup_str += ",";
        subgroup_str += std::to_string(e);
    }
    rep.image_description = "{ [[c,a],[d,b]] in Gamma_0(" + std::to_string(config.lambda) +
                            ") | b mod " + std::to_string(config.lambda) + " in {" + subgroup_str + "} }";
    return rep;
}

std::string AuteqReport::render_text() const {
    std::string kernel = "< ";
    for (const auto& tf : kernel_twist_families)
        kernel += "T_{O_{C_i}(a)} (i = 1.." + std::to_string(tf.curves) + " on the " + tf.fiber_name +
                  " fiber), ";
    kernel += "(x) O_S(D) with D.F = 0 >  x|  Aut S  x  Z[2]";

    std::string s;
    s += "1 -> " + kernel + "\n";
    s += "  -> Auteq D(S)\n";
    s += "  -> " + image_description + " -> 1\n";
    s += "index in Gamma_0(" + std::to_string(level) + "): " + std::to_string(index_in_gamma0);
    s += "   index in SL(2,Z): " + std::to_string(theta_index_sl2) + "\n";
    s += "Fourier-Mukai partners: J(b) for b in {";
    for (size_t i = 0; i < fm_residues.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(fm_residues[i]);
    }
    s += "}\n";
    return s;
}

}  // namespace cycletwist
