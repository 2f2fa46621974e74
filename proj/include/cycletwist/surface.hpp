#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cycletwist/sl2.hpp"

namespace cycletwist {

enum class KodairaType { In, II, III, IV, InStar, IIStar, IIIStar, IVStar };

struct KodairaFiber {
    KodairaType type = KodairaType::In;
    int n = 0;             // the subscript for I_n / I_n*; 0 otherwise
    int multiplicity = 1;  // > 1 only for I_n in this setting

    std::string name() const;
    static KodairaFiber parse(const std::string& name, int multiplicity);

    bool reducible() const;
    int euler_number() const;
};

struct SurfaceConfig {
    std::vector<KodairaFiber> fibers;
    long long lambda = 1;
    bool kappa_nonzero = true;
    std::vector<long long> h_generators;
};

struct Diagnostic {
    enum class Severity { Error, NotCovered, Warning } severity;
    std::string message;
};

// Hypothesis checks; failures come back as data, never as exceptions.
std::vector<Diagnostic> validate(const SurfaceConfig& config);

// sum of the topological Euler numbers of the listed fibers
long long euler_number_check(const SurfaceConfig& config);

struct AuteqReport {
    struct TwistFamily {
        int fiber_index;
        std::string fiber_name;
        int curves;  // one T_{O_{C_i}(a)} family per component curve
    };
    std::vector<TwistFamily> kernel_twist_families;
    // fixed symbolic kernel members: fiber-degree-zero line bundles, Aut S, [2]
    long long level = 1;
    std::vector<long long> subgroup;        // H as residues
    long long index_in_gamma0 = 1;          // phi(lambda) / |H|
    long long gamma0_index_sl2 = 1;         // psi(lambda)
    long long theta_index_sl2 = 1;          // coset enumeration result
    std::vector<SL2Matrix> lifts;           // one generator lift per H generator
    std::vector<long long> fm_residues;     // coset representatives, 1 first
    std::string image_description;

    std::string render_text() const;  // the short exact sequence, human form
};

AuteqReport auteq_structure(const SurfaceConfig& config, long long max_cosets = 100000);

}  // namespace cycletwist
