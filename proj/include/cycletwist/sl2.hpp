#pragma once

#include <set>
#include <string>
#include <vector>

#include "cycletwist/errors.hpp"

namespace cycletwist {

// Integer 2x2 matrix in the layout [[c, a], [d, b]] (rows (c a) and (d b)).
// The congruence condition of Gamma_0 sits on the lower-left entry d.
// Note this differs from the common [[a, b], [c, d]] labeling.
struct SL2Matrix {
    long long c = 1, a = 0, d = 0, b = 1;

    SL2Matrix() = default;
    SL2Matrix(long long c_, long long a_, long long d_, long long b_) : c(c_), a(a_), d(d_), b(b_) {
        if (det() != 1) throw DomainError("matrix is not in SL(2,Z): det = " + std::to_string(det()));
    }

    long long det() const { return c * b - a * d; }

    SL2Matrix operator*(const SL2Matrix& o) const {
        return SL2Matrix(c * o.c + a * o.d, c * o.a + a * o.b, d * o.c + b * o.d, d * o.a + b * o.b);
    }

    SL2Matrix inverse() const { return SL2Matrix(b, -a, -d, c); }

    bool operator==(const SL2Matrix&) const = default;

    std::string str() const {
        return "[[" + std::to_string(c) + "," + std::to_string(a) + "],[" + std::to_string(d) + "," +
               std::to_string(b) + "]]";
    }

    // theta-images of the three standard autoequivalences of a fiber
    static SL2Matrix gen_u() { return SL2Matrix(1, -1, 0, 1); }  // upper unipotent
    static SL2Matrix gen_l() { return SL2Matrix(1, 0, 1, 1); }   // lower unipotent
    static SL2Matrix gen_s() { return SL2Matrix(0, 1, -1, 0); }
    static SL2Matrix minus_identity() { return SL2Matrix(-1, 0, 0, -1); }
};

// Subgroup of (Z/modulus)^*, elements stored as canonical residues.
class UnitSubgroup {
  public:
    // multiplicative closure of the generators
    static UnitSubgroup closure(const std::vector<long long>& gens, long long modulus);
    // validated explicit element set
    static UnitSubgroup from_elements(const std::vector<long long>& elems, long long modulus);

    long long modulus() const { return modulus_; }
    const std::set<long long>& elements() const { return elements_; }
    long long order() const { return static_cast<long long>(elements_.size()); }
    bool contains(long long b) const;
    bool contains_minus_one() const { return contains(-1); }

  private:
    UnitSubgroup(long long modulus, std::set<long long> elems)
        : modulus_(modulus), elements_(std::move(elems)) {}

    long long modulus_ = 1;
    std::set<long long> elements_;
};

bool in_gamma0(const SL2Matrix& m, long long level);
bool in_theta_image(const SL2Matrix& m, long long level, const UnitSubgroup& h);

// [[c, a], [level, b]] with c the modular inverse of b; passes in_gamma0.
SL2Matrix lift_residue(long long b, long long level);

long long euler_phi(long long n);
// index of Gamma_0(level) in SL(2,Z): level * prod_{p | level} (1 + 1/p)
long long gamma0_index(long long level);

// |FM|: phi(level) / |h|
long long fm_partner_count(long long level, const UnitSubgroup& h);

// index of the theta-image subgroup in SL(2,Z), by breadth-first coset
// enumeration with the membership oracle; deterministic labels.
long long coset_index(long long level, const UnitSubgroup& h, long long max_cosets = 100000);

// word in the two unipotent generators plus the central -1
struct SL2Word {
    struct Factor {
        char gen;         // 'U' or 'L'
        long long power;  // nonzero
    };
    bool central = false;
    std::vector<Factor> factors;
};

SL2Word word_decompose(const SL2Matrix& m);
SL2Matrix evaluate_word(const SL2Word& w);

}  // namespace cycletwist
