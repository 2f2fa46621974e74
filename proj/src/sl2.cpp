#include "cycletwist/sl2.hpp"

#include <array>
#include <deque>
#include <map>
#include <numeric>

namespace cycletwist {

namespace {

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    if (r < 0) r += m;
    return r;
}

// extended gcd: returns g and x, y with a x + b y = g
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

long long mod_inverse(long long b, long long m) {
    if (m == 1) return 1;
    long long x, y;
    long long g = ext_gcd(mod_reduce(b, m), m, x, y);
    if (g != 1) throw NotCoprime("residue " + std::to_string(b) + " is not a unit modulo " + std::to_string(m));
    return mod_reduce(x, m);
}

}  // namespace

UnitSubgroup UnitSubgroup::closure(const std::vector<long long>& gens, long long modulus) {
    if (modulus < 1) throw DomainError("modulus must be positive");
    std::set<long long> elems;
    elems.insert(mod_reduce(1, modulus));
    std::deque<long long> queue(elems.begin(), elems.end());
    std::vector<long long> normalized;
    for (long long g : gens) {
        long long r = mod_reduce(g, modulus);
        if (modulus > 1 && std::gcd(r, modulus) != 1)
            throw NotCoprime("generator " + std::to_string(g) + " is not a unit modulo " + std::to_string(modulus));
        if (elems.insert(r).second) queue.push_back(r);
        normalized.push_back(r);
    }
    while (!queue.empty()) {
        long long x = queue.front();
        queue.pop_front();
        for (long long g : normalized) {
            long long y = mod_reduce(x * g, modulus);
            if (elems.insert(y).second) queue.push_back(y);
        }
    }
    return UnitSubgroup(modulus, std::move(elems));
}

UnitSubgroup UnitSubgroup::from_elements(const std::vector<long long>& elems, long long modulus) {
    if (modulus < 1) throw DomainError("modulus must be positive");
    std::set<long long> set;
    for (long long e : elems) {
        long long r = mod_reduce(e, modulus);
        if (modulus > 1 && std::gcd(r, modulus) != 1)
            throw NotCoprime("element " + std::to_string(e) + " is not a unit modulo " + std::to_string(modulus));
        set.insert(r);
    }
    if (!set.count(mod_reduce(1, modulus))) throw DomainError("unit subgroup must contain 1");
    for (long long x : set)
        for (long long y : set)
            if (!set.count(mod_reduce(x * y, modulus)))
                throw DomainError("element set is not closed under multiplication");
    return UnitSubgroup(modulus, std::move(set));
}

bool UnitSubgroup::contains(long long b) const { return elements_.count(mod_reduce(b, modulus_)) != 0; }

bool in_gamma0(const SL2Matrix& m, long long level) {
    if (level < 1) throw DomainError("level must be positive");
    return m.d % level == 0;
}

bool in_theta_image(const SL2Matrix& m, long long level, const UnitSubgroup& h) {
    if (h.modulus() != level) throw ModulusMismatch("subgroup modulus does not match level");
    return in_gamma0(m, level) && h.contains(m.b);
}

SL2Matrix lift_residue(long long b, long long level) {
    if (level < 1) throw DomainError("level must be positive");
    long long bn = mod_reduce(b, level);
    if (bn == 0) {
        if (level == 1)
            bn = 1;
        else
            throw NotCoprime("residue is congruent to zero");
    }
    if (std::gcd(bn, level) != 1)
        throw NotCoprime("residue " + std::to_string(b) + " is not coprime to " + std::to_string(level));
    long long c = mod_inverse(bn, level);
    if (c == 0) c = 1;  // level 1
    long long a = (c * bn - 1) / level;
    return SL2Matrix(c, a, level, bn);
}

long long euler_phi(long long n) {
    long long result = n;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

long long gamma0_index(long long level) {
    long long result = level;
    long long m = level;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result = result / p * (p + 1);
    }
    if (m > 1) result = result / m * (m + 1);
    return result;
}

long long fm_partner_count(long long level, const UnitSubgroup& h) {
    if (h.modulus() != level) throw ModulusMismatch("subgroup modulus does not match level");
    long long phi = euler_phi(level);
    if (phi % h.order() != 0) throw DomainError("subgroup order does not divide phi(level)");
    long long count = phi / h.order();
    if (level > 2 && h.contains_minus_one() && count > std::max<long long>(1, phi / 2))
        throw DomainError("partner count exceeds phi/2 bound");
    return count;
}

long long coset_index(long long level, const UnitSubgroup& h, long long max_cosets) {
    if (h.modulus() != level) throw ModulusMismatch("subgroup modulus does not match level");
    if (level == 1) return 1;

    // The theta image contains the principal congruence subgroup of the
    // level, so cosets are decided by residues; all arithmetic runs mod level.
    using Mat = std::array<long long, 4>;  // (c, a, d, b) mod level
    auto reduce = [&](const SL2Matrix& m) -> Mat {
        return {mod_reduce(m.c, level), mod_reduce(m.a, level), mod_reduce(m.d, level),
                mod_reduce(m.b, level)};
    };
    auto mul = [&](const Mat& x, const Mat& y) -> Mat {
        return {mod_reduce(x[0] * y[0] + x[1] * y[2], level), mod_reduce(x[0] * y[1] + x[1] * y[3], level),
                mod_reduce(x[2] * y[0] + x[3] * y[2], level), mod_reduce(x[2] * y[1] + x[3] * y[3], level)};
    };
    auto inv = [&](const Mat& x) -> Mat {
        return {mod_reduce(x[3], level), mod_reduce(-x[1], level), mod_reduce(-x[2], level),
                mod_reduce(x[0], level)};
    };
    auto member = [&](const Mat& x) { return x[2] == 0 && h.contains(x[3]); };

    std::vector<Mat> gens;
    for (const SL2Matrix& g :
         {SL2Matrix::gen_u(), SL2Matrix::gen_u().inverse(), SL2Matrix::gen_l(),
          SL2Matrix::gen_l().inverse(), SL2Matrix::gen_s(), SL2Matrix::gen_s().inverse()})
        gens.push_back(reduce(g));

    std::vector<Mat> reps;
    std::map<Mat, size_t> coset_of;
    std::deque<size_t> queue;

    Mat id = {1, 0, 0, 1};
    reps.push_back(id);
    coset_of[id] = 0;
    queue.push_back(0);

    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Mat x = mul(reps[i], g);
            auto it = coset_of.find(x);
            if (it != coset_of.end()) continue;
            size_t found = reps.size();
            for (size_t r = 0; r < reps.size(); ++r) {
                if (member(mul(x, inv(reps[r])))) {
                    found = r;
                    break;
                }
            }
            coset_of[x] = found;
            if (found == reps.size()) {
                reps.push_back(x);
                queue.push_back(found);
                if (static_cast<long long>(reps.size()) > max_cosets)
                    throw ResourceLimit("coset enumeration exceeded " + std::to_string(max_cosets) +
                                        " cosets at level " + std::to_string(level));
            }
        }
    }
    return static_cast<long long>(reps.size());
}

SL2Word word_decompose(const SL2Matrix& m) {
    // reduce to the identity by left multiplications, Euclid on the first column
    struct Applied {
        char gen;
        long long power;
    };
    std::vector<Applied> applied;
    long long c = m.c, a = m.a, d = m.d, b = m.b;

    auto apply_u = [&](long long t) {  // U^t: (c,a) -= t*(d,b)
        c -= t * d;
        a -= t * b;
        if (t != 0) applied.push_back({'U', t});
    };
    auto apply_l = [&](long long t) {  // L^t: (d,b) += t*(c,a)
        d += t * c;
        b += t * a;
        if (t != 0) applied.push_back({'L', t});
    };

    while (d != 0) {
        if (c == 0) {
            // det = -ad = 1 forces |d| = 1; swap rows via S = L^{-1} U^{-1} L^{-1}
            apply_l(-1);
            apply_u(-1);
            apply_l(-1);
            continue;
        }
        if (std::abs(c) >= std::abs(d))
            apply_u(c / d);
        else
            apply_l(-(d / c));
    }
    SL2Word word;
    if (c == -1) {  // central factor, commutes with everything
        word.central = true;
        c = -c;
        a = -a;
        b = -b;
    }
    if (c != 1 || b != 1 || d != 0)
        throw EngineError("internal: SL2 reduction did not reach a unipotent");
    apply_u(a);  // clears the remaining upper entry

    // a_r ... a_1 m = 1, so m = a_1^{-1} ... a_r^{-1} (times the central part)
    for (const auto& step : applied) word.factors.push_back({step.gen, -step.power});
    return word;
}

SL2Matrix evaluate_word(const SL2Word& w) {
    SL2Matrix m = w.central ? SL2Matrix::minus_identity() : SL2Matrix();
    for (const auto& f : w.factors) {
        SL2Matrix g = (f.gen == 'U') ? SL2Matrix(1, -f.power, 0, 1) : SL2Matrix(1, 0, f.power, 1);
        m = m * g;
    }
    return m;
}

}  // namespace cycletwist
