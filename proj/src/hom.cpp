#include "cycletwist/hom.hpp"

#include <algorithm>

#include "cycletwist/errors.hpp"

namespace cycletwist {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

struct Transit {
    int low_pass;  // passes (low_pass, low_pass+1) glued at this node
};

struct EndStrand {
    int pass;
    int branch;  // component the terminating pass lies over
};

struct NodeStrands {
    std::vector<Transit> transits;
    std::vector<EndStrand> ends;
};

std::vector<NodeStrands> strands_of(const StringSheaf& s, const CycleConfig& cycle) {
    std::vector<NodeStrands> per_node(cycle.size() + 1);
    const int k = s.length();
    for (int l = 1; l < k; ++l) per_node[s.transit_node(l, cycle)].transits.push_back({l});
    per_node[s.low_end_node(cycle)].ends.push_back({1, s.component(1, cycle)});
    per_node[s.high_end_node(cycle)].ends.push_back({k, s.component(k, cycle)});
    return per_node;
}

}  // namespace

long long hom_dim(const StringSheaf& src, const StringSheaf& tgt, const CycleConfig& cycle) {
    const int ks = src.length();
    const int kt = tgt.length();

    // Variable blocks: for passes l (source) and q (target) over a common
    // component, the coefficients of a form of degree D = b_q - a_l.
    std::vector<int> offset(static_cast<size_t>(ks) * kt, -1);
    std::vector<int> formdeg(static_cast<size_t>(ks) * kt, -1);
    auto idx = [kt](int l, int q) { return static_cast<size_t>(l - 1) * kt + (q - 1); };

    int slots = 0;
    for (int l = 1; l <= ks; ++l) {
        for (int q = 1; q <= kt; ++q) {
            if (src.component(l, cycle) != tgt.component(q, cycle)) continue;
            int D = tgt.degrees()[q - 1] - src.degrees()[l - 1];
            if (D < 0) continue;  // the zero space
            offset[idx(l, q)] = slots;
            formdeg[idx(l, q)] = D;
            slots += D + 1;
        }
    }

    UnionFind uf(slots + 1);
    const int ZERO = slots;

    // boundary coefficient of block (l, q): top monomial at infinity, bottom at 0
    auto boundary = [&](int l, int q, bool high) -> int {
        int o = offset[idx(l, q)];
        if (o < 0) return -1;
        return o + (high ? formdeg[idx(l, q)] : 0);
    };

    const auto src_strands = strands_of(src, cycle);
    const auto tgt_strands = strands_of(tgt, cycle);

    for (int j = 1; j <= cycle.size(); ++j) {
        const auto& S = src_strands[j];
        const auto& T = tgt_strands[j];
        const int c_hi = cycle.reduce(j);      // branch meeting the node at coordinate infinity
        const int c_lo = cycle.reduce(j + 1);  // branch meeting it at coordinate 0

        // both transit: boundary values agree across the node
        for (const auto& st : S.transits) {
            for (const auto& tt : T.transits) {
                int a = boundary(st.low_pass, tt.low_pass, true);
                int b = boundary(st.low_pass + 1, tt.low_pass + 1, false);
                if (a >= 0 && b >= 0)
                    uf.unite(a, b);
                else if (a >= 0)
                    uf.unite(a, ZERO);
                else if (b >= 0)
                    uf.unite(b, ZERO);
            }
        }
        // source ends, target transits: the branch-side form vanishes at the node
        for (const auto& se : S.ends) {
            for (const auto& tt : T.transits) {
                int slot = -1;
                if (se.branch == c_hi)
                    slot = boundary(se.pass, tt.low_pass, true);
                else if (se.branch == c_lo)
                    slot = boundary(se.pass, tt.low_pass + 1, false);
                if (slot >= 0) uf.unite(slot, ZERO);
            }
        }
        // source transit over target end, and end over end: unconstrained
    }

    std::vector<char> seen(slots + 1, 0);
    const int zero_root = uf.find(ZERO);
    long long dim = 0;
    for (int v = 0; v < slots; ++v) {
        int r = uf.find(v);
        if (r == zero_root || seen[r]) continue;
        seen[r] = 1;
        ++dim;
    }
    return dim;
}

long long HomCalculator::hom(const StringSheaf& source, const StringSheaf& target) const {
    std::string key = source.str();
    key += '>';
    key += target.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    long long d = hom_dim(source, target, cycle_);
    cache_.emplace(std::move(key), d);
    return d;
}

HomDims HomCalculator::table(const StringSheaf& source, const StringSheaf& target) const {
    HomDims dims;
    dims.hom = hom(source, target);
    dims.ext2 = hom(target, source);  // Serre duality along the fiber
    long long c = chi(source, target);
    dims.ext1 = dims.hom + dims.ext2 - c;
    if (dims.ext1 < 0)
        throw NegativeExtError("negative ext1 for " + source.str() + " -> " + target.str() +
                               " (hom=" + std::to_string(dims.hom) + ", ext2=" + std::to_string(dims.ext2) +
                               ", chi=" + std::to_string(c) + ")");
    return dims;
}

long long HomCalculator::graded_hom(const GradedModel& a, const GradedModel& b, int k) const {
    long long total = 0;
    for (const auto& x : a.atoms()) {
        for (const auto& y : b.atoms()) {
            int e = k + x.shift - y.shift;
            if (e < 0 || e > 2) continue;
            HomDims t = table(x.sheaf, y.sheaf);
            long long d = (e == 0) ? t.hom : (e == 1 ? t.ext1 : t.ext2);
            total += x.mult * y.mult * d;
        }
    }
    return total;
}

bool HomCalculator::is_spherical(const GradedModel& m) const {
    if (m.empty()) return false;
    int pmin = m.atoms().front().shift, pmax = pmin;
    for (const auto& a : m.atoms()) {
        pmin = std::min(pmin, a.shift);
        pmax = std::max(pmax, a.shift);
    }
    int kmin = std::min(pmin - pmax, 0);
    int kmax = std::max(pmax - pmin + 2, 2);
    for (int k = kmin; k <= kmax; ++k) {
        long long want = (k == 0 || k == 2) ? 1 : 0;
        if (graded_hom(m, m, k) != want) return false;
    }
    return true;
}

bool HomCalculator::is_rigid(const GradedModel& m) const { return graded_hom(m, m, 1) == 0; }

}  // namespace cycletwist
