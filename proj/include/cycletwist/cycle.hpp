#pragma once

#include <vector>

#include "cycletwist/errors.hpp"

namespace cycletwist {

// The cycle of n (-2)-curves C_1, ..., C_n (an I_n fiber, n >= 2).
// Components and nodes are 1-based and cyclic: C_m means C_{((m-1) mod n)+1},
// node N_j joins C_j and C_{j+1}.  On C_i the node N_{i-1} sits at local
// coordinate 0 and N_i at infinity; this fixes every boundary trivialization
// used by the Hom solver.
class CycleConfig {
  public:
    explicit CycleConfig(int n) : n_(n) {
        if (n < 2) throw CycleError("cycle needs at least 2 components, got n=" + std::to_string(n));
    }

    int size() const { return n_; }

    // reduce an arbitrary integer index to [1, n]
    int reduce(long long m) const {
        long long r = (m - 1) % n_;
        if (r < 0) r += n_;
        return static_cast<int>(r + 1);
    }

    // intersection numbers C_l . C_m; for n = 2 the two components meet twice
    long long intersection(int l, int m) const {
        l = reduce(l);
        m = reduce(m);
        if (l == m) return -2;
        if (n_ == 2) return 2;
        int d = l - m;
        if (d < 0) d = -d;
        return (d == 1 || d == n_ - 1) ? 1 : 0;
    }

    // v^T M w for the intersection matrix M
    long long pair(const std::vector<long long>& v, const std::vector<long long>& w) const {
        if (static_cast<int>(v.size()) != n_ || static_cast<int>(w.size()) != n_)
            throw CycleError("multiplicity vector length does not match cycle size");
        long long total = 0;
        for (int i = 1; i <= n_; ++i) {
            long long row = -2 * w[i - 1];
            if (n_ == 2) {
                row += 2 * w[2 - i];  // the other component, met twice
            } else {
                row += w[reduce(i - 1) - 1] + w[reduce(i + 1) - 1];
            }
            total += v[i - 1] * row;
        }
        return total;
    }

    bool operator==(const CycleConfig& o) const { return n_ == o.n_; }
    bool operator!=(const CycleConfig& o) const { return n_ != o.n_; }

  private:
    int n_;
};

}  // namespace cycletwist
