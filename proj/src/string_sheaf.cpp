#include "cycletwist/string_sheaf.hpp"

#include <algorithm>

namespace cycletwist {

std::vector<int> StringSheaf::restrict(int comp, const CycleConfig& cycle) const {
    if (comp < 1 || comp > cycle.size())
        throw DomainError("restriction component out of range: " + std::to_string(comp));
    std::vector<int> out;
    for (int l = 1; l <= length(); ++l) {
        if (component(l, cycle) == comp) out.push_back(degrees_[l - 1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cycletwist
