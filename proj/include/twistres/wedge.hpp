#pragma once

#include <string>
#include <vector>

namespace twistres {

/// Sorts the indices of x_{l_1} ^ ... ^ x_{l_n} in place and returns the sign
/// of the permutation, or 0 when an index repeats (the wedge vanishes).
inline int wedge_sort(std::vector<int>& l) {
    int sign = 1;
    for (std::size_t i = 1; i < l.size(); ++i)
        for (std::size_t j = i; j > 0 && l[j - 1] >= l[j]; --j) {
            if (l[j - 1] == l[j]) return 0;
            std::swap(l[j - 1], l[j]);
            sign = -sign;
        }
    return sign;
}

inline std::string wedge_name(const std::vector<int>& l, const std::vector<std::string>& names) {
    if (l.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) s += "∧";
        s += names[l[i]];
    }
    return s;
}

} // namespace twistres
