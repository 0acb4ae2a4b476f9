#pragma once

#include <bit>
#include <vector>

namespace rado {

inline std::vector<int> mask_to_indices(unsigned mask) {
    std::vector<int> idx;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) idx.push_back(i);
    return idx;
}

inline std::vector<int> mask_complement_indices(unsigned mask, int k) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i)
        if (!(mask & (1u << i))) idx.push_back(i);
    return idx;
}

// All nonempty masks over k columns with at least min_size bits, ordered by
// (popcount, numeric value). Ascending numeric value within one size class is
// lexicographic order on the sorted index lists.
inline std::vector<unsigned> masks_by_size(int k, int min_size) {
    std::vector<unsigned> out;
    for (int s = min_size; s <= k; ++s)
        for (unsigned m = 1; m < (1u << k); ++m)
            if (std::popcount(m) == s) out.push_back(m);
    return out;
}

}  // namespace rado
