#include "vbalg/exterior.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace vbalg {

Exterior::Exterior(std::size_t n) : n_(n), masks_(n + 1), rank_(std::size_t(1) << n, 0) {
    // Lexicographic order on sorted tuples.
    std::vector<int> idx;
    for (std::size_t p = 0; p <= n; ++p) {
        idx.resize(p);
        for (std::size_t i = 0; i < p; ++i) idx[i] = static_cast<int>(i);
        while (true) {
            Mask m = 0;
            for (int i : idx) m |= Mask(1) << i;
            rank_[m] = masks_[p].size();
            masks_[p].push_back(m);
            int i = static_cast<int>(p) - 1;
            while (i >= 0 && idx[i] == static_cast<int>(n - p) + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

const Exterior& Exterior::of(std::size_t n) {
    if (n > max_n) throw std::invalid_argument("algebroid rank too large for dense exterior storage");
    static const std::array<Exterior, max_n + 1> table = [] {
        return [&]<std::size_t... I>(std::index_sequence<I...>) {
            return std::array<Exterior, max_n + 1>{Exterior(I)...};
        }(std::make_index_sequence<max_n + 1>{});
    }();
    return table[n];
}

std::vector<int> indices_of(Mask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

Mask mask_of(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) {
        if (m & (Mask(1) << i)) throw std::invalid_argument("repeated index in tuple");
        m |= Mask(1) << i;
    }
    return m;
}

}  // namespace vbalg
