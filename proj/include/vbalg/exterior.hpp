#ifndef VBALG_EXTERIOR_HPP
#define VBALG_EXTERIOR_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vbalg {

using Mask = std::uint32_t;

/* Index bookkeeping for alternating tensors on n generators. A sorted index
   tuple is a bit mask; tuples of each size are numbered lexicographically. */
class Exterior {
public:
    static constexpr std::size_t max_n = 12;
    static const Exterior& of(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t count(std::size_t p) const { return p <= n_ ? masks_[p].size() : 0; }
    const std::vector<Mask>& masks(std::size_t p) const {
        static const std::vector<Mask> none;
        return p <= n_ ? masks_[p] : none;
    }
    std::size_t rank(Mask m) const { return rank_[m]; }

private:
    explicit Exterior(std::size_t n);
    std::size_t n_;
    std::vector<std::vector<Mask>> masks_;
    std::vector<std::size_t> rank_;
};

inline int popcount(Mask m) { return std::popcount(m); }

// Sign of the shuffle putting the sorted tuple a in front of b (disjoint).
inline int shuffle_sign(Mask a, Mask b) {
    int inversions = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        inversions += std::popcount(a >> (j + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

// Sign of moving generator c to the front of the sorted tuple m (c not in m).
inline int insert_sign(Mask m, int c) {
    return (std::popcount(m & ((Mask(1) << c) - 1)) & 1) ? -1 : 1;
}

std::vector<int> indices_of(Mask m);
Mask mask_of(const std::vector<int>& idx);

}  // namespace vbalg

#endif
