#ifndef FRFOLD_DIFFVEC_HPP
#define FRFOLD_DIFFVEC_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frfold {

inline constexpr int kWordBits = 64;

// Default aggregate-interval width: max(1, floor(log2 n) / 4), clamped to
// one below the word width.
inline int default_block_width(int n) {
    if (n <= 1) return 1;
    int log2n = std::bit_width(static_cast<unsigned>(n)) - 1;
    int w = log2n / 4;
    if (w < 1) w = 1;
    if (w > kWordBits - 1) w = kWordBits - 1;
    return w;
}

// Partition of [1, n] into k = floor(n/w) + 1 aggregate intervals. Interval
// s covers [s*w + 1, (s+1)*w] for s < k-1; the last interval holds whatever
// remains (possibly nothing).
struct BlockPartition {
    int n = 0;
    int w = 1;
    int k = 1;

    static BlockPartition make(int n, int w) {
        if (w < 1 || w > kWordBits - 1) {
            throw std::invalid_argument("block width must be in [1, " + std::to_string(kWordBits - 1) + "]");
        }
        BlockPartition p;
        p.n = n;
        p.w = w;
        p.k = (n >= 0 ? n / w : 0) + 1;
        return p;
    }

    int block_of(int pos) const { return (pos - 1) / w; }
    int first(int s) const { return s * w + 1; }
    int last(int s) const {
        int e = (s + 1) * w;
        return e < n ? e : n;
    }
    // Blocks 0 .. k-2 always have exactly w positions.
    bool full(int s) const { return (s + 1) * w <= n; }
};

// A w-component 0/1 vector packed into one machine word, least significant
// bit first: component q (1-based) occupies bit q-1.

inline std::uint64_t encode_vector(const std::vector<int>& components, int w) {
    if (static_cast<int>(components.size()) != w) {
        throw std::invalid_argument("encode_vector: component count must equal w");
    }
    std::uint64_t value = 0;
    for (int q = 1; q <= w; ++q) {
        int c = components[static_cast<std::size_t>(q - 1)];
        if (c != 0 && c != 1) throw std::invalid_argument("encode_vector: components must be 0 or 1");
        value |= static_cast<std::uint64_t>(c) << (q - 1);
    }
    return value;
}

inline std::vector<int> decode_vector(std::uint64_t value, int w) {
    if (w < kWordBits && value >= (std::uint64_t{1} << w)) {
        throw std::invalid_argument("decode_vector: value does not fit in w bits");
    }
    std::vector<int> components(static_cast<std::size_t>(w));
    for (int q = 1; q <= w; ++q) {
        components[static_cast<std::size_t>(q - 1)] = static_cast<int>((value >> (q - 1)) & 1u);
    }
    return components;
}

// Branch-free component access used by the solvers' inner loops.
inline int vec_bit(std::uint64_t value, int q) { return static_cast<int>((value >> (q - 1)) & 1u); }

}  // namespace frfold

#endif
