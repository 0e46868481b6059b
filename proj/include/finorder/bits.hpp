#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace finorder {

// Subsets of a finite carrier of at most 64 points; bit i is point i.
using Mask = std::uint64_t;

inline constexpr int kMaxPoints = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr bool has(Mask m, int i) { return ((m >> i) & Mask{1}) != 0; }

constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

constexpr bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline int popcount(Mask m) { return std::popcount(m); }

template <class F>
void for_each_bit(Mask m, F&& f)
{
    while (m != 0) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

// "0110": character i is point i.
inline std::string mask_to_bits(Mask m, int n)
{
    std::string out(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (has(m, i))
            out[static_cast<std::size_t>(i)] = '1';
    return out;
}

} // namespace finorder
