#pragma once

#include <bit>
#include <cstdint>

// Flat word-array bitsets. Callers own the storage.
namespace npc::bits {

using word = std::uint64_t;

inline int words_for(int n) { return (n + 63) / 64; }

inline void set(word* b, int i) { b[i >> 6] |= word{1} << (i & 63); }
inline void reset(word* b, int i) { b[i >> 6] &= ~(word{1} << (i & 63)); }
inline bool test(const word* b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }

inline void clear(word* b, int w) {
    for (int k = 0; k < w; ++k) b[k] = 0;
}

inline void copy(word* dst, const word* src, int w) {
    for (int k = 0; k < w; ++k) dst[k] = src[k];
}

inline void or_into(word* dst, const word* src, int w) {
    for (int k = 0; k < w; ++k) dst[k] |= src[k];
}

inline bool intersects(const word* a, const word* b, int w) {
    for (int k = 0; k < w; ++k)
        if (a[k] & b[k]) return true;
    return false;
}

inline bool any(const word* a, int w) {
    for (int k = 0; k < w; ++k)
        if (a[k]) return true;
    return false;
}

inline int count(const word* a, int w) {
    int c = 0;
    for (int k = 0; k < w; ++k) c += std::popcount(a[k]);
    return c;
}

// |a \ b|
inline int count_minus(const word* a, const word* b, int w) {
    int c = 0;
    for (int k = 0; k < w; ++k) c += std::popcount(a[k] & ~b[k]);
    return c;
}

// (a \ b) ∩ c non-empty
inline bool minus_intersects(const word* a, const word* b, const word* c, int w) {
    for (int k = 0; k < w; ++k)
        if (a[k] & ~b[k] & c[k]) return true;
    return false;
}

// calls f(i) for every i in a \ b, ascending
template <class F>
void for_each_minus(const word* a, const word* b, int w, F&& f) {
    for (int k = 0; k < w; ++k) {
        word x = a[k] & ~b[k];
        while (x) {
            int t = std::countr_zero(x);
            f(k * 64 + t);
            x &= x - 1;
        }
    }
}

template <class F>
void for_each(const word* a, int w, F&& f) {
    for (int k = 0; k < w; ++k) {
        word x = a[k];
        while (x) {
            int t = std::countr_zero(x);
            f(k * 64 + t);
            x &= x - 1;
        }
    }
}

}  // namespace npc::bits
