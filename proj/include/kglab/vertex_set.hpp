#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace kglab {

/// Hard cap on the number of vertices of any hypergraph handled by the lab.
/// Every search here is desk scale; 256 leaves room for products such as
/// Petersen x Petersen (100 tuple vertices).
inline constexpr std::size_t kMaxVertices = 256;

/// Fixed-width set of 0-based vertex indices.
class VertexSet {
public:
    static constexpr std::size_t kWords = kMaxVertices / 64;

    constexpr VertexSet() = default;
    VertexSet(std::initializer_list<std::size_t> elems) {
        for (auto v : elems) insert(v);
    }

    static VertexSet range(std::size_t n) {
        VertexSet s;
        for (std::size_t w = 0; w < kWords && n > 0; ++w) {
            if (n >= 64) {
                s.words_[w] = ~std::uint64_t{0};
                n -= 64;
            } else {
                s.words_[w] = (std::uint64_t{1} << n) - 1;
                n = 0;
            }
        }
        return s;
    }

    void insert(std::size_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(std::size_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool contains(std::size_t v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if ((words_[i] & ~o.words_[i]) != 0) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if ((words_[i] & o.words_[i]) != 0) return true;
        return false;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    /// Smallest element, or kMaxVertices when empty.
    std::size_t first() const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return kMaxVertices;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < kWords; ++i) {
            auto w = words_[i];
            while (w != 0) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        out.reserve(size());
        for_each([&](std::size_t v) { out.push_back(v); });
        return out;
    }

    bool operator==(const VertexSet&) const = default;

    /// Canonical order: by size, then lexicographically on the sorted element lists.
    friend bool canonical_less(const VertexSet& a, const VertexSet& b) {
        auto sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        // Equal sizes: the set owning the smallest element of the symmetric
        // difference is the lexicographically smaller one.
        for (std::size_t i = 0; i < kWords; ++i) {
            auto diff = a.words_[i] ^ b.words_[i];
            if (diff != 0) return (a.words_[i] & (diff & (~diff + 1))) != 0;
        }
        return false;
    }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL;
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct CanonicalLess {
    bool operator()(const VertexSet& a, const VertexSet& b) const { return canonical_less(a, b); }
};

}  // namespace kglab

template <>
struct std::hash<kglab::VertexSet> {
    std::size_t operator()(const kglab::VertexSet& s) const { return s.hash(); }
};
