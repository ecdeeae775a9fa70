#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kglab/hypergraph.hpp"

namespace kglab {

/// Acts on a sign k in 1..m (standing for omega^k) by omega^shift.
inline int shift_sign(int sign, int shift, int modulus) {
    return ((sign - 1 + shift) % modulus + modulus) % modulus + 1;
}

/// X in (Z_m + {0})^n; entry k in 1..m stands for omega^k, 0 for zero.
class SignVector {
public:
    SignVector() = default;
    SignVector(int modulus, std::vector<int> entries);
    static SignVector zero(int modulus, std::size_t n) { return SignVector(modulus, std::vector<int>(n, 0)); }

    int modulus() const { return modulus_; }
    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    /// X^sign as a set of 0-based positions.
    VertexSet support(int sign) const;
    /// Positions of the nonzero entries.
    VertexSet support() const;
    std::size_t class_size(int sign) const;
    /// |X|
    std::size_t nonzero_count() const;
    /// h(X) = min over signs of |X^sign|
    int h() const;
    /// l(X) = m*h(X) + #{signs with |X^sign| > h(X)}
    int ell() const;

    /// omega^shift . X
    SignVector acted(int shift) const;
    /// X <= Y: Y agrees with X wherever X is nonzero.
    bool is_face_of(const SignVector& y) const;
    /// Zero outside the given positions.
    SignVector restricted(const VertexSet& positions) const;

    bool operator==(const SignVector&) const = default;
    auto operator<=>(const SignVector& o) const { return entries_ <=> o.entries_; }

private:
    int modulus_ = 2;
    std::vector<int> entries_;
};

/// l as a function of the class sizes alone.
int ell_of_sizes(const std::vector<std::size_t>& sizes);

/// Length of the longest alternating subsequence = number of maximal runs
/// of the nonzero entries.
int alt_of(const SignVector& x);

/// Bijection [n] -> V(H), 0-based: position i of a sign vector is vertex at(i).
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> image);
    static Permutation identity(std::size_t n);

    std::size_t size() const { return image_.size(); }
    std::size_t at(std::size_t i) const { return image_[i]; }
    const std::vector<std::size_t>& image() const { return image_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::size_t> image_;
};

struct DefectResult {
    int value = 0;
    /// Kept colour classes of one optimal certificate (0-based vertices).
    std::vector<VertexSet> classes;
};

/// cd^r(H) = n - max total size of r disjoint edge-free classes.
DefectResult cd(const Hypergraph& h, int r);
/// ecd^r(H): as cd with class sizes (empty classes included) differing by <= 1.
DefectResult ecd(const Hypergraph& h, int r);

struct AltResult {
    int value = 0;
    SignVector certificate;
};

/// alt^r_sigma(H): max alt(X) over X in (Z_r + {0})^n whose sign classes,
/// mapped through sigma, span no edge.
AltResult alt_sigma(const Hypergraph& h, int r, const Permutation& sigma);

/// True iff alt^r_sigma(H) >= threshold; stops at the first witness.
bool alt_sigma_at_least(const Hypergraph& h, int r, const Permutation& sigma, int threshold);

enum class AltMode { Exact, Heuristic };

struct AltMinResult {
    int value = 0;
    Permutation sigma = Permutation::identity(0);
    /// Heuristic results only bound alt^r from above.
    bool upper_bound = false;
};

inline constexpr std::size_t kMaxExactAltVertices = 9;

struct HeuristicOptions {
    std::uint64_t seed = 20170101;
    int restarts = 24;
};

/// alt^r(H) = min over sigma of alt^r_sigma(H). Exact mode enumerates all
/// n! orderings (n <= 9); heuristic mode runs random restarts with
/// adjacent-transposition descent and reports an upper bound.
AltMinResult alt_min(const Hypergraph& h, int r, AltMode mode, HeuristicOptions opts = {});

}  // namespace kglab
