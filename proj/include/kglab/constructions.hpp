#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kglab/hypergraph.hpp"

namespace kglab {

/// ([n], all k-subsets).
Hypergraph complete_uniform(int n, int k);

/// H(n,k,a): the k-subsets of [n] not contained in [a].
Hypergraph hnka(int n, int k, int a);

/// General Kneser hypergraph KG^r(H). Vertex i is the i-th edge of h in
/// canonical order; hyperedges are the r-sets of pairwise disjoint edges.
Hypergraph kneser(const Hypergraph& h, int r);

/// Row-major tuple space V_1 x ... x V_t with the bijection
/// (v_1,...,v_t) <-> ((v_1*n_2 + v_2)*n_3 + ...), all 0-based.
class ProductSpace {
public:
    explicit ProductSpace(std::vector<std::size_t> dims);

    std::size_t factor_count() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return size_; }

    std::size_t encode(std::span<const std::size_t> tuple) const;
    std::vector<std::size_t> decode(std::size_t index) const;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 1;
};

ProductSpace product_space(std::span<const Hypergraph> factors);

/// Inclusion-minimal subsets S of [r1]x[r2] with both projections full, as
/// 1-based (row, column) cells. Each cover is sorted row-major; covers are
/// ordered by size, then lexicographically.
std::vector<std::vector<std::pair<int, int>>> minimal_covers(int r1, int r2);

/// Same for a t-dimensional box; cells are 0-based row-major indices.
std::vector<std::vector<std::size_t>> minimal_box_covers(std::span<const std::size_t> dims);

/// Minimal hyperedges of the categorical product H_1 x ... x H_t on the
/// row-major tuple space; a single factor is returned unchanged.
Hypergraph product_minimal(std::span<const Hypergraph> factors);

/// Implicit properness test for the categorical product: c is improper iff
/// some colour class meets a box e_1 x ... x e_t in a set whose projections
/// cover every e_j. No product edge is materialised.
bool product_is_proper(std::span<const Hypergraph> factors, const Coloring& c);

/// T_{H,C,s}: vertices V(H), edges every nonempty A with
/// ecd^s(H[A]) > (s-1)C. Keeps non-minimal edges.
Hypergraph t_hypergraph(const Hypergraph& h, int color_count, int s);

/// Largest vertex count accepted by t_hypergraph (2^n subsets are scanned).
inline constexpr std::size_t kMaxTHypergraphVertices = 14;

}  // namespace kglab
