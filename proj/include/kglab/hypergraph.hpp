#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kglab/vertex_set.hpp"

namespace kglab {

/// Finite hypergraph on vertices 0..n-1 (reported 1..n to users).
///
/// Edges are nonempty, distinct, and kept in canonical order (size, then
/// lexicographic), so two hypergraphs are equal iff they have the same
/// vertex count and edge list. Each vertex also carries an original label,
/// which survives relabelling by induced() and section(); labels do not take
/// part in equality.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<VertexSet> edges, std::vector<int> labels = {});

    /// Builds from 1-based vertex lists.
    static Hypergraph from_lists(std::size_t n, const std::vector<std::vector<int>>& edges);

    std::size_t n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<VertexSet>& edges() const { return edges_; }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }
    const std::vector<int>& labels() const { return labels_; }

    /// Indices of the edges containing vertex v.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_[v]; }

    /// 1-based sorted vertex lists, in canonical edge order.
    std::vector<std::vector<int>> edge_lists() const;

    bool has_edge(const VertexSet& e) const;
    bool has_singleton_edge() const;
    /// True iff some edge lies inside s.
    bool spans_edge(const VertexSet& s) const;
    /// True iff some edge through v lies inside cls + {v}.
    bool closes_edge(std::size_t v, const VertexSet& cls) const;

    bool operator==(const Hypergraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<VertexSet> edges_;
    std::vector<int> labels_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// Total vertex colouring with colours 1..color_count.
class Coloring {
public:
    Coloring() = default;
    Coloring(std::vector<int> colors, int color_count);

    std::size_t size() const { return colors_.size(); }
    int color_count() const { return color_count_; }
    int operator[](std::size_t v) const { return colors_[v]; }
    const std::vector<int>& colors() const { return colors_; }

    bool operator==(const Coloring&) const = default;

private:
    std::vector<int> colors_;
    int color_count_ = 0;
};

/// A chromatic number: finite (>= 1), INFINITE, or EXCEEDS(limit) when a
/// search was capped.
class ChromaticValue {
public:
    enum class Kind { Finite, Infinite, Exceeds };

    static ChromaticValue finite(int k) { return ChromaticValue(Kind::Finite, k); }
    static ChromaticValue infinite() { return ChromaticValue(Kind::Infinite, 0); }
    static ChromaticValue exceeds(int limit) { return ChromaticValue(Kind::Exceeds, limit); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    /// The finite value, or the limit for EXCEEDS.
    int value() const { return value_; }
    std::string to_string() const;

    bool operator==(const ChromaticValue&) const = default;

private:
    ChromaticValue(Kind kind, int value) : kind_(kind), value_(value) {}
    Kind kind_ = Kind::Finite;
    int value_ = 1;
};

/// Sub-hypergraph induced by a; vertices relabelled 0..|a|-1 in increasing
/// order, original labels carried over.
Hypergraph induced(const Hypergraph& h, const VertexSet& a);

/// F[U_1,...,U_r]: vertices the union of the parts (relabelled as in
/// induced), edges meeting every part in exactly one vertex.
Hypergraph section(const Hypergraph& f, std::span<const VertexSet> parts);

bool is_proper(const Hypergraph& h, const Coloring& c);

/// Complete r-partite on the given parts (every transversal is an edge of
/// f), balanced, and colourful with respect to c.
bool is_colorful_balanced_complete(const Hypergraph& f, std::span<const VertexSet> parts,
                                   const Coloring& c);

}  // namespace kglab

template <>
struct std::hash<kglab::Hypergraph> {
    std::size_t operator()(const kglab::Hypergraph& h) const {
        std::size_t acc = h.n() * 0x9e3779b97f4a7c15ULL;
        for (const auto& e : h.edges()) acc = (acc ^ e.hash()) * 0x100000001b3ULL;
        return acc;
    }
};
