#include "kglab/hypergraph.hpp"

#include <algorithm>
#include <numeric>

#include "kglab/error.hpp"

namespace kglab {

Hypergraph::Hypergraph(std::size_t n, std::vector<VertexSet> edges, std::vector<int> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ > kMaxVertices)
        throw LabError(ErrorCode::CapExceeded,
                       "hypergraph with " + std::to_string(n_) + " vertices exceeds the cap of " +
                           std::to_string(kMaxVertices));
    const auto all = VertexSet::range(n_);
    for (const auto& e : edges_) {
        if (e.empty()) throw LabError(ErrorCode::InvalidArgument, "empty hyperedge");
        if (!e.subset_of(all)) throw LabError(ErrorCode::InvalidArgument, "hyperedge outside [n]");
    }
    std::sort(edges_.begin(), edges_.end(), CanonicalLess{});
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    if (labels_.empty()) {
        labels_.resize(n_);
        std::iota(labels_.begin(), labels_.end(), 1);
    } else if (labels_.size() != n_) {
        throw LabError(ErrorCode::InvalidArgument, "label count does not match vertex count");
    }

    incidence_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i)
        edges_[i].for_each([&](std::size_t v) { incidence_[v].push_back(i); });
}

Hypergraph Hypergraph::from_lists(std::size_t n, const std::vector<std::vector<int>>& edges) {
    std::vector<VertexSet> sets;
    sets.reserve(edges.size());
    for (const auto& list : edges) {
        VertexSet s;
        for (int v : list) {
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw LabError(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " outside [n]");
            s.insert(static_cast<std::size_t>(v - 1));
        }
        sets.push_back(s);
    }
    return Hypergraph(n, std::move(sets));
}

std::vector<std::vector<int>> Hypergraph::edge_lists() const {
    std::vector<std::vector<int>> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) {
        std::vector<int> list;
        e.for_each([&](std::size_t v) { list.push_back(static_cast<int>(v) + 1); });
        out.push_back(std::move(list));
    }
    return out;
}

bool Hypergraph::has_edge(const VertexSet& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e, CanonicalLess{});
}

bool Hypergraph::has_singleton_edge() const {
    return !edges_.empty() && edges_.front().size() == 1;
}

bool Hypergraph::spans_edge(const VertexSet& s) const {
    const auto k = s.size();
    for (const auto& e : edges_) {
        if (e.size() > k) break;
        if (e.subset_of(s)) return true;
    }
    return false;
}

bool Hypergraph::closes_edge(std::size_t v, const VertexSet& cls) const {
    auto with_v = cls;
    with_v.insert(v);
    for (auto i : incidence_[v])
        if (edges_[i].subset_of(with_v)) return true;
    return false;
}

Coloring::Coloring(std::vector<int> colors, int color_count)
    : colors_(std::move(colors)), color_count_(color_count) {
    for (int c : colors_)
        if (c < 1 || c > color_count_)
            throw LabError(ErrorCode::InvalidArgument,
                           "colour " + std::to_string(c) + " outside [1," + std::to_string(color_count_) + "]");
}

std::string ChromaticValue::to_string() const {
    switch (kind_) {
        case Kind::Finite: return std::to_string(value_);
        case Kind::Infinite: return "INFINITE";
        case Kind::Exceeds: return "EXCEEDS(" + std::to_string(value_) + ")";
    }
    return "?";
}

namespace {

// Relabels the vertices of `keep` to 0..|keep|-1 preserving order and keeps
// the edges accepted by `accept`.
template <class Accept>
Hypergraph restrict_to(const Hypergraph& h, const VertexSet& keep, Accept accept) {
    std::vector<std::size_t> new_index(h.n(), kMaxVertices);
    std::vector<int> labels;
    std::size_t next = 0;
    keep.for_each([&](std::size_t v) {
        new_index[v] = next++;
        labels.push_back(h.labels()[v]);
    });
    std::vector<VertexSet> edges;
    for (const auto& e : h.edges()) {
        if (!e.subset_of(keep) || !accept(e)) continue;
        VertexSet mapped;
        e.for_each([&](std::size_t v) { mapped.insert(new_index[v]); });
        edges.push_back(mapped);
    }
    return Hypergraph(next, std::move(edges), std::move(labels));
}

}  // namespace

Hypergraph induced(const Hypergraph& h, const VertexSet& a) {
    if (!a.subset_of(VertexSet::range(h.n())))
        throw LabError(ErrorCode::InvalidArgument, "induced: vertex subset outside [n]");
    return restrict_to(h, a, [](const VertexSet&) { return true; });
}

Hypergraph section(const Hypergraph& f, std::span<const VertexSet> parts) {
    const auto all = VertexSet::range(f.n());
    VertexSet uni;
    for (const auto& u : parts) {
        if (!u.subset_of(all)) throw LabError(ErrorCode::InvalidArgument, "section: part outside [n]");
        if (u.intersects(uni)) throw LabError(ErrorCode::InvalidPartition, "section: parts overlap");
        uni |= u;
    }
    return restrict_to(f, uni, [&](const VertexSet& e) {
        return std::all_of(parts.begin(), parts.end(), [&](const VertexSet& u) { return (e & u).size() == 1; });
    });
}

bool is_proper(const Hypergraph& h, const Coloring& c) {
    if (c.size() != h.n())
        throw LabError(ErrorCode::NotTotal, "colouring covers " + std::to_string(c.size()) + " of " +
                                                std::to_string(h.n()) + " vertices");
    for (const auto& e : h.edges()) {
        const int first = c[e.first()];
        bool mono = true;
        e.for_each([&](std::size_t v) { mono = mono && c[v] == first; });
        if (mono) return false;
    }
    return true;
}

bool is_colorful_balanced_complete(const Hypergraph& f, std::span<const VertexSet> parts,
                                   const Coloring& c) {
    if (c.size() != f.n()) throw LabError(ErrorCode::NotTotal, "colouring is not total");
    const auto all = VertexSet::range(f.n());
    VertexSet uni;
    for (const auto& u : parts) {
        if (u.empty()) throw LabError(ErrorCode::InvalidArgument, "empty part");
        if (!u.subset_of(all)) throw LabError(ErrorCode::InvalidArgument, "part outside [n]");
        if (u.intersects(uni)) throw LabError(ErrorCode::InvalidPartition, "parts overlap");
        uni |= u;
    }
    if (parts.empty()) return true;

    std::size_t lo = kMaxVertices, hi = 0;
    for (const auto& u : parts) {
        lo = std::min(lo, u.size());
        hi = std::max(hi, u.size());
    }
    if (hi - lo > 1) return false;

    for (const auto& u : parts) {
        std::vector<int> seen;
        u.for_each([&](std::size_t v) { seen.push_back(c[v]); });
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }

    // Completeness: every transversal is an edge of f.
    std::vector<std::vector<std::size_t>> lists;
    for (const auto& u : parts) lists.push_back(u.elements());
    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
        VertexSet t;
        for (std::size_t i = 0; i < parts.size(); ++i) t.insert(lists[i][pick[i]]);
        if (!f.has_edge(t)) return false;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == lists[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return true;
}

}  // namespace kglab
