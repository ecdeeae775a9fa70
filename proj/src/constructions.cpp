#include "kglab/constructions.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "kglab/error.hpp"
#include "kglab/invariants.hpp"

namespace kglab {

Hypergraph complete_uniform(int n, int k) {
    if (n < 0 || k < 1) throw LabError(ErrorCode::InvalidArgument, "complete_uniform needs 1 <= k <= n");
    if (k > n) throw LabError(ErrorCode::InvalidArgument, "complete_uniform: k > n");
    std::vector<VertexSet> edges;
    std::vector<std::size_t> pick(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    const auto nn = static_cast<std::size_t>(n);
    while (true) {
        VertexSet e;
        for (auto v : pick) e.insert(v);
        edges.push_back(e);
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == nn - pick.size() + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
    return Hypergraph(nn, std::move(edges));
}

Hypergraph hnka(int n, int k, int a) {
    if (a < 0 || a >= n) throw LabError(ErrorCode::InvalidArgument, "hnka needs n > a >= 0");
    auto full = complete_uniform(n, k);
    const auto prefix = VertexSet::range(static_cast<std::size_t>(a));
    std::vector<VertexSet> edges;
    for (const auto& e : full.edges())
        if (!e.subset_of(prefix)) edges.push_back(e);
    return Hypergraph(full.n(), std::move(edges));
}

Hypergraph kneser(const Hypergraph& h, int r) {
    if (r < 2) throw LabError(ErrorCode::InvalidArgument, "kneser needs r >= 2");
    if (h.edge_count() > kMaxVertices)
        throw LabError(ErrorCode::CapExceeded, "KG^r(H) would have " + std::to_string(h.edge_count()) + " vertices");
    const auto m = h.edge_count();
    const auto rr = static_cast<std::size_t>(r);
    std::vector<VertexSet> edges;
    std::vector<std::size_t> stack;
    // Depth-first over increasing edge indices, keeping the chosen edges disjoint.
    auto extend = [&](auto&& self, std::size_t from, const VertexSet& used) -> void {
        if (stack.size() == rr) {
            VertexSet e;
            for (auto i : stack) e.insert(i);
            edges.push_back(e);
            return;
        }
        for (std::size_t i = from; i + (rr - stack.size()) <= m; ++i) {
            if (h.edge(i).intersects(used)) continue;
            stack.push_back(i);
            self(self, i + 1, used | h.edge(i));
            stack.pop_back();
        }
    };
    extend(extend, 0, VertexSet{});
    return Hypergraph(m, std::move(edges));
}

ProductSpace::ProductSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw LabError(ErrorCode::InvalidArgument, "product of zero factors");
    strides_.assign(dims_.size(), 1);
    for (std::size_t j = dims_.size(); j-- > 0;) {
        strides_[j] = size_;
        size_ *= dims_[j];
    }
}

std::size_t ProductSpace::encode(std::span<const std::size_t> tuple) const {
    std::size_t index = 0;
    for (std::size_t j = 0; j < dims_.size(); ++j) index += tuple[j] * strides_[j];
    return index;
}

std::vector<std::size_t> ProductSpace::decode(std::size_t index) const {
    std::vector<std::size_t> tuple(dims_.size());
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        tuple[j] = index / strides_[j];
        index %= strides_[j];
    }
    return tuple;
}

ProductSpace product_space(std::span<const Hypergraph> factors) {
    std::vector<std::size_t> dims;
    for (const auto& f : factors) dims.push_back(f.n());
    return ProductSpace(std::move(dims));
}

std::vector<std::vector<std::size_t>> minimal_box_covers(std::span<const std::size_t> dims) {
    const ProductSpace box(std::vector<std::size_t>(dims.begin(), dims.end()));
    const auto t = dims.size();
    const auto cells = box.size();
    std::vector<std::vector<std::size_t>> coords(cells);
    for (std::size_t c = 0; c < cells; ++c) coords[c] = box.decode(c);

    std::vector<std::vector<int>> count(t);
    for (std::size_t j = 0; j < t; ++j) count[j].assign(dims[j], 0);
    std::size_t missing = 0;
    for (auto d : dims) missing += d;

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> chosen;

    // A cell is removable iff every one of its coordinates is shared with
    // another chosen cell. Counts only grow along a branch, so once a chosen
    // cell is removable the branch is dead.
    auto has_private = [&](std::size_t c) {
        for (std::size_t j = 0; j < t; ++j)
            if (count[j][coords[c][j]] == 1) return true;
        return false;
    };
    auto dfs = [&](auto&& self, std::size_t from) -> void {
        if (missing == 0) {
            out.push_back(chosen);
            return;
        }
        for (std::size_t c = from; c < cells; ++c) {
            bool adds = false;
            for (std::size_t j = 0; j < t; ++j) {
                if (count[j][coords[c][j]]++ == 0) {
                    --missing;
                    adds = true;
                }
            }
            chosen.push_back(c);
            const bool ok = adds && std::all_of(chosen.begin(), chosen.end(), has_private);
            if (ok) self(self, c + 1);
            chosen.pop_back();
            for (std::size_t j = 0; j < t; ++j)
                if (--count[j][coords[c][j]] == 0) ++missing;
        }
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<std::pair<int, int>>> minimal_covers(int r1, int r2) {
    if (r1 < 1 || r2 < 1) throw LabError(ErrorCode::InvalidArgument, "minimal_covers needs r1, r2 >= 1");
    const std::size_t dims[] = {static_cast<std::size_t>(r1), static_cast<std::size_t>(r2)};
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const auto& cover : minimal_box_covers(dims)) {
        std::vector<std::pair<int, int>> cells;
        for (auto c : cover)
            cells.emplace_back(static_cast<int>(c) / r2 + 1, static_cast<int>(c) % r2 + 1);
        out.push_back(std::move(cells));
    }
    return out;
}

Hypergraph product_minimal(std::span<const Hypergraph> factors) {
    if (factors.empty()) throw LabError(ErrorCode::InvalidArgument, "product of zero factors");
    if (factors.size() == 1) return factors.front();
    const auto space = product_space(factors);
    if (space.size() > kMaxVertices)
        throw LabError(ErrorCode::CapExceeded,
                       "product has " + std::to_string(space.size()) +
                           " tuple vertices; use the implicit checker (product_is_proper / product_chromatic)");
    const auto t = factors.size();

    std::vector<std::vector<std::vector<std::size_t>>> edge_elems(t);
    bool uniform = true;
    for (std::size_t j = 0; j < t; ++j) {
        for (const auto& e : factors[j].edges()) edge_elems[j].push_back(e.elements());
        const auto& es = factors[j].edges();
        if (!es.empty() && es.front().size() != es.back().size()) uniform = false;
    }

    std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> cover_cache;
    std::vector<VertexSet> edges;
    std::vector<std::size_t> pick(t, 0);
    for (std::size_t j = 0; j < t; ++j)
        if (factors[j].edge_count() == 0) return Hypergraph(space.size(), {});

    std::vector<std::size_t> tuple(t);
    while (true) {
        std::vector<std::size_t> dims(t);
        for (std::size_t j = 0; j < t; ++j) dims[j] = edge_elems[j][pick[j]].size();
        auto it = cover_cache.find(dims);
        if (it == cover_cache.end()) it = cover_cache.emplace(dims, minimal_box_covers(dims)).first;
        const ProductSpace box(dims);
        for (const auto& cover : it->second) {
            VertexSet s;
            for (auto cell : cover) {
                auto local = box.decode(cell);
                for (std::size_t j = 0; j < t; ++j) tuple[j] = edge_elems[j][pick[j]][local[j]];
                s.insert(space.encode(tuple));
            }
            edges.push_back(s);
        }
        std::size_t j = t;
        while (j > 0 && ++pick[j - 1] == factors[j - 1].edge_count()) pick[--j] = 0;
        if (j == 0) break;
    }

    if (!uniform) {
        // Covers from different boxes can nest when edge sizes differ.
        std::sort(edges.begin(), edges.end(), CanonicalLess{});
        std::vector<VertexSet> kept;
        for (const auto& e : edges) {
            bool minimal = std::none_of(kept.begin(), kept.end(), [&](const VertexSet& k) {
                return k.size() < e.size() && k.subset_of(e);
            });
            if (minimal) kept.push_back(e);
        }
        edges = std::move(kept);
    }
    return Hypergraph(space.size(), std::move(edges));
}

bool product_is_proper(std::span<const Hypergraph> factors, const Coloring& c) {
    if (factors.empty()) throw LabError(ErrorCode::InvalidArgument, "product of zero factors");
    const auto space = product_space(factors);
    if (c.size() != space.size()) throw LabError(ErrorCode::NotTotal, "colouring does not cover the tuple space");
    const auto t = factors.size();
    for (const auto& f : factors) {
        if (f.edge_count() == 0) return true;
        for (const auto& e : f.edges())
            if (e.size() > 64) throw LabError(ErrorCode::CapExceeded, "factor edge larger than 64 vertices");
    }

    std::vector<std::vector<std::vector<std::size_t>>> edge_elems(t);
    for (std::size_t j = 0; j < t; ++j)
        for (const auto& e : factors[j].edges()) edge_elems[j].push_back(e.elements());

    const auto colors = static_cast<std::size_t>(c.color_count());
    // covered[colour][j]: bitmask of the positions of e_j reached by that colour
    std::vector<std::uint64_t> covered(colors * t);
    std::vector<std::size_t> pick(t, 0), local(t), tuple(t);
    while (true) {
        std::fill(covered.begin(), covered.end(), 0);
        std::fill(local.begin(), local.end(), 0);
        while (true) {
            for (std::size_t j = 0; j < t; ++j) tuple[j] = edge_elems[j][pick[j]][local[j]];
            const auto col = static_cast<std::size_t>(c[space.encode(tuple)] - 1);
            for (std::size_t j = 0; j < t; ++j) covered[col * t + j] |= std::uint64_t{1} << local[j];
            std::size_t j = t;
            while (j > 0 && ++local[j - 1] == edge_elems[j - 1][pick[j - 1]].size()) local[--j] = 0;
            if (j == 0) break;
        }
        for (std::size_t col = 0; col < colors; ++col) {
            bool full = true;
            for (std::size_t j = 0; j < t && full; ++j) {
                const auto sz = edge_elems[j][pick[j]].size();
                const auto want = sz == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sz) - 1;
                full = covered[col * t + j] == want;
            }
            if (full) return false;
        }
        std::size_t j = t;
        while (j > 0 && ++pick[j - 1] == factors[j - 1].edge_count()) pick[--j] = 0;
        if (j == 0) break;
    }
    return true;
}

Hypergraph t_hypergraph(const Hypergraph& h, int color_count, int s) {
    if (s < 2) throw LabError(ErrorCode::InvalidArgument, "t_hypergraph needs s >= 2");
    if (color_count < 0) throw LabError(ErrorCode::InvalidArgument, "t_hypergraph needs C >= 0");
    if (h.n() > kMaxTHypergraphVertices)
        throw LabError(ErrorCode::Infeasible, "t_hypergraph enumerates 2^n subsets; n = " + std::to_string(h.n()) +
                                                  " exceeds " + std::to_string(kMaxTHypergraphVertices));
    const long threshold = static_cast<long>(s - 1) * color_count;
    std::unordered_map<Hypergraph, int> memo;
    std::vector<VertexSet> edges;
    const std::size_t n = h.n();
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        VertexSet a;
        for (std::size_t v = 0; v < n; ++v)
            if ((bits >> v) & 1U) a.insert(v);
        auto sub = induced(h, a);
        auto it = memo.find(sub);
        if (it == memo.end()) it = memo.emplace(sub, ecd(sub, s).value).first;
        if (it->second > threshold) edges.push_back(a);
    }
    return Hypergraph(n, std::move(edges), h.labels());
}

}  // namespace kglab
