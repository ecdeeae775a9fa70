#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kglab/hypergraph.hpp"
#include "kglab/io.hpp"

namespace kglab {

/// Constraint oracle for the exact colouring search: answers "would adding
/// v to this colour class create a monochromatic edge?".
class ColoringModel {
public:
    virtual ~ColoringModel() = default;
    virtual std::size_t vertex_count() const = 0;
    virtual bool has_singleton_edge() const = 0;
    /// True iff some edge through v lies inside cls + {v}.
    virtual bool closes_edge(std::size_t v, const VertexSet& cls) const = 0;
    /// Vertices sharing at least one edge with v (v excluded).
    virtual const VertexSet& neighbours(std::size_t v) const = 0;
};

/// Explicit edge list.
class HypergraphModel final : public ColoringModel {
public:
    explicit HypergraphModel(const Hypergraph& h);
    std::size_t vertex_count() const override { return h_.n(); }
    bool has_singleton_edge() const override { return h_.has_singleton_edge(); }
    bool closes_edge(std::size_t v, const VertexSet& cls) const override { return h_.closes_edge(v, cls); }
    const VertexSet& neighbours(std::size_t v) const override { return neighbours_[v]; }

private:
    const Hypergraph& h_;
    std::vector<VertexSet> neighbours_;
};

/// Categorical product over the row-major tuple space; edges are never
/// materialised, violations are detected box by box.
class ProductModel final : public ColoringModel {
public:
    explicit ProductModel(std::span<const Hypergraph> factors);
    std::size_t vertex_count() const override { return size_; }
    bool has_singleton_edge() const override;
    bool closes_edge(std::size_t v, const VertexSet& cls) const override;
    const VertexSet& neighbours(std::size_t v) const override { return neighbours_[v]; }

private:
    template <class F>
    void for_each_box(std::size_t v, F&& f) const;

    std::vector<Hypergraph> factors_;
    std::vector<std::vector<std::vector<std::size_t>>> edge_elems_;
    std::vector<std::size_t> dims_, strides_;
    std::size_t size_ = 1;
    std::vector<VertexSet> neighbours_;
};

struct ChromaticResult {
    ChromaticValue value = ChromaticValue::finite(1);
    /// An optimal colouring when the value is finite (colours numbered by
    /// first appearance).
    std::optional<Coloring> coloring;
};

/// Proper k-colouring by backtracking with forward checking, or nullopt.
std::optional<Coloring> find_k_coloring(const ColoringModel& model, int k);

/// Iterative deepening k = 1, 2, ...; EXCEEDS(limit) once k passes limit.
ChromaticResult solve_chromatic(const ColoringModel& model, std::optional<int> limit = {});

ChromaticResult chromatic_number(const Hypergraph& h, std::optional<int> limit = {});

/// chi of factors[0] x ... x factors[t-1] via the implicit product model.
ChromaticResult product_chromatic(std::span<const Hypergraph> factors, std::optional<int> limit = {});

/// ceil((n - (k-1)r) / (r-1)), valid for n >= rk.
int formula_kneser(int n, int k, int r);

/// ceil((n - max(a, k-1)) / (r-1)) for a <= 2k-1 or a >= rk-1.
int formula_hnka(int n, int k, int a, int r);

struct FormulaCheck {
    int formula = 0;
    std::optional<ChromaticValue> exact;
    bool discrepancy = false;
};

/// formula_hnka next to the exact chromatic number of KG^r(H(n,k,a)); the
/// exact value is attempted only when the Kneser hypergraph fits.
FormulaCheck check_formula_hnka(int n, int k, int a, int r, std::optional<int> limit = {});

enum class ZhuStatus { Verified, BoundOnly, Failed };
std::string to_string(ZhuStatus s);

struct FactorBounds {
    int n = 0;
    int cd = 0;
    int ecd = 0;
    int n_minus_alt = 0;
    /// false when alt came from the heuristic (n - alt is then a weaker lower bound)
    bool alt_exact = true;
    std::optional<ChromaticValue> kneser_chi;
};

struct BoundReport {
    int r = 2;
    std::vector<FactorBounds> factors;
    // single-factor bounds
    std::optional<int> cd_bound;
    std::optional<int> alt_bound;
    std::optional<int> ecd_bound;
    // product bounds
    int product_alt_bound = 0;  // ceil(min (n_i - alt_i) / (r-1))
    int product_ecd_bound = 0;  // ceil(min ecd_i / (r-1))
    std::optional<ChromaticValue> exact;
    std::optional<int> min_factor_chi;
    ZhuStatus zhu = ZhuStatus::BoundOnly;
    std::string zhu_basis;  // "exact", "bound", or empty
};

BoundReport bound_report(std::span<const Hypergraph> factors, int r, bool compute_exact,
                         std::optional<int> limit = {});

Json to_json(const BoundReport& report);
std::string format_table(const BoundReport& report);

inline int ceil_div(int a, int b) { return a <= 0 ? -((-a) / b) : (a + b - 1) / b; }

}  // namespace kglab
