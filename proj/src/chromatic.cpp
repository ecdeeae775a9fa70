#include "kglab/chromatic.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "kglab/constructions.hpp"
#include "kglab/error.hpp"
#include "kglab/invariants.hpp"

namespace kglab {

HypergraphModel::HypergraphModel(const Hypergraph& h) : h_(h), neighbours_(h.n()) {
    for (std::size_t v = 0; v < h.n(); ++v) {
        for (auto i : h.incident(v)) neighbours_[v] |= h.edge(i);
        neighbours_[v].erase(v);
    }
}

ProductModel::ProductModel(std::span<const Hypergraph> factors)
    : factors_(factors.begin(), factors.end()) {
    if (factors_.empty()) throw LabError(ErrorCode::InvalidArgument, "product of zero factors");
    const auto t = factors_.size();
    edge_elems_.resize(t);
    dims_.resize(t);
    strides_.resize(t);
    for (std::size_t j = t; j-- > 0;) {
        dims_[j] = factors_[j].n();
        strides_[j] = size_;
        size_ *= dims_[j];
        for (const auto& e : factors_[j].edges()) {
            if (e.size() > 64) throw LabError(ErrorCode::CapExceeded, "factor edge larger than 64 vertices");
            edge_elems_[j].push_back(e.elements());
        }
    }
    if (size_ > kMaxVertices)
        throw LabError(ErrorCode::CapExceeded, "tuple space of " + std::to_string(size_) + " vertices exceeds the cap");
    neighbours_.resize(size_);
    std::vector<std::size_t> tuple(t);
    for (std::size_t v = 0; v < size_; ++v) {
        for_each_box(v, [&](const std::vector<std::size_t>& box) {
            std::vector<std::size_t> local(t, 0);
            while (true) {
                std::size_t idx = 0;
                for (std::size_t j = 0; j < t; ++j) idx += edge_elems_[j][box[j]][local[j]] * strides_[j];
                neighbours_[v].insert(idx);
                std::size_t j = t;
                while (j > 0 && ++local[j - 1] == edge_elems_[j - 1][box[j - 1]].size()) local[--j] = 0;
                if (j == 0) break;
            }
            return false;
        });
        neighbours_[v].erase(v);
    }
}

bool ProductModel::has_singleton_edge() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Hypergraph& f) { return f.has_singleton_edge(); });
}

// Calls f(box) for every e_1 x ... x e_t containing tuple v; f returns true to stop.
template <class F>
void ProductModel::for_each_box(std::size_t v, F&& f) const {
    const auto t = factors_.size();
    std::vector<const std::vector<std::size_t>*> inc(t);
    for (std::size_t j = 0; j < t; ++j) {
        const auto coord = (v / strides_[j]) % dims_[j];
        inc[j] = &factors_[j].incident(coord);
        if (inc[j]->empty()) return;
    }
    std::vector<std::size_t> pick(t, 0), box(t);
    while (true) {
        for (std::size_t j = 0; j < t; ++j) box[j] = (*inc[j])[pick[j]];
        if (f(box)) return;
        std::size_t j = t;
        while (j > 0 && ++pick[j - 1] == inc[j - 1]->size()) pick[--j] = 0;
        if (j == 0) return;
    }
}

bool ProductModel::closes_edge(std::size_t v, const VertexSet& cls) const {
    const auto t = factors_.size();
    auto with_v = cls;
    with_v.insert(v);
    bool closes = false;
    std::vector<std::size_t> local(t);
    std::vector<std::uint64_t> covered(t);
    for_each_box(v, [&](const std::vector<std::size_t>& box) {
        std::fill(local.begin(), local.end(), 0);
        std::fill(covered.begin(), covered.end(), 0);
        while (true) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < t; ++j) idx += edge_elems_[j][box[j]][local[j]] * strides_[j];
            if (with_v.contains(idx))
                for (std::size_t j = 0; j < t; ++j) covered[j] |= std::uint64_t{1} << local[j];
            std::size_t j = t;
            while (j > 0 && ++local[j - 1] == edge_elems_[j - 1][box[j - 1]].size()) local[--j] = 0;
            if (j == 0) break;
        }
        closes = true;
        for (std::size_t j = 0; j < t && closes; ++j) {
            const auto sz = edge_elems_[j][box[j]].size();
            closes = covered[j] == (sz == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sz) - 1);
        }
        return closes;
    });
    return closes;
}

namespace {

// k-colourability by backtracking. Each uncoloured vertex keeps a domain of
// colours that would not close an edge; the vertex with the smallest
// effective domain is coloured next. A colour c+1 is only opened after
// colour c is in use.
class KColorSearch {
public:
    KColorSearch(const ColoringModel& model, int k)
        : model_(model), n_(model.vertex_count()), k_(k), color_(n_, 0), classes_(static_cast<std::size_t>(k)),
          domain_(n_, k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1), degree_(n_) {
        for (std::size_t v = 0; v < n_; ++v) degree_[v] = model.neighbours(v).size();
    }

    std::optional<Coloring> run() {
        if (!dfs(0, 0)) return std::nullopt;
        // renumber colours by first appearance
        std::vector<int> map(static_cast<std::size_t>(k_) + 1, 0);
        int next = 0;
        std::vector<int> colors(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            auto& m = map[static_cast<std::size_t>(color_[v])];
            if (m == 0) m = ++next;
            colors[v] = m;
        }
        return Coloring(std::move(colors), std::max(next, 1));
    }

private:
    bool dfs(std::size_t colored, int used) {
        if (colored == n_) return true;
        const int open = std::min(used + 1, k_);
        const std::uint64_t open_mask = open >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << open) - 1;

        std::size_t pick = n_;
        int best_size = 65;
        for (std::size_t v = 0; v < n_; ++v) {
            if (color_[v] != 0) continue;
            const int sz = std::popcount(domain_[v] & open_mask);
            if (sz < best_size || (sz == best_size && pick != n_ && degree_[v] > degree_[pick])) {
                best_size = sz;
                pick = v;
            }
        }
        auto choices = domain_[pick] & open_mask;
        if (choices == 0) return false;

        while (choices != 0) {
            const int c = std::countr_zero(choices);
            choices &= choices - 1;
            const auto bit = std::uint64_t{1} << c;
            auto& cls = classes_[static_cast<std::size_t>(c)];

            color_[pick] = c + 1;
            const auto mark = trail_.size();
            bool ok = true;
            model_.neighbours(pick).for_each([&](std::size_t w) {
                if (!ok || color_[w] != 0 || (domain_[w] & bit) == 0) return;
                if (model_.closes_edge(w, cls | single(pick))) {
                    domain_[w] &= ~bit;
                    trail_.push_back({w, bit});
                    if (domain_[w] == 0) ok = false;
                }
            });
            cls.insert(pick);
            if (ok && dfs(colored + 1, std::max(used, c + 1))) return true;
            cls.erase(pick);
            while (trail_.size() > mark) {
                domain_[trail_.back().first] |= trail_.back().second;
                trail_.pop_back();
            }
            color_[pick] = 0;
        }
        return false;
    }

    static VertexSet single(std::size_t v) {
        VertexSet s;
        s.insert(v);
        return s;
    }

    const ColoringModel& model_;
    std::size_t n_;
    int k_;
    std::vector<int> color_;
    std::vector<VertexSet> classes_;
    std::vector<std::uint64_t> domain_;
    std::vector<std::size_t> degree_;
    std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
};

}  // namespace

std::optional<Coloring> find_k_coloring(const ColoringModel& model, int k) {
    if (k < 1) return std::nullopt;
    if (k > 64) throw LabError(ErrorCode::CapExceeded, "colour count above 64");
    if (model.vertex_count() > 0 && model.has_singleton_edge()) return std::nullopt;
    return KColorSearch(model, k).run();
}

ChromaticResult solve_chromatic(const ColoringModel& model, std::optional<int> limit) {
    if (model.vertex_count() > 0 && model.has_singleton_edge()) return {ChromaticValue::infinite(), std::nullopt};
    const int top = static_cast<int>(std::max<std::size_t>(model.vertex_count(), 1));
    for (int k = 1; k <= top; ++k) {
        if (limit && k > *limit) return {ChromaticValue::exceeds(*limit), std::nullopt};
        if (auto c = find_k_coloring(model, k)) return {ChromaticValue::finite(k), std::move(c)};
    }
    // Unreachable without singleton edges: n colours always suffice.
    throw LabError(ErrorCode::PreconditionViolated, "no colouring with n colours");
}

ChromaticResult chromatic_number(const Hypergraph& h, std::optional<int> limit) {
    return solve_chromatic(HypergraphModel(h), limit);
}

ChromaticResult product_chromatic(std::span<const Hypergraph> factors, std::optional<int> limit) {
    if (factors.size() == 1) return chromatic_number(factors.front(), limit);
    for (const auto& f : factors)
        if (f.n() == 0) return {ChromaticValue::finite(1), Coloring({}, 1)};
    return solve_chromatic(ProductModel(factors), limit);
}

int formula_kneser(int n, int k, int r) {
    if (r < 2 || k < 1) throw LabError(ErrorCode::InvalidArgument, "formula_kneser needs r >= 2, k >= 1");
    if (n < r * k) throw LabError(ErrorCode::OutOfProvenRange, "formula_kneser needs n >= rk");
    return ceil_div(n - (k - 1) * r, r - 1);
}

int formula_hnka(int n, int k, int a, int r) {
    if (r < 2 || k < 1) throw LabError(ErrorCode::InvalidArgument, "formula_hnka needs r >= 2, k >= 1");
    if (n < r * k || a >= n || a < 0)
        throw LabError(ErrorCode::InvalidArgument, "formula_hnka needs n >= rk and n > a >= 0");
    if (!(a <= 2 * k - 1 || a >= r * k - 1))
        throw LabError(ErrorCode::OutOfProvenRange, "chromatic number of KG^r(n,k,a) is open for 2k <= a <= rk-2");
    return ceil_div(n - std::max(a, k - 1), r - 1);
}

FormulaCheck check_formula_hnka(int n, int k, int a, int r, std::optional<int> limit) {
    FormulaCheck out;
    out.formula = formula_hnka(n, k, a, r);
    const auto ground = hnka(n, k, a);
    if (ground.edge_count() <= kMaxVertices) {
        const auto chi = chromatic_number(kneser(ground, r), limit).value;
        out.exact = chi;
        out.discrepancy = chi.is_finite() ? chi.value() != out.formula
                                          : chi.kind() == ChromaticValue::Kind::Exceeds && chi.value() >= out.formula;
    }
    return out;
}

std::string to_string(ZhuStatus s) {
    switch (s) {
        case ZhuStatus::Verified: return "VERIFIED";
        case ZhuStatus::BoundOnly: return "BOUND_ONLY";
        case ZhuStatus::Failed: return "FAILED";
    }
    return "?";
}

BoundReport bound_report(std::span<const Hypergraph> factors, int r, bool compute_exact, std::optional<int> limit) {
    if (r < 2) throw LabError(ErrorCode::InvalidArgument, "bound_report needs r >= 2");
    if (factors.empty()) throw LabError(ErrorCode::InvalidArgument, "bound_report needs at least one factor");
    BoundReport rep;
    rep.r = r;
    std::vector<Hypergraph> kneser_factors;
    bool all_chi_known = true;
    int min_chi = 0;
    for (const auto& h : factors) {
        FactorBounds fb;
        fb.n = static_cast<int>(h.n());
        fb.cd = cd(h, r).value;
        fb.ecd = ecd(h, r).value;
        const bool exact_alt = h.n() <= kMaxExactAltVertices;
        fb.alt_exact = exact_alt;
        fb.n_minus_alt = fb.n - alt_min(h, r, exact_alt ? AltMode::Exact : AltMode::Heuristic).value;
        kneser_factors.push_back(kneser(h, r));
        if (compute_exact) {
            fb.kneser_chi = chromatic_number(kneser_factors.back(), limit).value;
            if (fb.kneser_chi->is_finite())
                min_chi = min_chi == 0 ? fb.kneser_chi->value() : std::min(min_chi, fb.kneser_chi->value());
            else
                all_chi_known = false;
        } else {
            all_chi_known = false;
        }
        rep.factors.push_back(fb);
    }

    int min_ecd = rep.factors.front().ecd, min_nalt = rep.factors.front().n_minus_alt;
    for (const auto& fb : rep.factors) {
        min_ecd = std::min(min_ecd, fb.ecd);
        min_nalt = std::min(min_nalt, fb.n_minus_alt);
    }
    rep.product_alt_bound = ceil_div(min_nalt, r - 1);
    rep.product_ecd_bound = ceil_div(min_ecd, r - 1);
    if (factors.size() == 1) {
        rep.cd_bound = ceil_div(rep.factors.front().cd, r - 1);
        rep.alt_bound = rep.product_alt_bound;
        rep.ecd_bound = rep.product_ecd_bound;
    }
    if (all_chi_known) rep.min_factor_chi = min_chi;

    if (compute_exact) {
        bool fits = true;
        std::size_t tuples = 1;
        for (const auto& k : kneser_factors) tuples *= std::max<std::size_t>(k.n(), 1);
        if (tuples > kMaxVertices) fits = false;
        if (fits) rep.exact = product_chromatic(kneser_factors, limit).value;
    }

    if (rep.exact && rep.exact->is_finite() && rep.min_factor_chi) {
        rep.zhu = rep.exact->value() == *rep.min_factor_chi ? ZhuStatus::Verified : ZhuStatus::Failed;
        rep.zhu_basis = "exact";
    } else if (rep.min_factor_chi && std::max(rep.product_alt_bound, rep.product_ecd_bound) >= *rep.min_factor_chi) {
        // a lower bound reaching min chi(KG^r(H_i)) pins the product
        rep.zhu = ZhuStatus::Verified;
        rep.zhu_basis = "bound";
    }
    return rep;
}

namespace {

Json chi_json(const std::optional<ChromaticValue>& v) {
    if (!v) return nullptr;
    if (v->is_finite()) return v->value();
    return v->to_string();
}

Json opt_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const BoundReport& rep) {
    Json j;
    j["r"] = rep.r;
    Json fs = Json::array();
    for (const auto& f : rep.factors) {
        Json fj;
        fj["n"] = f.n;
        fj["cd"] = f.cd;
        fj["ecd"] = f.ecd;
        fj["n_minus_alt"] = f.n_minus_alt;
        fj["alt_exact"] = f.alt_exact;
        fj["kneser_chi"] = chi_json(f.kneser_chi);
        fs.push_back(fj);
    }
    j["factors"] = fs;
    j["cd_bound"] = opt_json(rep.cd_bound);
    j["alt_bound"] = opt_json(rep.alt_bound);
    j["ecd_bound"] = opt_json(rep.ecd_bound);
    j["product_alt_bound"] = rep.product_alt_bound;
    j["product_ecd_bound"] = rep.product_ecd_bound;
    j["exact_chi"] = chi_json(rep.exact);
    j["min_factor_chi"] = opt_json(rep.min_factor_chi);
    j["zhu_status"] = to_string(rep.zhu);
    j["zhu_basis"] = rep.zhu_basis;
    return j;
}

std::string format_table(const BoundReport& rep) {
    std::ostringstream os;
    os << "r = " << rep.r << "\n";
    os << std::left << std::setw(8) << "factor" << std::right << std::setw(5) << "n" << std::setw(5) << "cd"
       << std::setw(6) << "ecd" << std::setw(8) << "n-alt" << std::setw(14) << "chi(KG^r)" << "\n";
    for (std::size_t i = 0; i < rep.factors.size(); ++i) {
        const auto& f = rep.factors[i];
        os << std::left << std::setw(8) << ("H" + std::to_string(i + 1)) << std::right << std::setw(5) << f.n
           << std::setw(5) << f.cd << std::setw(6) << f.ecd << std::setw(8)
           << (std::to_string(f.n_minus_alt) + (f.alt_exact ? "" : "*")) << std::setw(14)
           << (f.kneser_chi ? f.kneser_chi->to_string() : "-") << "\n";
    }
    auto line = [&](const std::string& name, const std::string& value) {
        os << std::left << std::setw(26) << name << value << "\n";
    };
    if (rep.cd_bound) line("ceil(cd/(r-1))", std::to_string(*rep.cd_bound));
    if (rep.alt_bound) line("ceil((n-alt)/(r-1))", std::to_string(*rep.alt_bound));
    if (rep.ecd_bound) line("ceil(ecd/(r-1))", std::to_string(*rep.ecd_bound));
    line("product bound (n-alt)", std::to_string(rep.product_alt_bound));
    line("product bound (ecd)", std::to_string(rep.product_ecd_bound));
    line("exact chi(product)", rep.exact ? rep.exact->to_string() : "-");
    line("min chi(KG^r(H_i))", rep.min_factor_chi ? std::to_string(*rep.min_factor_chi) : "-");
    line("zhu", to_string(rep.zhu) + (rep.zhu_basis.empty() ? "" : " (" + rep.zhu_basis + ")"));
    return os.str();
}

}  // namespace kglab
