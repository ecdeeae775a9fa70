#include "kglab/prooflab.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "kglab/error.hpp"

namespace kglab {

SignSet rotate_signs(SignSet s, int shift, int p) {
    SignSet out = 0;
    for (int k = 1; k <= p; ++k)
        if ((s >> (k - 1)) & 1U) out |= SignSet{1} << (shift_sign(k, shift, p) - 1);
    return out;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

ProofInstance::ProofInstance(std::vector<Hypergraph> factors, int p, Variant variant, bool allow_composite)
    : factors_(std::move(factors)), p_(p), variant_(variant) {
    if (factors_.empty()) throw LabError(ErrorCode::InvalidArgument, "need at least one factor");
    if (p_ < 2 || p_ > 31) throw LabError(ErrorCode::InvalidArgument, "modulus must be in 2..31");
    if (!is_prime(p_)) {
        if (!allow_composite)
            throw LabError(ErrorCode::NotPrime, std::to_string(p_) + " is not prime (use --force to experiment)");
        experimental_ = true;
    }
    std::vector<std::size_t> dims;
    for (const auto& h : factors_) {
        offsets_.push_back(n_);
        n_ += h.n();
        kneser_.push_back(kneser(h, p_));
        dims.push_back(h.edge_count());
        if (variant_ == Variant::Ecd) {
            defects_.push_back(ecd(h, p_).value);
            orders_.push_back(Permutation::identity(h.n()));
        } else {
            const auto mode = h.n() <= kMaxExactAltVertices ? AltMode::Exact : AltMode::Heuristic;
            auto alt = alt_min(h, p_, mode);
            defects_.push_back(static_cast<int>(h.n()) - alt.value);
            orders_.push_back(alt.sigma);
        }
    }
    if (n_ > kMaxVertices) throw LabError(ErrorCode::CapExceeded, "total vertex count exceeds the cap");
    eta_ = *std::min_element(defects_.begin(), defects_.end());
    product_ = ProductSpace(std::move(dims));
}

SplitVector::SplitVector(SignVector x, std::vector<SignVector> blocks, std::vector<SignSet> a)
    : x_(std::move(x)), blocks_(std::move(blocks)), a_(std::move(a)) {}

bool SplitVector::in_sigma1() const {
    if (x_.nonzero_count() == 0) return false;
    const auto full = full_sign_set(x_.modulus());
    return std::any_of(a_.begin(), a_.end(), [&](SignSet s) { return s != full; });
}

SplitVector split(const SignVector& x, std::span<const std::size_t> block_lengths,
                  std::span<const Hypergraph> hypergraphs) {
    if (block_lengths.size() != hypergraphs.size())
        throw LabError(ErrorCode::InvalidArgument, "one block length per hypergraph expected");
    std::size_t total = 0;
    for (std::size_t j = 0; j < block_lengths.size(); ++j) {
        if (block_lengths[j] != hypergraphs[j].n())
            throw LabError(ErrorCode::InvalidArgument, "block length differs from the factor's vertex count");
        total += block_lengths[j];
    }
    if (total != x.size())
        throw LabError(ErrorCode::InvalidArgument, "vector length " + std::to_string(x.size()) +
                                                       " differs from the block total " + std::to_string(total));
    const int p = x.modulus();
    std::vector<SignVector> blocks;
    std::vector<SignSet> a;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < block_lengths.size(); ++j) {
        const auto first = x.entries().begin() + static_cast<std::ptrdiff_t>(offset);
        SignVector block(p, std::vector<int>(first, first + static_cast<std::ptrdiff_t>(block_lengths[j])));
        SignSet aj = 0;
        for (int s = 1; s <= p; ++s)
            if (hypergraphs[j].spans_edge(block.support(s))) aj |= SignSet{1} << (s - 1);
        blocks.push_back(std::move(block));
        a.push_back(aj);
        offset += block_lengths[j];
    }
    return SplitVector(x, std::move(blocks), std::move(a));
}

SplitVector split(const ProofInstance& inst, const SignVector& x) {
    if (x.modulus() != inst.p()) throw LabError(ErrorCode::InvalidArgument, "sign modulus differs from p");
    std::vector<std::size_t> lengths;
    for (const auto& h : inst.factors()) lengths.push_back(h.n());
    return split(x, lengths, inst.factors());
}

BlockImage BlockImage::acted(int shift, int p) const {
    BlockImage out = *this;
    for (auto& e : out.entries)
        if (e != 0) e = shift_sign(e, shift, p);
    out.signs = rotate_signs(signs, shift, p);
    return out;
}

// ---- Simplex ---------------------------------------------------------------

Simplex::Simplex(int p, int color_count, std::vector<std::uint64_t> rows)
    : p_(p), color_count_(color_count), rows_(std::move(rows)) {
    if (p_ < 1 || rows_.size() != static_cast<std::size_t>(p_))
        throw LabError(ErrorCode::InvalidArgument, "simplex needs one row per sign");
    if (color_count_ < 0 || color_count_ > 64) throw LabError(ErrorCode::CapExceeded, "simplex supports <= 64 colours");
    const std::uint64_t allowed = color_count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << color_count_) - 1;
    for (auto r : rows_)
        if (r & ~allowed) throw LabError(ErrorCode::InvalidArgument, "colour outside 1..C");
}

Simplex Simplex::from_sizes(int p, const std::vector<std::size_t>& sizes) {
    if (sizes.size() != static_cast<std::size_t>(p)) throw LabError(ErrorCode::InvalidArgument, "one size per sign");
    // disjoint colour ranges, so the result is always a simplex
    std::vector<std::uint64_t> rows;
    int next = 0;
    for (auto s : sizes) {
        std::uint64_t row = 0;
        for (std::size_t i = 0; i < s; ++i) row |= std::uint64_t{1} << next++;
        rows.push_back(row);
    }
    return Simplex(p, next, std::move(rows));
}

std::size_t Simplex::row_size(int sign) const { return static_cast<std::size_t>(std::popcount(row(sign))); }

std::size_t Simplex::size() const {
    std::size_t total = 0;
    for (auto r : rows_) total += static_cast<std::size_t>(std::popcount(r));
    return total;
}

int Simplex::h() const {
    int best = std::numeric_limits<int>::max();
    for (auto r : rows_) best = std::min(best, std::popcount(r));
    return best;
}

int Simplex::ell() const {
    std::vector<std::size_t> sizes;
    for (auto r : rows_) sizes.push_back(static_cast<std::size_t>(std::popcount(r)));
    return ell_of_sizes(sizes);
}

Simplex Simplex::bar() const {
    const int hh = h();
    auto rows = rows_;
    for (auto& r : rows)
        if (std::popcount(r) != hh) r = 0;
    return Simplex(p_, color_count_, std::move(rows));
}

Simplex Simplex::acted(int shift) const {
    std::vector<std::uint64_t> rows(rows_.size(), 0);
    for (int k = 1; k <= p_; ++k) rows[static_cast<std::size_t>(shift_sign(k, shift, p_) - 1)] = row(k);
    return Simplex(p_, color_count_, std::move(rows));
}

bool Simplex::is_face_of(const Simplex& o) const {
    if (o.p_ != p_) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i] & ~o.rows_[i]) return false;
    return true;
}

bool Simplex::is_simplex() const {
    std::uint64_t common = ~std::uint64_t{0};
    for (auto r : rows_) common &= r;
    return common == 0;
}

// ---- sign map tables -------------------------------------------------------

int OrbitTable::lookup(const std::vector<Key>& orbit, int p) const {
    if (auto it = pointwise_.find(orbit.front()); it != pointwise_.end()) return it->second;
    std::size_t least = 0;
    for (std::size_t a = 1; a < orbit.size(); ++a) {
        if (orbit[a] == orbit[0])
            throw LabError(ErrorCode::PreconditionViolated, "the sign action is not free on this orbit");
        if (orbit[a] < orbit[least]) least = a;
    }
    int rep = 1;
    if (auto it = representative_.find(orbit[least]); it != representative_.end()) rep = it->second;
    // orbit[least] = omega^least . x, so s(x) = omega^-least . s(rep)
    return shift_sign(rep, -static_cast<int>(least), p);
}

void OrbitTable::choose(const std::vector<Key>& orbit, int p, int sign) {
    std::size_t least = 0;
    for (std::size_t a = 1; a < orbit.size(); ++a)
        if (orbit[a] < orbit[least]) least = a;
    representative_[orbit[least]] = shift_sign(sign, static_cast<int>(least), p);
}

namespace {

using Key = OrbitTable::Key;

Key key_of(const std::vector<BlockImage>& b) {
    Key k;
    for (const auto& img : b) {
        k.push_back(static_cast<int>(img.kind));
        if (img.kind == BlockImage::Kind::Signs) {
            k.push_back(static_cast<int>(img.signs));
        } else {
            k.push_back(static_cast<int>(img.entries.size()));
            k.insert(k.end(), img.entries.begin(), img.entries.end());
        }
    }
    return k;
}

Key key_of(const std::vector<SignSet>& a) { return Key(a.begin(), a.end()); }

Key key_of(const Simplex& s) {
    Key k;
    for (int e = 1; e <= s.p(); ++e) {
        k.push_back(static_cast<int>(s.row(e) >> 32));
        k.push_back(static_cast<int>(s.row(e) & 0xffffffffU));
    }
    return k;
}

std::vector<Key> orbit_of(const std::vector<BlockImage>& b, int p) {
    std::vector<Key> orbit;
    for (int a = 0; a < p; ++a) {
        std::vector<BlockImage> moved;
        for (const auto& img : b) moved.push_back(img.acted(a, p));
        orbit.push_back(key_of(moved));
    }
    return orbit;
}

std::vector<Key> orbit_of(const std::vector<SignSet>& sets, int p) {
    std::vector<Key> orbit;
    for (int a = 0; a < p; ++a) {
        std::vector<SignSet> moved;
        for (auto s : sets) moved.push_back(rotate_signs(s, a, p));
        orbit.push_back(key_of(moved));
    }
    return orbit;
}

std::vector<Key> orbit_of(const Simplex& s, int p) {
    std::vector<Key> orbit;
    for (int a = 0; a < p; ++a) orbit.push_back(key_of(s.acted(a)));
    return orbit;
}

void require_sign(int sign, int p) {
    if (sign < 1 || sign > p) throw LabError(ErrorCode::InvalidArgument, "sign outside 1..p");
}

}  // namespace

int SignMapTables::s1(const std::vector<BlockImage>& b) const { return s1_.lookup(orbit_of(b, p_), p_); }
int SignMapTables::s2(const std::vector<SignSet>& a) const { return s2_.lookup(orbit_of(a, p_), p_); }
int SignMapTables::s3(const Simplex& tau_bar) const { return s3_.lookup(orbit_of(tau_bar, p_), p_); }

void SignMapTables::choose_s1(const std::vector<BlockImage>& b, int sign) {
    require_sign(sign, p_);
    s1_.choose(orbit_of(b, p_), p_, sign);
}
void SignMapTables::choose_s2(const std::vector<SignSet>& a, int sign) {
    require_sign(sign, p_);
    s2_.choose(orbit_of(a, p_), p_, sign);
}
void SignMapTables::choose_s3(const Simplex& tau_bar, int sign) {
    require_sign(sign, p_);
    s3_.choose(orbit_of(tau_bar, p_), p_, sign);
}
void SignMapTables::corrupt_s1(const std::vector<BlockImage>& b, int sign) { s1_.corrupt(key_of(b), sign); }
void SignMapTables::corrupt_s2(const std::vector<SignSet>& a, int sign) { s2_.corrupt(key_of(a), sign); }
void SignMapTables::corrupt_s3(const Simplex& tau_bar, int sign) { s3_.corrupt(key_of(tau_bar), sign); }

// ---- lambda_1 ---------------------------------------------------------------

std::vector<BlockImage> block_images(const ProofInstance& inst, const SplitVector& s) {
    const int p = inst.p();
    const auto full = full_sign_set(p);
    std::vector<BlockImage> out;
    for (std::size_t j = 0; j < inst.t(); ++j) {
        const auto& block = s.block(j);
        BlockImage img;
        if (s.a(j) == full) {
            img.kind = BlockImage::Kind::Vector;
            img.entries = block.entries();
        } else if (s.a(j) == 0) {
            const int h = block.h();
            if (h == 0) {
                img.kind = BlockImage::Kind::Signs;
                for (int e = 1; e <= p; ++e)
                    if (block.class_size(e) > 0) img.signs |= SignSet{1} << (e - 1);
            } else {
                img.kind = BlockImage::Kind::MinClasses;
                img.entries = block.entries();
                for (auto& x : img.entries)
                    if (x != 0 && block.class_size(x) != static_cast<std::size_t>(h)) x = 0;
            }
        } else {
            throw LabError(ErrorCode::PreconditionViolated, "B(X) needs every A_j in {empty, Z_p}");
        }
        out.push_back(std::move(img));
    }
    return out;
}

namespace {

int alt_in_order(const std::vector<int>& entries, const Permutation& order) {
    int runs = 0, last = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int e = entries[order.at(i)];
        if (e == 0 || e == last) continue;
        ++runs;
        last = e;
    }
    return runs;
}

// Max of l (or alt) over the sub-vectors of one block whose classes span no
// edge; every include/exclude choice is enumerated, only infeasible classes
// are cut.
class SubVectorMax {
public:
    SubVectorMax(const Hypergraph& h, const SignVector& block, int p, Variant variant, const Permutation& order)
        : h_(h), block_(block), p_(p), variant_(variant), order_(order), classes_(static_cast<std::size_t>(p)),
          sub_(block.size(), 0) {
        for (std::size_t i = 0; i < block.size(); ++i)
            if (block[i] != 0) positions_.push_back(i);
    }

    int run() {
        dfs(0);
        return best_;
    }

private:
    void dfs(std::size_t k) {
        if (k == positions_.size()) {
            best_ = std::max(best_, value());
            return;
        }
        const auto v = positions_[k];
        const int s = block_[v];
        auto& cls = classes_[static_cast<std::size_t>(s - 1)];
        if (!h_.closes_edge(v, cls)) {
            cls.insert(v);
            sub_[v] = s;
            dfs(k + 1);
            sub_[v] = 0;
            cls.erase(v);
        }
        dfs(k + 1);
    }

    int value() const {
        if (variant_ == Variant::Alt) return alt_in_order(sub_, order_);
        std::vector<std::size_t> sizes;
        for (const auto& c : classes_) sizes.push_back(c.size());
        return ell_of_sizes(sizes);
    }

    const Hypergraph& h_;
    const SignVector& block_;
    int p_;
    Variant variant_;
    const Permutation& order_;
    std::vector<VertexSet> classes_;
    std::vector<int> sub_;
    std::vector<std::size_t> positions_;
    int best_ = 0;
};

}  // namespace

int nu_block(const ProofInstance& inst, const SplitVector& s, std::size_t j) {
    const auto& block = s.block(j);
    if (s.a(j) == full_sign_set(inst.p())) return static_cast<int>(block.nonzero_count());
    const int inner = SubVectorMax(inst.factors()[j], block, inst.p(), inst.variant(), inst.order(j)).run();
    return std::popcount(s.a(j)) + inner;
}

int nu(const ProofInstance& inst, const SplitVector& s) {
    int total = 0;
    for (std::size_t j = 0; j < inst.t(); ++j) total += nu_block(inst, s, j);
    return total;
}

namespace {

int first_nonzero_in_order(const ProofInstance& inst, const SplitVector& s) {
    for (std::size_t j = 0; j < inst.t(); ++j) {
        const auto& order = inst.order(j);
        for (std::size_t i = 0; i < order.size(); ++i)
            if (int e = s.block(j)[order.at(i)]; e != 0) return e;
    }
    throw LabError(ErrorCode::PreconditionViolated, "zero vector");
}

int lambda1_sign(const ProofInstance& inst, const SplitVector& s, const SignMapTables& tables) {
    const auto full = full_sign_set(inst.p());
    const bool pure = std::all_of(s.a_sets().begin(), s.a_sets().end(),
                                  [&](SignSet a) { return a == 0 || a == full; });
    if (!pure) return tables.s2(s.a_sets());
    if (inst.variant() == Variant::Alt) return first_nonzero_in_order(inst, s);
    return tables.s1(block_images(inst, s));
}

}  // namespace

SignIndex lambda1(const ProofInstance& inst, const SplitVector& s, const SignMapTables& tables) {
    if (!s.in_sigma1()) throw LabError(ErrorCode::PreconditionViolated, "lambda_1 is defined on Sigma_1 only");
    if (tables.p() != inst.p()) throw LabError(ErrorCode::InvalidArgument, "table modulus differs from p");
    return {lambda1_sign(inst, s, tables), nu(inst, s)};
}

// ---- tau and lambda_2 --------------------------------------------------------

namespace {

void require_coloring(const ProofInstance& inst, const Coloring& c) {
    if (c.size() != inst.product_size())
        throw LabError(ErrorCode::NotTotal, "colouring has " + std::to_string(c.size()) + " entries, product has " +
                                                std::to_string(inst.product_size()) + " vertices");
    if (c.color_count() > 64) throw LabError(ErrorCode::CapExceeded, "at most 64 colours supported");
}

// Edges of factor j inside X(j)^eps, ascending.
std::vector<std::vector<std::size_t>> edges_inside(const ProofInstance& inst, const SplitVector& s, int eps) {
    std::vector<std::vector<std::size_t>> lists;
    for (std::size_t j = 0; j < inst.t(); ++j) {
        const auto cls = s.block(j).support(eps);
        std::vector<std::size_t> inside;
        const auto& edges = inst.factors()[j].edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].subset_of(cls)) inside.push_back(e);
        lists.push_back(std::move(inside));
    }
    return lists;
}

// Visits E^eps(X) in row-major order; f returns true to stop.
template <class F>
void for_each_tuple(const ProofInstance& inst, const std::vector<std::vector<std::size_t>>& lists, F&& f) {
    for (const auto& l : lists)
        if (l.empty()) return;
    const auto t = lists.size();
    std::vector<std::size_t> pos(t, 0), tuple(t);
    while (true) {
        for (std::size_t j = 0; j < t; ++j) tuple[j] = lists[j][pos[j]];
        if (f(inst.product().encode(tuple), tuple)) return;
        std::size_t j = t;
        while (j > 0) {
            --j;
            if (++pos[j] < lists[j].size()) break;
            pos[j] = 0;
            if (j == 0) return;
        }
    }
}

}  // namespace

Simplex tau_of(const ProofInstance& inst, const SplitVector& s, const Coloring& c) {
    if (!s.in_sigma2()) throw LabError(ErrorCode::PreconditionViolated, "tau is defined on Sigma_2 only");
    require_coloring(inst, c);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(inst.p()), 0);
    for (int eps = 1; eps <= inst.p(); ++eps) {
        auto& row = rows[static_cast<std::size_t>(eps - 1)];
        for_each_tuple(inst, edges_inside(inst, s, eps), [&](std::size_t u, const auto&) {
            row |= std::uint64_t{1} << (c[u] - 1);
            return false;
        });
    }
    Simplex tau(inst.p(), c.color_count(), std::move(rows));
    if (!tau.is_simplex())
        throw LabError(ErrorCode::PreconditionViolated, "colouring is not proper: some colour meets every sign class");
    return tau;
}

SignIndex lambda2(const ProofInstance& inst, const SplitVector& s, const Coloring& c, const SignMapTables& tables) {
    const auto tau = tau_of(inst, s, c);
    return {tables.s3(tau.bar()), inst.alpha() - inst.p() + 1 + tau.ell()};
}

// ---- exhaustive checks ---------------------------------------------------------

std::string to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::Equivariance: return "equivariance";
        case Violation::Kind::Chain: return "chain";
        case Violation::Kind::Range: return "range";
    }
    return "?";
}

Json to_json(const Violation& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["x"] = v.x.entries();
    j["lambda_x"] = {v.at_x.sign, v.at_x.index};
    if (v.kind != Violation::Kind::Range) {
        j["y"] = v.y.entries();
        j["lambda_y"] = {v.at_y.sign, v.at_y.index};
    }
    if (v.kind == Violation::Kind::Equivariance) j["shift"] = v.shift;
    return j;
}

Json to_json(const std::vector<Violation>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(to_json(v));
    return arr;
}

namespace {

// All nonzero vectors in lexicographic order, with lambda tabulated on the
// requested part of the domain.
class VectorTable {
public:
    enum class Part { Sigma1, Sigma2, All };

    VectorTable(const ProofInstance& inst, const Coloring* c, const SignMapTables& tables, Part part)
        : inst_(inst), p_(inst.p()), n_(inst.n()) {
        count_ = 1;
        weights_.assign(n_, 1);
        for (std::size_t i = n_; i-- > 0;) {
            weights_[i] = count_;
            count_ *= static_cast<std::size_t>(p_ + 1);
            if (count_ > kMaxScanVectors)
                throw LabError(ErrorCode::Infeasible, "(p+1)^n exceeds the exhaustive scan cap");
        }
        if (tables.p() != p_) throw LabError(ErrorCode::InvalidArgument, "table modulus differs from p");
        if (c != nullptr) require_coloring(inst, *c);
        value_.assign(count_, SignIndex{});
        sigma_.assign(count_, 0);
        std::vector<int> x(n_, 0);
        std::size_t idx = 0;
        while (next(x)) {
            ++idx;
            const auto s = split(inst, SignVector(p_, x));
            const bool one = s.in_sigma1();
            sigma_[idx] = one ? 1 : 2;
            if (one && part != Part::Sigma2) value_[idx] = lambda1(inst, s, tables);
            if (!one && part != Part::Sigma1) value_[idx] = lambda2(inst, s, *c, tables);
        }
    }

    std::size_t count() const { return count_; }
    int sigma(std::size_t idx) const { return sigma_[idx]; }
    const SignIndex& value(std::size_t idx) const { return value_[idx]; }
    bool has_value(std::size_t idx) const { return value_[idx].sign != 0; }

    SignVector vector_at(std::size_t idx) const {
        std::vector<int> x(n_);
        for (std::size_t i = 0; i < n_; ++i) x[i] = static_cast<int>(idx / weights_[i] % (p_ + 1));
        return SignVector(p_, std::move(x));
    }

    std::size_t acted_index(std::size_t idx, int shift) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const int e = static_cast<int>(idx / weights_[i] % (p_ + 1));
            out += static_cast<std::size_t>(e == 0 ? 0 : shift_sign(e, shift, p_)) * weights_[i];
        }
        return out;
    }

    // f(sub_index) for every nonzero proper face of the vector at idx
    template <class F>
    void for_each_proper_face(std::size_t idx, F&& f) const {
        std::vector<std::size_t> parts;
        for (std::size_t i = 0; i < n_; ++i)
            if (auto e = idx / weights_[i] % (p_ + 1); e != 0) parts.push_back(e * weights_[i]);
        const std::size_t full = (std::size_t{1} << parts.size()) - 1;
        for (std::size_t m = 1; m < full; ++m) {
            std::size_t sub = 0;
            for (std::size_t b = 0; b < parts.size(); ++b)
                if ((m >> b) & 1U) sub += parts[b];
            f(sub);
        }
    }

private:
    bool next(std::vector<int>& x) const {
        for (std::size_t i = x.size(); i-- > 0;) {
            if (x[i] < p_) {
                ++x[i];
                return true;
            }
            x[i] = 0;
        }
        return false;
    }

    const ProofInstance& inst_;
    int p_;
    std::size_t n_;
    std::size_t count_ = 1;
    std::vector<std::size_t> weights_;
    std::vector<SignIndex> value_;
    std::vector<int> sigma_;
};

void equivariance_violations(const VectorTable& table, int p, int which, std::vector<Violation>& out) {
    for (std::size_t idx = 1; idx < table.count(); ++idx) {
        if (!table.has_value(idx) || (which != 0 && table.sigma(idx) != which)) continue;
        const auto& base = table.value(idx);
        for (int a = 1; a < p; ++a) {
            const auto moved = table.acted_index(idx, a);
            const auto& got = table.value(moved);
            if (got.index != base.index || got.sign != shift_sign(base.sign, a, p))
                out.push_back({Violation::Kind::Equivariance, table.vector_at(idx), table.vector_at(moved), base, got, a});
        }
    }
}

void chain_violations(const VectorTable& table, int which, std::vector<Violation>& out) {
    for (std::size_t y = 1; y < table.count(); ++y) {
        if (!table.has_value(y) || (which != 0 && table.sigma(y) != which)) continue;
        const auto& ly = table.value(y);
        table.for_each_proper_face(y, [&](std::size_t x) {
            if (!table.has_value(x) || (which != 0 && table.sigma(x) != which)) return;
            const auto& lx = table.value(x);
            if (lx.index == ly.index && lx.sign != ly.sign)
                out.push_back({Violation::Kind::Chain, table.vector_at(x), table.vector_at(y), lx, ly, 0});
        });
    }
}

}  // namespace

std::vector<Violation> check_lambda1(const ProofInstance& inst, const SignMapTables& tables) {
    VectorTable table(inst, nullptr, tables, VectorTable::Part::Sigma1);
    std::vector<Violation> out;
    equivariance_violations(table, inst.p(), 1, out);
    chain_violations(table, 1, out);
    return out;
}

std::vector<Violation> check_lambda2(const ProofInstance& inst, const Coloring& c, const SignMapTables& tables) {
    VectorTable table(inst, &c, tables, VectorTable::Part::Sigma2);
    std::vector<Violation> out;
    equivariance_violations(table, inst.p(), 2, out);
    chain_violations(table, 2, out);
    return out;
}

std::vector<Violation> check_lambda1_range(const ProofInstance& inst, const SignMapTables& tables) {
    VectorTable table(inst, nullptr, tables, VectorTable::Part::Sigma1);
    std::vector<Violation> out;
    for (std::size_t idx = 1; idx < table.count(); ++idx) {
        if (table.sigma(idx) != 1) continue;
        const auto& v = table.value(idx);
        if (v.index < 1 || v.index > inst.alpha())
            out.push_back({Violation::Kind::Range, table.vector_at(idx), {}, v, {}, 0});
    }
    return out;
}

std::vector<Violation> check_combined(const ProofInstance& inst, const Coloring& c, const SignMapTables& tables) {
    VectorTable table(inst, &c, tables, VectorTable::Part::All);
    std::vector<Violation> out;
    equivariance_violations(table, inst.p(), 0, out);
    chain_violations(table, 0, out);
    return out;
}

// ---- Dold consequence and witnesses -----------------------------------------------

namespace {

template <class F>
void scan_sigma2(const ProofInstance& inst, F&& f) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        count *= static_cast<std::size_t>(inst.p() + 1);
        if (count > kMaxScanVectors) throw LabError(ErrorCode::Infeasible, "(p+1)^n exceeds the exhaustive scan cap");
    }
    const int p = inst.p();
    std::vector<int> x(inst.n(), 0);
    auto next = [&] {
        for (std::size_t i = x.size(); i-- > 0;) {
            if (x[i] < p) {
                ++x[i];
                return true;
            }
            x[i] = 0;
        }
        return false;
    };
    while (next()) {
        // cheap filter: every block needs >= p nonzero entries to reach Sigma_2
        bool possible = true;
        for (std::size_t j = 0; j < inst.t() && possible; ++j) {
            std::size_t nz = 0;
            for (std::size_t i = 0; i < inst.block_length(j); ++i) nz += x[inst.offset(j) + i] != 0;
            possible = nz >= static_cast<std::size_t>(p);
        }
        if (!possible) continue;
        auto s = split(inst, SignVector(p, x));
        if (s.in_sigma2()) f(s);
    }
}

}  // namespace

DoldReport dold_consequence(const ProofInstance& inst, const Coloring& c) {
    require_coloring(inst, c);
    DoldReport r;
    r.n = static_cast<int>(inst.n());
    scan_sigma2(inst, [&](const SplitVector& s) {
        const int l = tau_of(inst, s, c).ell();
        if (r.sigma2_empty || l > r.max_ell) {
            r.max_ell = l;
            r.argmax = s.vector();
        }
        r.sigma2_empty = false;
    });
    if (r.sigma2_empty) {
        r.m = inst.alpha();
        r.holds = inst.alpha() >= r.n;
    } else {
        r.m = inst.alpha() - inst.p() + 1 + r.max_ell;
        r.holds = r.m >= r.n;
    }
    return r;
}

std::size_t PartiteWitness::size() const {
    std::size_t total = 0;
    for (const auto& part : parts) total += part.size();
    return total;
}

std::vector<VertexSet> PartiteWitness::vertex_sets() const {
    std::vector<VertexSet> out;
    for (const auto& part : parts) {
        VertexSet s;
        for (const auto& v : part) s.insert(v.product_vertex);
        out.push_back(s);
    }
    return out;
}

Json to_json(const PartiteWitness& w, const ProofInstance& inst) {
    Json j;
    j["p"] = w.p;
    j["size"] = w.size();
    Json parts = Json::array();
    for (const auto& part : w.parts) {
        Json pj = Json::array();
        for (const auto& v : part) {
            Json vj;
            vj["vertex"] = v.product_vertex + 1;
            Json tuple = Json::array(), edges = Json::array();
            for (std::size_t f = 0; f < v.factor_edges.size(); ++f) {
                tuple.push_back(v.factor_edges[f] + 1);
                edges.push_back(inst.factors()[f].edge_lists()[v.factor_edges[f]]);
            }
            vj["edge_indices"] = tuple;
            vj["edges"] = edges;
            vj["color"] = v.color;
            pj.push_back(vj);
        }
        parts.push_back(pj);
    }
    j["parts"] = parts;
    if (inst.experimental()) j["status"] = "EXPERIMENTAL";
    return j;
}

PartiteWitness extract_witness(const ProofInstance& inst, const SplitVector& s, const Coloring& c, int q) {
    PartiteWitness w;
    w.p = inst.p();
    w.parts.resize(static_cast<std::size_t>(inst.p()));
    if (q < 0) throw LabError(ErrorCode::InvalidArgument, "q must be >= 0");
    if (q == 0) return w;
    const auto tau = tau_of(inst, s, c);
    if (tau.ell() < q)
        throw LabError(ErrorCode::PreconditionViolated,
                       "l(tau(X)) = " + std::to_string(tau.ell()) + " < q = " + std::to_string(q));
    const int p = inst.p();
    const auto b = static_cast<std::size_t>(q / p);
    int extra = q % p;
    for (int eps = 1; eps <= p; ++eps) {
        auto want = b;
        if (extra > 0 && tau.row_size(eps) > b) {
            ++want;
            --extra;
        }
        std::vector<int> colors;
        for (int col = 1; col <= tau.color_count() && colors.size() < want; ++col)
            if (tau.contains(eps, col)) colors.push_back(col);
        const auto lists = edges_inside(inst, s, eps);
        auto& part = w.parts[static_cast<std::size_t>(eps - 1)];
        for (int col : colors) {
            for_each_tuple(inst, lists, [&](std::size_t u, const std::vector<std::size_t>& tuple) {
                if (c[u] != col) return false;
                part.push_back({u, tuple, col});
                return true;
            });
        }
    }
    return w;
}

bool witness_is_valid(const ProofInstance& inst, const PartiteWitness& w, const Coloring& c) {
    if (w.p != inst.p() || w.parts.size() != static_cast<std::size_t>(inst.p())) return false;
    std::size_t lo = std::numeric_limits<std::size_t>::max(), hi = 0;
    std::vector<int> color_uses(static_cast<std::size_t>(c.color_count()) + 1, 0);
    for (const auto& part : w.parts) {
        lo = std::min(lo, part.size());
        hi = std::max(hi, part.size());
        std::vector<int> seen;
        for (const auto& v : part) {
            if (v.product_vertex >= c.size() || v.factor_edges.size() != inst.t()) return false;
            if (inst.product().encode(v.factor_edges) != v.product_vertex) return false;
            if (c[v.product_vertex] != v.color) return false;
            if (std::find(seen.begin(), seen.end(), v.color) != seen.end()) return false;
            seen.push_back(v.color);
            ++color_uses[static_cast<std::size_t>(v.color)];
        }
    }
    if (hi - lo > 1) return false;
    for (int uses : color_uses)
        if (uses > inst.p() - 1) return false;
    // complete: per factor, edges used in different parts are disjoint
    for (std::size_t a = 0; a < w.parts.size(); ++a)
        for (std::size_t b = a + 1; b < w.parts.size(); ++b)
            for (const auto& u : w.parts[a])
                for (const auto& v : w.parts[b])
                    for (std::size_t j = 0; j < inst.t(); ++j)
                        if (inst.factors()[j].edge(u.factor_edges[j]).intersects(inst.factors()[j].edge(v.factor_edges[j])))
                            return false;
    return true;
}

WitnessSearch find_witness(const ProofInstance& inst, const Coloring& c, int eta) {
    WitnessSearch out;
    out.experimental = inst.experimental();
    out.witness.p = inst.p();
    out.witness.parts.resize(static_cast<std::size_t>(inst.p()));
    require_coloring(inst, c);
    if (eta <= 0) {
        out.found = true;
        return out;
    }
    const auto report = dold_consequence(inst, c);
    out.max_ell = report.max_ell;
    out.best = report.argmax;
    if (report.sigma2_empty || report.max_ell < eta) return out;
    out.witness = extract_witness(inst, split(inst, *report.argmax), c, eta);
    out.found = true;
    return out;
}

}  // namespace kglab
