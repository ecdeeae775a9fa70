#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kglab/constructions.hpp"
#include "kglab/hypergraph.hpp"
#include "kglab/invariants.hpp"
#include "kglab/io.hpp"

namespace kglab {

/// Subset of Z_p; bit k-1 stands for omega^k.
using SignSet = std::uint32_t;

inline SignSet full_sign_set(int p) { return p >= 32 ? ~SignSet{0} : (SignSet{1} << p) - 1; }
SignSet rotate_signs(SignSet s, int shift, int p);

bool is_prime(int p);

/// Which defect drives the sign maps: the equitable colourability defect,
/// or n minus the alternation number.
enum class Variant { Ecd, Alt };

/// Factors H_1..H_t with a modulus p, plus the derived quantities the sign
/// maps need: block offsets, eta, alpha, the Kneser factors KG^p(H_j) and,
/// for the alt variant, an optimal vertex ordering sigma_j per factor.
class ProofInstance {
public:
    ProofInstance(std::vector<Hypergraph> factors, int p, Variant variant = Variant::Ecd,
                  bool allow_composite = false);

    int p() const { return p_; }
    Variant variant() const { return variant_; }
    std::size_t t() const { return factors_.size(); }
    std::size_t n() const { return n_; }
    const std::vector<Hypergraph>& factors() const { return factors_; }
    const std::vector<Hypergraph>& kneser_factors() const { return kneser_; }
    std::size_t offset(std::size_t j) const { return offsets_[j]; }
    std::size_t block_length(std::size_t j) const { return factors_[j].n(); }
    /// vertex order used inside block j (identity for the ecd variant)
    const Permutation& order(std::size_t j) const { return orders_[j]; }
    /// per-factor ecd^p, or n_j - alt^p for the alt variant
    const std::vector<int>& defects() const { return defects_; }
    int eta() const { return eta_; }
    /// alpha = n - eta + p - 1
    int alpha() const { return static_cast<int>(n_) - eta_ + p_ - 1; }
    /// tuple space of KG^p(H_1) x ... x KG^p(H_t)
    const ProductSpace& product() const { return product_; }
    std::size_t product_size() const { return product_.size(); }
    bool experimental() const { return experimental_; }

private:
    std::vector<Hypergraph> factors_;
    int p_;
    Variant variant_;
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<Permutation> orders_;
    std::vector<int> defects_;
    int eta_ = 0;
    std::vector<Hypergraph> kneser_;
    ProductSpace product_{{1}};
    bool experimental_ = false;
};

/// X cut into blocks X(1)..X(t) with the sign supports A_j(X).
class SplitVector {
public:
    SplitVector(SignVector x, std::vector<SignVector> blocks, std::vector<SignSet> a);

    const SignVector& vector() const { return x_; }
    const std::vector<SignVector>& blocks() const { return blocks_; }
    const SignVector& block(std::size_t j) const { return blocks_[j]; }
    /// A_j(X): signs whose class in block j contains an edge of H_j
    SignSet a(std::size_t j) const { return a_[j]; }
    const std::vector<SignSet>& a_sets() const { return a_; }
    bool in_sigma1() const;
    bool in_sigma2() const { return !in_sigma1() && x_.nonzero_count() > 0; }

private:
    SignVector x_;
    std::vector<SignVector> blocks_;
    std::vector<SignSet> a_;
};

SplitVector split(const SignVector& x, std::span<const std::size_t> block_lengths,
                  std::span<const Hypergraph> hypergraphs);
SplitVector split(const ProofInstance& inst, const SignVector& x);

/// B_j(X) for the s_1 domain L_1.
struct BlockImage {
    enum class Kind { Vector, Signs, MinClasses };
    Kind kind = Kind::Vector;
    std::vector<int> entries;  // Vector, MinClasses
    SignSet signs = 0;         // Signs

    BlockImage acted(int shift, int p) const;
    bool operator==(const BlockImage&) const = default;
};

/// Simplex of (sigma^{p-1}_{p-2})^{*C}: a subset of Z_p x [C] stored as one
/// colour mask per sign (bit c-1 for colour c).
class Simplex {
public:
    Simplex(int p, int color_count, std::vector<std::uint64_t> rows);
    static Simplex from_sizes(int p, const std::vector<std::size_t>& sizes);

    int p() const { return p_; }
    int color_count() const { return color_count_; }
    std::uint64_t row(int sign) const { return rows_[static_cast<std::size_t>(sign - 1)]; }
    std::size_t row_size(int sign) const;
    std::size_t size() const;
    bool contains(int sign, int color) const { return (row(sign) >> (color - 1)) & 1U; }
    /// h = min over signs of |tau^sign|
    int h() const;
    /// l = p*h + #{signs with |tau^sign| > h}
    int ell() const;
    /// union of the rows of minimum size
    Simplex bar() const;
    Simplex acted(int shift) const;
    bool is_face_of(const Simplex& o) const;
    /// no colour carries every sign
    bool is_simplex() const;

    bool operator==(const Simplex&) const = default;

private:
    int p_;
    int color_count_;
    std::vector<std::uint64_t> rows_;
};

/// Lookup table for one Z_p-equivariant sign map. The default is the
/// canonical choice: the lexicographically least element of each orbit gets
/// omega. choose() re-picks an orbit's value equivariantly; corrupt() plants
/// a single pointwise value and is meant for negative controls only.
class OrbitTable {
public:
    using Key = std::vector<int>;
    /// orbit[a] is the key of omega^a . x
    int lookup(const std::vector<Key>& orbit, int p) const;
    void choose(const std::vector<Key>& orbit, int p, int sign);
    void corrupt(const Key& key, int sign) { pointwise_[key] = sign; }

private:
    std::map<Key, int> representative_;
    std::map<Key, int> pointwise_;
};

/// s_1 on L_1, s_2 on L_2, s_3 on U.
class SignMapTables {
public:
    explicit SignMapTables(int p) : p_(p) {}
    int p() const { return p_; }

    int s1(const std::vector<BlockImage>& b) const;
    int s2(const std::vector<SignSet>& a) const;
    int s3(const Simplex& tau_bar) const;

    void choose_s1(const std::vector<BlockImage>& b, int sign);
    void choose_s2(const std::vector<SignSet>& a, int sign);
    void choose_s3(const Simplex& tau_bar, int sign);
    void corrupt_s1(const std::vector<BlockImage>& b, int sign);
    void corrupt_s2(const std::vector<SignSet>& a, int sign);
    void corrupt_s3(const Simplex& tau_bar, int sign);

private:
    int p_;
    OrbitTable s1_, s2_, s3_;
};

struct SignIndex {
    int sign = 0;
    int index = 0;
    bool operator==(const SignIndex&) const = default;
};

/// B(X) = (B_1(X), ..., B_t(X)); requires every A_j in {empty, Z_p}.
std::vector<BlockImage> block_images(const ProofInstance& inst, const SplitVector& s);

/// nu_j(X) for one block.
int nu_block(const ProofInstance& inst, const SplitVector& s, std::size_t j);
/// nu(X) = sum of nu_j(X).
int nu(const ProofInstance& inst, const SplitVector& s);

/// lambda_1 on Sigma_1: (s(X), nu(X)).
SignIndex lambda1(const ProofInstance& inst, const SplitVector& s, const SignMapTables& tables);

/// tau(X) = {(eps, c(u)) : u in E^eps(X)} for X in Sigma_2.
Simplex tau_of(const ProofInstance& inst, const SplitVector& s, const Coloring& c);

/// lambda_2 on Sigma_2: (s_3(bar tau(X)), alpha - p + 1 + l(tau(X))).
SignIndex lambda2(const ProofInstance& inst, const SplitVector& s, const Coloring& c,
                  const SignMapTables& tables);

struct Violation {
    enum class Kind { Equivariance, Chain, Range };
    Kind kind = Kind::Chain;
    SignVector x;
    SignVector y;  // omega^shift . x for equivariance; the larger face for chains
    SignIndex at_x;
    SignIndex at_y;
    int shift = 0;
};
std::string to_string(Violation::Kind k);
Json to_json(const Violation& v);
Json to_json(const std::vector<Violation>& vs);

/// Largest (p+1)^n the exhaustive scans accept.
inline constexpr std::size_t kMaxScanVectors = std::size_t{1} << 22;

/// Equivariance of lambda_1 and the forbidden pattern X <= Y in Sigma_1 with
/// nu(X) = nu(Y), s(X) != s(Y).
std::vector<Violation> check_lambda1(const ProofInstance& inst, const SignMapTables& tables);

/// Equivariance of lambda_2 and the forbidden pattern X <= Y in Sigma_2 with
/// equal index and different signs.
std::vector<Violation> check_lambda2(const ProofInstance& inst, const Coloring& c, const SignMapTables& tables);

/// X in Sigma_1 with nu(X) outside 1..alpha.
std::vector<Violation> check_lambda1_range(const ProofInstance& inst, const SignMapTables& tables);

/// Chain pattern for the glued map lambda on all nonzero vectors.
std::vector<Violation> check_combined(const ProofInstance& inst, const Coloring& c, const SignMapTables& tables);

struct DoldReport {
    bool sigma2_empty = true;
    int max_ell = 0;
    std::optional<SignVector> argmax;
    /// target dimension index m of the glued map
    int m = 0;
    int n = 0;
    /// m >= n, i.e. max l(tau) >= eta (or eta <= p-1 when Sigma_2 is empty)
    bool holds = false;
};

/// Exhaustive max over Sigma_2 of l(tau(X)); the first maximiser in
/// enumeration order is kept.
DoldReport dold_consequence(const ProofInstance& inst, const Coloring& c);

struct WitnessVertex {
    std::size_t product_vertex = 0;         // 0-based tuple index
    std::vector<std::size_t> factor_edges;  // 0-based edge index of H_j per factor
    int color = 0;
};

struct PartiteWitness {
    int p = 0;
    std::vector<std::vector<WitnessVertex>> parts;  // part i holds sign omega^(i+1)

    std::size_t size() const;
    /// parts as product-vertex sets, e.g. for is_colorful_balanced_complete
    std::vector<VertexSet> vertex_sets() const;
};

Json to_json(const PartiteWitness& w, const ProofInstance& inst);

/// Constructive extraction: a balanced sub-simplex of tau(X) with l = |tau| = q,
/// then for each (sign, colour) the first product vertex of E^sign(X) with
/// that colour.
PartiteWitness extract_witness(const ProofInstance& inst, const SplitVector& s, const Coloring& c, int q);

/// Checks the witness against the factors directly: colours match c,
/// balanced, colourful, and per factor the edges used by different parts are
/// pairwise disjoint.
bool witness_is_valid(const ProofInstance& inst, const PartiteWitness& w, const Coloring& c);

struct WitnessSearch {
    bool found = false;
    PartiteWitness witness;
    int max_ell = 0;
    std::optional<SignVector> best;
    bool experimental = false;
};

/// Scans Sigma_2 for the first X of maximal l(tau(X)) and extracts a
/// witness with eta vertices when that maximum reaches eta.
WitnessSearch find_witness(const ProofInstance& inst, const Coloring& c, int eta);

}  // namespace kglab
