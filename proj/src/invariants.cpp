#include "kglab/invariants.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "kglab/error.hpp"

namespace kglab {

SignVector::SignVector(int modulus, std::vector<int> entries) : modulus_(modulus), entries_(std::move(entries)) {
    if (modulus_ < 1) throw LabError(ErrorCode::InvalidArgument, "sign modulus must be >= 1");
    if (entries_.size() > kMaxVertices) throw LabError(ErrorCode::CapExceeded, "sign vector too long");
    for (int e : entries_)
        if (e < 0 || e > modulus_)
            throw LabError(ErrorCode::InvalidArgument, "sign entry " + std::to_string(e) + " outside 0.." +
                                                           std::to_string(modulus_));
}

VertexSet SignVector::support(int sign) const {
    VertexSet s;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] == sign) s.insert(i);
    return s;
}

VertexSet SignVector::support() const {
    VertexSet s;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != 0) s.insert(i);
    return s;
}

std::size_t SignVector::class_size(int sign) const {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), sign));
}

std::size_t SignVector::nonzero_count() const {
    return entries_.size() - static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), 0));
}

int ell_of_sizes(const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) return 0;
    const auto h = *std::min_element(sizes.begin(), sizes.end());
    const auto above = std::count_if(sizes.begin(), sizes.end(), [&](std::size_t s) { return s > h; });
    return static_cast<int>(sizes.size() * h) + static_cast<int>(above);
}

int SignVector::h() const {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (int s = 1; s <= modulus_; ++s) best = std::min(best, class_size(s));
    return static_cast<int>(best);
}

int SignVector::ell() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(modulus_), 0);
    for (int e : entries_)
        if (e != 0) ++sizes[static_cast<std::size_t>(e - 1)];
    return ell_of_sizes(sizes);
}

SignVector SignVector::acted(int shift) const {
    auto out = entries_;
    for (auto& e : out)
        if (e != 0) e = shift_sign(e, shift, modulus_);
    return SignVector(modulus_, std::move(out));
}

bool SignVector::is_face_of(const SignVector& y) const {
    if (y.size() != size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != 0 && entries_[i] != y.entries_[i]) return false;
    return true;
}

SignVector SignVector::restricted(const VertexSet& positions) const {
    auto out = entries_;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!positions.contains(i)) out[i] = 0;
    return SignVector(modulus_, std::move(out));
}

int alt_of(const SignVector& x) {
    int runs = 0, last = 0;
    for (int e : x.entries()) {
        if (e == 0 || e == last) continue;
        ++runs;
        last = e;
    }
    return runs;
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
        if (v >= image_.size() || seen[v]) throw LabError(ErrorCode::InvalidArgument, "not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    return Permutation(std::move(id));
}

namespace {

void require_positive(int r) {
    if (r < 1) throw LabError(ErrorCode::InvalidArgument, "number of classes must be >= 1");
}

// Branch and bound over "vertex v joins class c, or is removed".
class DefectSearch {
public:
    DefectSearch(const Hypergraph& h, int r, bool equitable)
        : h_(h), r_(static_cast<std::size_t>(r)), equitable_(equitable), classes_(r_), sizes_(r_, 0) {}

    DefectResult run() {
        dfs(0);
        return {static_cast<int>(h_.n()) - best_, best_classes_};
    }

private:
    bool balanced() const {
        auto [lo, hi] = std::minmax_element(sizes_.begin(), sizes_.end());
        return *hi - *lo <= 1;
    }

    void dfs(std::size_t v) {
        const auto remaining = static_cast<int>(h_.n() - v);
        if (kept_ + remaining <= best_) return;
        if (equitable_) {
            const auto top = *std::max_element(sizes_.begin(), sizes_.end());
            int deficit = 0;
            for (auto s : sizes_)
                if (s + 1 < top) deficit += static_cast<int>(top - 1 - s);
            if (deficit > remaining) return;
        }
        if (v == h_.n()) {
            if (!equitable_ || balanced()) {
                best_ = kept_;
                best_classes_ = classes_;
            }
            return;
        }
        const auto open = std::min(used_ + 1, r_);
        for (std::size_t c = 0; c < open; ++c) {
            if (h_.closes_edge(v, classes_[c])) continue;
            const bool fresh = c == used_;
            classes_[c].insert(v);
            ++sizes_[c];
            ++kept_;
            if (fresh) ++used_;
            dfs(v + 1);
            if (fresh) --used_;
            --kept_;
            --sizes_[c];
            classes_[c].erase(v);
        }
        dfs(v + 1);
    }

    const Hypergraph& h_;
    std::size_t r_;
    bool equitable_;
    std::vector<VertexSet> classes_;
    std::vector<std::size_t> sizes_;
    std::size_t used_ = 0;
    int kept_ = 0;
    int best_ = -1;
    std::vector<VertexSet> best_classes_;
};

// Depth-first construction of X in sigma-order. Signs are interchangeable,
// so a new sign is only opened after all smaller ones have been used.
class AltSearch {
public:
    AltSearch(const Hypergraph& h, int r, const Permutation& sigma)
        : h_(h), r_(r), sigma_(sigma), classes_(static_cast<std::size_t>(r)), x_(h.n(), 0) {
        if (sigma.size() != h.n()) throw LabError(ErrorCode::InvalidArgument, "permutation size differs from n");
    }

    AltResult maximise() {
        target_ = std::numeric_limits<int>::max();
        dfs(0, 0, 0, 0);
        return {best_, SignVector(r_, best_x_.empty() ? std::vector<int>(h_.n(), 0) : best_x_)};
    }

    bool reaches(int threshold) {
        if (threshold <= 0) return true;
        target_ = threshold;
        dfs(0, 0, 0, 0);
        return best_ >= threshold;
    }

private:
    bool dfs(std::size_t i, int runs, int last, int used) {
        if (runs > best_) {
            best_ = runs;
            best_x_ = x_;
            if (best_ >= target_) return true;
        }
        if (i == h_.n()) return false;
        const int reachable = runs + static_cast<int>(h_.n() - i);
        if (reachable <= best_ || reachable < target_bound()) return false;
        const auto v = sigma_.at(i);
        const int open = std::min(used + 1, r_);
        auto try_sign = [&](int s) {
            auto& cls = classes_[static_cast<std::size_t>(s - 1)];
            if (h_.closes_edge(v, cls)) return false;
            cls.insert(v);
            x_[i] = s;
            const bool done = dfs(i + 1, runs + (s != last ? 1 : 0), s, std::max(used, s));
            x_[i] = 0;
            cls.erase(v);
            return done;
        };
        for (int s = 1; s <= open; ++s)
            if (s != last && try_sign(s)) return true;
        if (last != 0 && try_sign(last)) return true;
        return dfs(i + 1, runs, last, used);
    }

    // In threshold mode a branch that cannot reach the target is dead.
    int target_bound() const { return target_ == std::numeric_limits<int>::max() ? 0 : target_; }

    const Hypergraph& h_;
    int r_;
    const Permutation& sigma_;
    std::vector<VertexSet> classes_;
    std::vector<int> x_;
    int best_ = 0;
    std::vector<int> best_x_;
    int target_ = 0;
};

}  // namespace

DefectResult cd(const Hypergraph& h, int r) {
    require_positive(r);
    return DefectSearch(h, r, false).run();
}

DefectResult ecd(const Hypergraph& h, int r) {
    require_positive(r);
    return DefectSearch(h, r, true).run();
}

AltResult alt_sigma(const Hypergraph& h, int r, const Permutation& sigma) {
    if (r < 2) throw LabError(ErrorCode::InvalidArgument, "alt_sigma needs r >= 2");
    return AltSearch(h, r, sigma).maximise();
}

bool alt_sigma_at_least(const Hypergraph& h, int r, const Permutation& sigma, int threshold) {
    if (r < 2) throw LabError(ErrorCode::InvalidArgument, "alt_sigma needs r >= 2");
    return AltSearch(h, r, sigma).reaches(threshold);
}

AltMinResult alt_min(const Hypergraph& h, int r, AltMode mode, HeuristicOptions opts) {
    if (r < 2) throw LabError(ErrorCode::InvalidArgument, "alt_min needs r >= 2");
    const auto n = h.n();
    if (mode == AltMode::Exact) {
        if (n > kMaxExactAltVertices)
            throw LabError(ErrorCode::Infeasible, "exact alt needs n <= " + std::to_string(kMaxExactAltVertices) +
                                                      " (n! orderings); use heuristic mode");
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        AltMinResult best{static_cast<int>(n) + 1, Permutation::identity(n), false};
        do {
            // Reversing sigma reverses every X and preserves alt, so only one
            // of each reversal pair is examined; the lexicographically smaller
            // one is always visited.
            if (n >= 2 && perm[n - 1] < perm[0]) continue;
            Permutation sigma(perm);
            if (alt_sigma_at_least(h, r, sigma, best.value)) continue;
            best.value = alt_sigma(h, r, sigma).value;
            best.sigma = sigma;
            if (best.value == 0) break;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (n == 0) best.value = 0;
        return best;
    }

    std::mt19937_64 rng(opts.seed);
    AltMinResult best{static_cast<int>(n) + 1, Permutation::identity(n), true};
    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        if (restart > 0) std::shuffle(perm.begin(), perm.end(), rng);
        int current = alt_sigma(h, r, Permutation(perm)).value;
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::swap(perm[i], perm[i + 1]);
                Permutation cand(perm);
                if (!alt_sigma_at_least(h, r, cand, current)) {
                    current = alt_sigma(h, r, cand).value;
                    improved = true;
                } else {
                    std::swap(perm[i], perm[i + 1]);
                }
            }
        }
        if (current < best.value) {
            best.value = current;
            best.sigma = Permutation(perm);
        }
    }
    if (n == 0) best.value = 0;
    return best;
}

}  // namespace kglab
