// Acceptance run: one PASS/FAIL line per criterion, each against its time
// budget. Exit code 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kglab/chromatic.hpp"
#include "kglab/constructions.hpp"
#include "kglab/experiment.hpp"
#include "kglab/invariants.hpp"
#include "kglab/prooflab.hpp"
#include "oracles.hpp"

using namespace kglab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail.clear();
        ok = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

struct Criterion {
    std::string id;
    std::string name;
    double budget_s;  // budget for the whole criterion
    std::function<Outcome()> run;
};

template <typename F>
double seconds_of(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", s);
    return buf;
}

// One colouring instance for the witness and Dold criteria.
struct ColoredInstance {
    std::string name;
    std::vector<Hypergraph> factors;
    int p;
    Coloring coloring;
};
std::vector<ColoredInstance> colored;

// Exact chi of KG^r(H), recorded for the witness criterion when p = r is 2 or 3.
Outcome exact_chi(const std::string& name, const Hypergraph& h, int r, int want, double per_instance_s) {
    Outcome o;
    ChromaticResult res;
    const double t = seconds_of([&] { res = chromatic_number(kneser(h, r)); });
    if (res.value != ChromaticValue::finite(want))
        o.fail(name + " gave " + res.value.to_string() + ", expected " + std::to_string(want));
    if (t > per_instance_s) o.fail(name + " took " + fmt(t) + " s");
    if (res.coloring && (r == 2 || r == 3)) colored.push_back({name, {h}, r, *res.coloring});
    o.detail = o.ok ? name + " = " + std::to_string(want) + " in " + fmt(t) + " s" : o.detail;
    return o;
}

void merge(Outcome& into, const Outcome& part) {
    if (!part.ok) into.fail(part.detail);
}

std::vector<Hypergraph> random_pool() {
    oracle::Rng rng(20240601);
    std::vector<Hypergraph> pool;
    while (pool.size() < 200) pool.push_back(oracle::random_hypergraph(rng, 7, 10));
    return pool;
}

Outcome criterion_1() {
    Outcome o;
    for (int n = 4; n <= 7; ++n)
        merge(o, exact_chi("KG(" + std::to_string(n) + ",2)", complete_uniform(n, 2), 2, n - 2, 10));
    merge(o, exact_chi("KG(7,3)", complete_uniform(7, 3), 2, 7 - 6 + 2, 10));
    if (o.ok) o.detail = "chi(KG(n,2)) = 2,3,4,5 for n = 4..7; chi(KG(7,3)) = 3";
    return o;
}

Outcome criterion_2() {
    Outcome o;
    merge(o, exact_chi("KG^3(7,2)", complete_uniform(7, 2), 3, formula_kneser(7, 2, 3), 60));
    merge(o, exact_chi("KG^3(9,2)", complete_uniform(9, 2), 3, formula_kneser(9, 2, 3), 60));
    if (formula_kneser(7, 2, 3) != 2 || formula_kneser(9, 2, 3) != 3) o.fail("closed form disagrees with 2 and 3");
    if (o.ok) o.detail = "chi(KG^3(7,2)) = 2, chi(KG^3(9,2)) = 3, both equal the closed form";
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const auto h = hnka(7, 2, 3);
    const int e = ecd(h, 2).value;
    if (e != 4) o.fail("ecd^2(H(7,2,3)) = " + std::to_string(e));
    merge(o, exact_chi("KG^2(H(7,2,3))", h, 2, 4, 60));
    if (ceil_div(e, 1) != 4) o.fail("ceil(ecd/(r-1)) != 4");
    if (o.ok) o.detail = "chi(KG^2(H(7,2,3))) = 4 = ceil(ecd^2 / 1), ecd^2 = 4";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    int checked = 0, oracle_checked = 0;
    for (const auto& h : random_pool())
        for (int r = 2; r <= 3; ++r) {
            const int c = cd(h, r).value, e = ecd(h, r).value;
            const int a = alt_min(h, r, AltMode::Exact).value;
            if (e < c) o.fail("ecd < cd");
            if (static_cast<int>(h.n()) - a < c) o.fail("n - alt < cd");
            ++checked;
            if (h.n() <= 5) {
                if (c != oracle::cd(h, r) || e != oracle::ecd(h, r) || a != oracle::alt_min(h, r))
                    o.fail("oracle disagreement at n = " + std::to_string(h.n()));
                ++oracle_checked;
            }
        }
    if (o.ok)
        o.detail = std::to_string(checked) + " (H, r) pairs ordered; " + std::to_string(oracle_checked) +
                   " with n <= 5 match naive enumeration";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    int completed = 0, skipped = 0;
    for (const auto& h : random_pool())
        for (int r = 2; r <= 3; ++r) {
            const auto chi = chromatic_number(kneser(h, r), 6);
            if (!chi.value.is_finite()) {
                ++skipped;
                continue;
            }
            ++completed;
            const int n = static_cast<int>(h.n());
            const int eb = ceil_div(ecd(h, r).value, r - 1);
            const int ab = ceil_div(n - alt_min(h, r, AltMode::Exact).value, r - 1);
            if (eb > chi.value.value() || ab > chi.value.value()) o.fail("bound above chi");
        }
    if (completed == 0) o.fail("no instance completed");
    if (o.ok)
        o.detail = "0 violations over " + std::to_string(completed) + " completed instances (" +
                   std::to_string(skipped) + " above the limit)";
    return o;
}

Outcome criterion_6() {
    Outcome o;
    const auto pet = kneser(complete_uniform(5, 2), 2);
    const auto k4 = kneser(complete_uniform(4, 2), 2);
    auto product_case = [&](const std::string& name, std::vector<Hypergraph> kg, int want) {
        ChromaticResult res;
        const double t = seconds_of([&] { res = product_chromatic(kg, 8); });
        if (res.value != ChromaticValue::finite(want)) o.fail(name + " = " + res.value.to_string());
        if (t > 120) o.fail(name + " took " + fmt(t) + " s");
    };
    product_case("Petersen x Petersen", {pet, pet}, 3);
    product_case("KG(4,2) x Petersen", {k4, pet}, 2);
    if (chromatic_number(pet).value != ChromaticValue::finite(3) || chromatic_number(k4).value != ChromaticValue::finite(2))
        o.fail("factor chromatic numbers");

    // both product bounds against exact chi on completed product instances
    std::vector<std::vector<Hypergraph>> instances{{complete_uniform(5, 2), complete_uniform(5, 2)},
                                                   {complete_uniform(4, 2), complete_uniform(5, 2)},
                                                   {hnka(7, 2, 3), complete_uniform(5, 2)}};
    oracle::Rng rng(66);
    while (instances.size() < 30) instances.push_back({oracle::random_loopless(rng, 5, 6), oracle::random_loopless(rng, 5, 6)});
    int completed = 0, zhu_verified = 0;
    for (const auto& f : instances) {
        BoundReport rep;
        const double t = seconds_of([&] { rep = bound_report(f, 2, true, 6); });
        if (t > 120) o.fail("bound report took " + fmt(t) + " s");
        if (!rep.exact || !rep.exact->is_finite()) continue;
        ++completed;
        zhu_verified += rep.zhu == ZhuStatus::Verified;
        if (rep.product_alt_bound > rep.exact->value() || rep.product_ecd_bound > rep.exact->value())
            o.fail("product bound above exact chi");
    }
    if (o.ok)
        o.detail = "chi(Petersen x Petersen) = 3, chi(KG(4,2) x Petersen) = 2; both product bounds <= chi on " +
                   std::to_string(completed) + " products (" + std::to_string(zhu_verified) + " with chi = min factor chi)";
    return o;
}

ProofInstance larger_eta(const std::vector<Hypergraph>& factors, int p) {
    ProofInstance by_ecd(factors, p, Variant::Ecd);
    ProofInstance by_alt(factors, p, Variant::Alt);
    return by_alt.eta() > by_ecd.eta() ? by_alt : by_ecd;
}

void ensure_colored() {
    if (!colored.empty()) return;
    for (int n = 4; n <= 7; ++n) exact_chi("KG(n,2)", complete_uniform(n, 2), 2, n - 2, 1e9);
    exact_chi("KG(7,3)", complete_uniform(7, 3), 2, 3, 1e9);
    exact_chi("KG^3(7,2)", complete_uniform(7, 2), 3, 2, 1e9);
    exact_chi("KG^3(9,2)", complete_uniform(9, 2), 3, 3, 1e9);
    exact_chi("KG^2(H(7,2,3))", hnka(7, 2, 3), 2, 4, 1e9);
}

void add_projection_instance() {
    const std::vector<Hypergraph> factors{complete_uniform(5, 2), complete_uniform(5, 2)};
    const ProofInstance inst(factors, 2);
    const auto c1 = chromatic_number(inst.kneser_factors()[0]).coloring.value();
    std::vector<int> colors(inst.product_size());
    for (std::size_t u = 0; u < colors.size(); ++u) colors[u] = c1[inst.product().decode(u)[0]];
    colored.push_back({"Petersen x Petersen (projection)", factors, 2, Coloring(colors, c1.color_count())});
}

Outcome criterion_7() {
    Outcome o;
    ensure_colored();
    add_projection_instance();
    std::ostringstream summary;
    for (const auto& ci : colored) {
        const double t = seconds_of([&] {
            const auto inst = larger_eta(ci.factors, ci.p);
            const auto w = find_witness(inst, ci.coloring, inst.eta());
            if (!w.found) {
                o.fail(ci.name + ": no witness (max l = " + std::to_string(w.max_ell) + ", eta = " +
                       std::to_string(inst.eta()) + ")");
                return;
            }
            const auto host = ci.factors.size() == 1 ? inst.kneser_factors()[0] : product_minimal(inst.kneser_factors());
            if (!is_colorful_balanced_complete(host, w.witness.vertex_sets(), ci.coloring))
                o.fail(ci.name + ": witness is not colourful balanced complete");
            if (!witness_is_valid(inst, w.witness, ci.coloring)) o.fail(ci.name + ": witness fails the factor check");
            std::map<int, int> per_color;
            for (const auto& part : w.witness.parts)
                for (const auto& v : part) ++per_color[v.color];
            for (const auto& [color, count] : per_color)
                if (count > ci.p - 1) o.fail(ci.name + ": colour used " + std::to_string(count) + " times");
            if (static_cast<int>(w.witness.size()) != inst.eta()) o.fail(ci.name + ": wrong witness size");
            summary << ci.name << " eta=" << inst.eta() << ", ";
        });
        if (t > 120) o.fail(ci.name + " took " + fmt(t) + " s");
    }
    if (o.ok) o.detail = "witnesses for " + std::to_string(colored.size()) + " colourings: " + summary.str();
    if (o.ok && o.detail.size() > 2) o.detail.resize(o.detail.size() - 2);
    return o;
}

Outcome criterion_8() {
    Outcome o;
    struct Case {
        std::string name;
        std::vector<Hypergraph> factors;
        int p;
    };
    const std::vector<Case> cases{
        {"K5^(2), p=2", {complete_uniform(5, 2)}, 2},
        {"K5^(1), p=2", {complete_uniform(5, 1)}, 2},
        {"K5^(2), p=3", {complete_uniform(5, 2)}, 3},
        {"K5^(1), p=3", {complete_uniform(5, 1)}, 3},
        {"K3^(2) x K3^(2), p=2", {complete_uniform(3, 2), complete_uniform(3, 2)}, 2},
        {"K3^(1) x K3^(1), p=2", {complete_uniform(3, 1), complete_uniform(3, 1)}, 2},
        {"K4^(2) x K2^(1), p=2", {complete_uniform(4, 2), complete_uniform(2, 1)}, 2},
    };
    int runs = 0;
    for (const auto& cs : cases)
        for (auto variant : {Variant::Ecd, Variant::Alt}) {
            const ProofInstance inst(cs.factors, cs.p, variant);
            const SignMapTables tables(cs.p);
            const auto c = product_chromatic(inst.kneser_factors()).coloring.value();
            if (!check_lambda1(inst, tables).empty()) o.fail(cs.name + ": lambda1 violations");
            if (!check_lambda2(inst, c, tables).empty()) o.fail(cs.name + ": lambda2 violations");
            if (!check_lambda1_range(inst, tables).empty()) o.fail(cs.name + ": nu outside 1..alpha");
            if (!check_combined(inst, c, tables).empty()) o.fail(cs.name + ": glued map violations");
            runs += 2;
        }

    // negative controls
    {
        const ProofInstance inst({complete_uniform(3, 2)}, 2);
        SignMapTables bad(2);
        bad.corrupt_s2({0b10U}, 1);
        if (check_lambda1(inst, bad).empty()) o.fail("corrupted s2 went unnoticed");
    }
    {
        const ProofInstance inst({complete_uniform(5, 2)}, 2);
        const auto c = chromatic_number(inst.kneser_factors()[0]).coloring.value();
        bool planted = false;
        // corrupt s3 on the first simplex bar that lambda2 actually uses
        std::vector<int> x(5, 0);
        while (!planted && oracle::next_tuple(x, 3)) {
            const auto s = split(inst, SignVector(2, x));
            if (!s.in_sigma2()) continue;
            const auto bar = tau_of(inst, s, c).bar();
            SignMapTables bad(2);
            bad.corrupt_s3(bar, shift_sign(SignMapTables(2).s3(bar), 1, 2));
            if (check_lambda2(inst, c, bad).empty()) o.fail("corrupted s3 went unnoticed");
            planted = true;
        }
        if (!planted) o.fail("no Sigma_2 vector for the s3 control");
    }
    {
        // s1 is only read on vectors whose blocks have A in {empty, Z_p}
        const ProofInstance inst({complete_uniform(5, 2)}, 3);
        std::vector<int> x(5, 0);
        bool found = false;
        while (!found && oracle::next_tuple(x, 4)) {
            const auto s = split(inst, SignVector(3, x));
            if (!s.in_sigma1()) continue;
            bool pure = true;
            for (auto a : s.a_sets()) pure = pure && (a == 0 || a == full_sign_set(3));
            if (!pure) continue;
            SignMapTables bad1(3);
            const auto images = block_images(inst, s);
            bad1.corrupt_s1(images, shift_sign(SignMapTables(3).s1(images), 1, 3));
            if (check_lambda1(inst, bad1).empty()) o.fail("corrupted s1 went unnoticed");
            found = true;
        }
        if (!found) o.fail("no pure Sigma_1 vector for the s1 control");
    }
    if (o.ok)
        o.detail = std::to_string(runs) + " exhaustive sign-map checks empty over " + std::to_string(cases.size()) +
                   " instances x 2 variants; s1/s2/s3 corruptions detected";
    return o;
}

Outcome criterion_9() {
    Outcome o;
    ensure_colored();
    if (colored.size() < 2) add_projection_instance();
    int checked = 0;
    for (const auto& ci : colored) {
        for (auto variant : {Variant::Ecd, Variant::Alt}) {
            const ProofInstance inst(ci.factors, ci.p, variant);
            const auto d = dold_consequence(inst, ci.coloring);
            if (!d.holds)
                o.fail(ci.name + (variant == Variant::Ecd ? " (ecd)" : " (alt)") + ": max l = " +
                       std::to_string(d.max_ell) + " < eta = " + std::to_string(inst.eta()));
            ++checked;
        }
    }
    if (o.ok) o.detail = "max l(tau) >= min ecd and >= min (n - alt) for " + std::to_string(checked / 2) + " colourings";
    return o;
}

Outcome criterion_10() {
    Outcome o;
    const auto k5 = complete_uniform(5, 2);
    for (int c = 0; c <= 2; ++c) {
        const auto rep = reduction_check(k5, 2, 2, c);
        if (!rep.holds) o.fail("K5^(2), C = " + std::to_string(c));
    }
    oracle::Rng rng(1010);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = oracle::random_hypergraph(rng, 7, 9);
        const int r = rng.uniform(2, 3), c = rng.uniform(0, 2);
        if (!reduction_check(h, r, 2, c).holds) o.fail("random instance " + std::to_string(trial));
    }
    if (o.ok) o.detail = "K5^(2) with C = 0,1,2 and 20 random instances";
    return o;
}

Outcome criterion_11() {
    Outcome o;
    oracle::Rng rng(1111);
    int compared = 0;
    while (compared < 500) {
        std::vector<Hypergraph> factors;
        const int t = rng.uniform(1, 3);
        std::size_t size = 1;
        for (int j = 0; j < t; ++j) {
            factors.push_back(oracle::random_hypergraph(rng, 4, 4, 3));
            size *= factors.back().n();
        }
        if (size > 36) continue;
        const auto prod = product_minimal(factors);
        for (int k = 0; k < 5 && compared < 500; ++k, ++compared) {
            std::vector<int> colors(size);
            const int cc = rng.uniform(1, 3);
            for (auto& x : colors) x = rng.uniform(1, cc);
            const Coloring c(colors, cc);
            if (product_is_proper(factors, c) != is_proper(prod, c)) o.fail("disagreement");
        }
    }
    std::set<std::set<std::pair<int, int>>> got;
    for (const auto& cover : minimal_covers(3, 3)) got.insert({cover.begin(), cover.end()});
    if (got != oracle::minimal_covers(3, 3)) o.fail("minimal_covers(3,3) differs from the 2^9 oracle");
    if (o.ok) o.detail = "500 colourings agree; minimal_covers(3,3) = oracle (" + std::to_string(got.size()) + " covers)";
    return o;
}

Outcome criterion_compare() {
    Outcome o;
    const auto table = compare_bounds(default_pool());
    const CompareRow* star = nullptr;
    const CompareRow* k5 = nullptr;
    for (const auto& row : table.rows) {
        if (row.name == "star K1,3") star = &row;
        if (row.name == "K5^(2)") k5 = &row;
    }
    if (!star || star->cd != 0 || star->ecd != 1 || star->n_minus_alt != 1) o.fail("star row");
    if (!k5 || k5->cd != 3 || k5->ecd != 3 || k5->n_minus_alt != 3) o.fail("K5^(2) row");
    if (table.ecd_wins == 0) o.fail("no instance with the ecd bound strictly above the n-alt bound");
    if (table.alt_wins == 0) o.fail("no instance with the n-alt bound strictly above the ecd bound");
    if (o.ok)
        o.detail = "shipped pool: ecd bound wins on " + std::to_string(table.ecd_wins) + ", n-alt bound wins on " +
                   std::to_string(table.alt_wins) + " instance(s)";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1", "chi(KG(n,k)) = n - 2k + 2", 50, criterion_1},
        {"2", "chi(KG^r(n,k)) closed form at r = 3", 120, criterion_2},
        {"3", "chi(KG^2(H(7,2,3))) = ceil(ecd / (r-1)) = 4", 60, criterion_3},
        {"4", "defect ordering and oracle equivalence", 300, criterion_4},
        {"5", "ecd and n-alt lower bounds never exceed chi", 300, criterion_5},
        {"6", "product chromatic numbers and product bounds", 240, criterion_6},
        {"7", "colourful balanced complete witnesses", 1200, criterion_7},
        {"8", "sign-map checks and negative controls", 300, criterion_8},
        {"9", "max l(tau) over Sigma_2 reaches eta", 300, criterion_9},
        {"10", "reduction inequality", 300, criterion_10},
        {"11", "implicit product properness and minimal covers", 300, criterion_11},
        {"12", "each aggregate bound wins somewhere in the pool", 300, criterion_compare},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const double t = seconds_of([&] {
            try {
                o = c.run();
            } catch (const std::exception& e) {
                o.fail(std::string("exception: ") + e.what());
            }
        });
        if (t > c.budget_s) o.fail("took " + fmt(t) + " s, budget " + fmt(c.budget_s) + " s");
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " | " << o.detail << " | " << fmt(t)
                  << " s" << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
