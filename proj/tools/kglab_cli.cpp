// kglab: command-line front end for the hypergraph lab.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kglab/chromatic.hpp"
#include "kglab/constructions.hpp"
#include "kglab/error.hpp"
#include "kglab/experiment.hpp"
#include "kglab/io.hpp"
#include "kglab/prooflab.hpp"

using namespace kglab;

namespace {

struct Common {
    std::vector<std::string> recipes;
    int r = 2;
    std::optional<int> limit;
    std::string mode = "exact";
    std::string cache;
    bool strict = false;
    bool parallel = false;
    bool force = false;
    bool json = false;
    bool self_check = false;
};

std::vector<Hypergraph> load(const std::vector<std::string>& recipes) {
    std::vector<Hypergraph> out;
    for (const auto& r : recipes) out.push_back(build_recipe(r).graph);
    return out;
}

RunOptions options_of(const Common& c) {
    RunOptions o;
    if (!c.cache.empty()) o.cache = c.cache;
    o.strict = c.strict;
    o.parallel = c.parallel;
    o.self_check = c.self_check;
    return o;
}

int run_single(const Common& c, Task task, int s = 2, std::vector<int> reduction_c = {}) {
    ExperimentSpec spec;
    spec.factors = c.recipes;
    spec.r = c.r;
    spec.tasks = {task};
    spec.limit = c.limit;
    spec.mode = c.mode == "heuristic" ? AltMode::Heuristic : AltMode::Exact;
    spec.force = c.force;
    spec.s = s;
    if (!reduction_c.empty()) spec.reduction_c = std::move(reduction_c);
    const auto report = run(spec, options_of(c));
    std::cout << (c.json ? to_json(report).dump(2) + "\n" : format_report(report));
    return report.exit_code(c.strict);
}

void add_factor_args(CLI::App* cmd, Common& c, bool modulus = false) {
    cmd->add_option("recipes", c.recipes, "factor recipes, e.g. complete:5,2 hnka:7,2,3 file:h.json")->required();
    if (modulus)
        cmd->add_option("--p,--r", c.r, "prime modulus p")->check(CLI::Range(2, 31));
    else
        cmd->add_option("--r", c.r, "uniformity r of the Kneser hypergraph")->check(CLI::Range(2, 64));
}

void add_run_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--limit", c.limit, "largest number of colours the exact solver tries")->check(CLI::PositiveNumber);
    cmd->add_option("--cache", c.cache, "JSON-lines result cache");
    cmd->add_flag("--strict", c.strict, "EXCEEDS results make the exit code nonzero");
    cmd->add_flag("--self-check", c.self_check, "recompute cache hits and compare");
    cmd->add_flag("--json", c.json, "print JSON instead of text");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kglab: Kneser hypergraphs, colourability defects and colourful subhypergraphs"};
    app.require_subcommand(1);
    Common c;

    auto* build = app.add_subcommand("build", "build a hypergraph; with --kneser, KG^r of it; several recipes give the minimal product of their KG^r");
    build->add_option("recipes", c.recipes, "recipes")->required();
    std::optional<int> kneser_r;
    std::string out_path;
    build->add_option("--kneser", kneser_r, "build KG^r of the recipe")->check(CLI::Range(2, 64));
    build->add_option("-o,--out", out_path, "write to a file instead of stdout");

    auto* inv = app.add_subcommand("invariants", "cd, ecd and alt of each factor");
    add_factor_args(inv, c);
    add_run_flags(inv, c);
    inv->add_option("--mode", c.mode, "alt search")->check(CLI::IsMember({"exact", "heuristic"}));

    auto* chrom = app.add_subcommand("chromatic", "exact chromatic number of KG^r(H_1) x ... x KG^r(H_t)");
    add_factor_args(chrom, c);
    add_run_flags(chrom, c);
    std::string coloring_out;
    chrom->add_option("--coloring-out", coloring_out, "save an optimal colouring");

    auto* bounds = app.add_subcommand("bounds", "lower bounds next to the exact chromatic number");
    add_factor_args(bounds, c);
    bounds->add_option("--limit", c.limit, "colour limit for the exact solver")->check(CLI::PositiveNumber);
    bounds->add_flag("--json", c.json, "print JSON instead of a table");

    auto* witness = app.add_subcommand("witness", "colourful balanced complete p-partite subhypergraph");
    add_factor_args(witness, c, true);
    add_run_flags(witness, c);
    witness->add_flag("--force", c.force, "allow a composite modulus (results are EXPERIMENTAL)");
    std::string coloring_in;
    witness->add_option("--coloring", coloring_in, "colouring of the product (default: an optimal one)");
    witness->add_option("-o,--out", out_path, "write the witness JSON to a file");

    auto* lab = app.add_subcommand("prooflab", "exhaustive checks of the sign maps and the Dold count");
    add_factor_args(lab, c, true);
    add_run_flags(lab, c);
    lab->add_flag("--force", c.force, "allow a composite modulus (results are EXPERIMENTAL)");

    auto* reduce = app.add_subcommand("reduce", "check ecd^{rs}(H) <= r(s-1)C + ecd^r(T_{H,C,s})");
    add_factor_args(reduce, c);
    add_run_flags(reduce, c);
    int s = 2;
    std::vector<int> cs{0, 1, 2};
    reduce->add_option("--s", s, "s")->check(CLI::Range(2, 16));
    reduce->add_option("--C", cs, "values of C")->check(CLI::NonNegativeNumber);

    auto* compare = app.add_subcommand("compare", "ecd against n - alt over a pool of instances");
    std::string pool_path;
    compare->add_option("--pool", pool_path, "JSON array of experiment specs (default: the shipped pool)");
    compare->add_option("--cache", c.cache, "JSON-lines result cache");
    compare->add_flag("--json", c.json, "print JSON instead of a table");

    auto* runcmd = app.add_subcommand("run", "run an experiment spec file");
    std::string spec_path, report_dir;
    runcmd->add_option("spec", spec_path, "spec JSON")->required()->check(CLI::ExistingFile);
    runcmd->add_option("--out", report_dir, "directory for report.json and report.txt");
    runcmd->add_option("--cache", c.cache, "JSON-lines result cache");
    runcmd->add_flag("--strict", c.strict, "EXCEEDS results make the exit code nonzero");
    runcmd->add_flag("--parallel", c.parallel, "run the tasks concurrently");
    runcmd->add_flag("--self-check", c.self_check, "recompute cache hits and compare");
    runcmd->add_flag("--json", c.json, "print JSON instead of text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            HypergraphDocument doc;
            if (c.recipes.size() == 1) {
                doc = build_recipe(c.recipes[0]);
                if (kneser_r) {
                    doc.graph = kneser(doc.graph, *kneser_r);
                    doc.meta["kneser_r"] = *kneser_r;
                }
            } else {
                const int r = kneser_r.value_or(2);
                std::vector<Hypergraph> kg;
                for (const auto& h : load(c.recipes)) kg.push_back(kneser(h, r));
                doc.graph = product_minimal(kg);
                doc.meta = {{"product", c.recipes}, {"kneser_r", r}, {"vertex_order", "row-major"}};
            }
            if (out_path.empty())
                std::cout << dump_document(doc);
            else
                save_hypergraph_file(out_path, doc);
            return 0;
        }
        if (*inv) return run_single(c, Task::Invariants);
        if (*chrom) {
            if (!coloring_out.empty()) {
                std::vector<Hypergraph> kg;
                for (const auto& h : load(c.recipes)) kg.push_back(kneser(h, c.r));
                const auto res = product_chromatic(kg, c.limit);
                if (res.coloring) save_coloring_file(coloring_out, *res.coloring);
            }
            return run_single(c, Task::Chromatic);
        }
        if (*bounds) {
            const auto rep = bound_report(load(c.recipes), c.r, true, c.limit);
            std::cout << (c.json ? to_json(rep).dump(2) + "\n" : format_table(rep));
            return 0;
        }
        if (*witness) {
            if (coloring_in.empty() && out_path.empty()) return run_single(c, Task::Witness);
            const auto factors = load(c.recipes);
            const ProofInstance by_ecd(factors, c.r, Variant::Ecd, c.force);
            const ProofInstance by_alt(factors, c.r, Variant::Alt, c.force);
            const auto& inst = by_alt.eta() > by_ecd.eta() ? by_alt : by_ecd;
            Coloring col;
            if (!coloring_in.empty()) {
                col = load_coloring_file(coloring_in);
                if (col.size() != inst.product_size() || !product_is_proper(inst.kneser_factors(), col))
                    throw LabError(ErrorCode::PreconditionViolated, "colouring is not proper on the product");
            } else {
                const auto res = product_chromatic(inst.kneser_factors(), c.limit);
                if (!res.coloring) throw LabError(ErrorCode::CapExceeded, "no colouring within the limit");
                col = *res.coloring;
            }
            const auto search = find_witness(inst, col, inst.eta());
            Json j;
            j["eta"] = inst.eta();
            j["found"] = search.found;
            j["max_ell"] = search.max_ell;
            j["witness"] = search.found ? to_json(search.witness, inst) : Json(nullptr);
            if (out_path.empty())
                std::cout << j.dump(2) << "\n";
            else
                write_text_file(out_path, j.dump(2) + "\n");
            if (!search.found) std::cerr << "NOT_FOUND: max l(tau) = " << search.max_ell << " < eta = " << inst.eta() << "\n";
            return search.found || inst.experimental() ? 0 : 1;
        }
        if (*lab) return run_single(c, Task::Prooflab);
        if (*reduce) return run_single(c, Task::Reduction, s, cs);
        if (*compare) {
            std::vector<ExperimentSpec> pool;
            if (pool_path.empty()) {
                pool = default_pool();
            } else {
                const auto j = Json::parse(read_text_file(pool_path));
                for (const auto& e : j) pool.push_back(spec_from_json(e));
            }
            std::optional<ResultCache> cache;
            if (!c.cache.empty()) cache.emplace(c.cache);
            const auto table = compare_bounds(pool, cache ? &*cache : nullptr);
            std::cout << (c.json ? to_json(table).dump(2) + "\n" : format_table(table));
            return 0;
        }
        if (*runcmd) {
            const auto spec = spec_from_json(Json::parse(read_text_file(spec_path)));
            const auto report = run(spec, options_of(c));
            if (!report_dir.empty()) write_report(report, report_dir);
            std::cout << (c.json ? to_json(report).dump(2) + "\n" : format_report(report));
            return report.exit_code(c.strict);
        }
    } catch (const LabError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Parse ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error [Parse]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
