#include "kglab/experiment.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>

#include "kglab/constructions.hpp"
#include "kglab/error.hpp"
#include "kglab/prooflab.hpp"

namespace kglab {

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& recipe) {
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        throw LabError(ErrorCode::InvalidArgument, "bad integer '" + s + "' in recipe '" + recipe + "'");
    return v;
}

std::vector<int> parse_ints(const std::string& s, const std::string& recipe, std::size_t count) {
    std::vector<int> out;
    for (const auto& part : split_on(s, ',')) out.push_back(parse_int(part, recipe));
    if (out.size() != count)
        throw LabError(ErrorCode::InvalidArgument,
                       "recipe '" + recipe + "' needs " + std::to_string(count) + " parameters");
    return out;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Json chi_value(const ChromaticValue& v) {
    if (v.is_finite()) return v.value();
    return v.to_string();
}

std::optional<ChromaticValue> chi_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    if (j.is_number_integer()) return ChromaticValue::finite(j.get<int>());
    const auto s = j.get<std::string>();
    if (s == "INFINITE") return ChromaticValue::infinite();
    if (s.rfind("EXCEEDS(", 0) == 0) return ChromaticValue::exceeds(std::stoi(s.substr(8)));
    throw LabError(ErrorCode::Parse, "bad chromatic value '" + s + "'");
}

Json limit_json(const std::optional<int>& limit) { return limit ? Json(*limit) : Json(nullptr); }

std::string mode_name(AltMode m) { return m == AltMode::Exact ? "exact" : "heuristic"; }

struct CacheMismatch {
    std::string op;
};

// Shared plumbing of one task: cache lookup, self-check and hit counting.
struct TaskContext {
    ResultCache* cache = nullptr;
    bool self_check = false;
    TaskOutcome* out = nullptr;

    Json cached(const std::string& digest, const std::string& op, const Json& params,
                const std::function<Json()>& compute) {
        if (cache == nullptr) {
            ++out->cache_misses;
            return compute();
        }
        const auto key = ResultCache::make_key(digest, op, params);
        if (auto hit = cache->find(key)) {
            ++out->cache_hits;
            if (self_check && compute().dump() != hit->dump()) throw CacheMismatch{op};
            return *hit;
        }
        ++out->cache_misses;
        auto value = compute();
        cache->store(key, digest, op, params, value);
        return value;
    }
};

struct Loaded {
    std::vector<Hypergraph> factors;
    std::vector<std::string> digests;
    std::string digest;
};

Loaded load_factors(const ExperimentSpec& spec) {
    Loaded l;
    for (const auto& recipe : spec.factors) {
        l.factors.push_back(build_recipe(recipe).graph);
        l.digests.push_back(hypergraph_digest(std::span<const Hypergraph>(&l.factors.back(), 1)));
    }
    l.digest = hypergraph_digest(l.factors);
    return l;
}

Json chromatic_value(const std::vector<Hypergraph>& factors, int r, std::optional<int> limit) {
    std::vector<Hypergraph> kg;
    for (const auto& f : factors) kg.push_back(kneser(f, r));
    const auto res = product_chromatic(kg, limit);
    Json j;
    j["chi"] = chi_value(res.value);
    j["coloring"] = res.coloring ? to_json(*res.coloring) : Json(nullptr);
    return j;
}

Json violations_json(const std::vector<Violation>& vs) {
    constexpr std::size_t kShown = 10;
    Json j;
    j["count"] = vs.size();
    j["first"] = to_json(std::vector<Violation>(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(
                                                                     std::min(vs.size(), kShown))));
    return j;
}

std::string variant_name(Variant v) { return v == Variant::Ecd ? "ecd" : "alt"; }

void run_task(Task task, const ExperimentSpec& spec, const Loaded& l, TaskContext& ctx) {
    auto& out = *ctx.out;
    const int r = spec.r;
    switch (task) {
    case Task::Invariants: {
        Json rows = Json::array();
        const Json params{{"r", r}, {"mode", mode_name(spec.mode)}};
        for (std::size_t j = 0; j < l.factors.size(); ++j) {
            auto v = ctx.cached(l.digests[j], "invariants", params, [&] {
                const auto& h = l.factors[j];
                const auto alt = alt_min(h, r, spec.mode);
                Json o;
                o["n"] = h.n();
                o["cd"] = cd(h, r).value;
                o["ecd"] = ecd(h, r).value;
                o["alt"] = alt.value;
                o["alt_exact"] = !alt.upper_bound;
                o["n_minus_alt"] = static_cast<int>(h.n()) - alt.value;
                return o;
            });
            Json row{{"factor", spec.factors[j]}};
            row.update(v);
            rows.push_back(row);
        }
        out.result = rows;
        break;
    }
    case Task::Chromatic: {
        const Json params{{"r", r}, {"limit", limit_json(spec.limit)}};
        out.result = ctx.cached(l.digest, "chromatic", params, [&] { return chromatic_value(l.factors, r, spec.limit); });
        if (!chi_from_json(out.result["chi"])->is_finite()) {
            out.status = TaskOutcome::Status::Exceeded;
            out.message = "chi = " + chi_from_json(out.result["chi"])->to_string();
        }
        break;
    }
    case Task::Bounds: {
        const Json params{{"r", r}, {"limit", limit_json(spec.limit)}};
        out.result = ctx.cached(l.digest, "bounds", params,
                                [&] { return to_json(bound_report(l.factors, r, true, spec.limit)); });
        const auto exact = chi_from_json(out.result["exact_chi"]);
        if (exact && exact->kind() == ChromaticValue::Kind::Exceeds) {
            out.status = TaskOutcome::Status::Exceeded;
            out.message = "exact chi " + exact->to_string();
        } else if (exact && exact->is_finite()) {
            const int chi = exact->value();
            if (out.result["product_ecd_bound"].get<int>() > chi || out.result["product_alt_bound"].get<int>() > chi) {
                out.status = TaskOutcome::Status::Violation;
                out.message = "a lower bound exceeds the exact chromatic number";
            }
        }
        break;
    }
    case Task::Witness: {
        const int p = r;
        if (!is_prime(p) && !spec.force)
            throw LabError(ErrorCode::NotPrime, "witness search needs a prime modulus (use --force to experiment)");
        const Json cparams{{"r", p}, {"limit", limit_json(spec.limit)}};
        const auto chi =
            ctx.cached(l.digest, "chromatic", cparams, [&] { return chromatic_value(l.factors, p, spec.limit); });
        if (chi["coloring"].is_null()) {
            out.status = TaskOutcome::Status::Exceeded;
            out.message = "no colouring of the product within the limit (chi = " + chi["chi"].dump() + ")";
            out.result = chi;
            break;
        }
        const Json params{{"p", p}, {"limit", limit_json(spec.limit)}, {"force", spec.force}};
        out.result = ctx.cached(l.digest, "witness", params, [&] {
            const auto c = coloring_from_json(chi["coloring"]);
            const ProofInstance by_ecd(l.factors, p, Variant::Ecd, spec.force);
            const ProofInstance by_alt(l.factors, p, Variant::Alt, spec.force);
            const auto& inst = by_alt.eta() > by_ecd.eta() ? by_alt : by_ecd;
            const auto search = find_witness(inst, c, inst.eta());
            Json o;
            o["p"] = p;
            o["eta"] = inst.eta();
            o["eta_ecd"] = by_ecd.eta();
            o["eta_alt"] = by_alt.eta();
            o["variant"] = variant_name(inst.variant());
            o["colors"] = c.color_count();
            o["found"] = search.found;
            o["max_ell"] = search.max_ell;
            o["witness"] = search.found ? to_json(search.witness, inst) : Json(nullptr);
            o["valid"] = search.found && witness_is_valid(inst, search.witness, c);
            o["status"] = inst.experimental() ? "EXPERIMENTAL" : "OK";
            return o;
        });
        const bool experimental = out.result["status"] == "EXPERIMENTAL";
        if (!experimental && (!out.result["found"].get<bool>() || !out.result["valid"].get<bool>())) {
            out.status = TaskOutcome::Status::Violation;
            out.message = "no valid witness with eta vertices";
        }
        break;
    }
    case Task::Prooflab: {
        const int p = r;
        if (!is_prime(p) && !spec.force)
            throw LabError(ErrorCode::NotPrime, "prooflab needs a prime modulus (use --force to experiment)");
        const Json cparams{{"r", p}, {"limit", limit_json(spec.limit)}};
        const auto chi =
            ctx.cached(l.digest, "chromatic", cparams, [&] { return chromatic_value(l.factors, p, spec.limit); });
        const Json params{{"p", p}, {"limit", limit_json(spec.limit)}, {"force", spec.force}};
        out.result = ctx.cached(l.digest, "prooflab", params, [&] {
            Json o;
            o["p"] = p;
            for (auto variant : {Variant::Ecd, Variant::Alt}) {
                const ProofInstance inst(l.factors, p, variant, spec.force);
                const SignMapTables tables(p);
                Json v;
                v["eta"] = inst.eta();
                v["alpha"] = inst.alpha();
                v["lambda1"] = violations_json(check_lambda1(inst, tables));
                v["range"] = violations_json(check_lambda1_range(inst, tables));
                if (!chi["coloring"].is_null()) {
                    const auto c = coloring_from_json(chi["coloring"]);
                    v["lambda2"] = violations_json(check_lambda2(inst, c, tables));
                    v["combined"] = violations_json(check_combined(inst, c, tables));
                    const auto d = dold_consequence(inst, c);
                    v["dold"] = {{"sigma2_empty", d.sigma2_empty}, {"max_ell", d.max_ell}, {"m", d.m},
                                 {"n", d.n},  {"holds", d.holds}};
                }
                o[variant_name(variant)] = v;
            }
            o["status"] = is_prime(p) ? "OK" : "EXPERIMENTAL";
            return o;
        });
        std::vector<std::string> bad;
        for (const auto* name : {"ecd", "alt"}) {
            const auto& v = out.result[name];
            for (const auto* check : {"lambda1", "range", "lambda2", "combined"})
                if (v.contains(check) && v[check]["count"].get<std::size_t>() > 0)
                    bad.push_back(std::string(name) + "." + check);
            if (v.contains("dold") && !v["dold"]["holds"].get<bool>()) bad.push_back(std::string(name) + ".dold");
        }
        if (chi["coloring"].is_null()) {
            out.status = TaskOutcome::Status::Exceeded;
            out.message = "no colouring within the limit; colouring-dependent checks skipped";
        }
        if (!bad.empty() && out.result["status"] == "OK") {
            out.status = TaskOutcome::Status::Violation;
            out.message.clear();
            for (const auto& b : bad) out.message += (out.message.empty() ? "" : ", ") + b;
        }
        break;
    }
    case Task::Reduction: {
        Json rows = Json::array();
        std::vector<std::string> failed;
        for (std::size_t j = 0; j < l.factors.size(); ++j)
            for (int c : spec.reduction_c) {
                const Json params{{"r", r}, {"s", spec.s}, {"C", c}};
                auto v = ctx.cached(l.digests[j], "reduction", params,
                                    [&] { return to_json(reduction_check(l.factors[j], r, spec.s, c)); });
                if (!v["holds"].get<bool>()) failed.push_back(spec.factors[j] + " C=" + std::to_string(c));
                Json row{{"factor", spec.factors[j]}};
                row.update(v);
                rows.push_back(row);
            }
        out.result = rows;
        if (!failed.empty()) {
            out.status = TaskOutcome::Status::Violation;
            out.message = "inequality fails for";
            for (const auto& f : failed) out.message += " [" + f + "]";
        }
        break;
    }
    }
}

TaskOutcome execute(Task task, const ExperimentSpec& spec, const Loaded& l, ResultCache* cache, bool self_check) {
    TaskOutcome out;
    out.task = task;
    TaskContext ctx{cache, self_check, &out};
    const auto start = std::chrono::steady_clock::now();
    try {
        run_task(task, spec, l, ctx);
    } catch (const CacheMismatch& m) {
        out.status = TaskOutcome::Status::Violation;
        out.message = "cache entry for '" + m.op + "' differs from recomputation";
    } catch (const LabError& e) {
        const bool cap = e.code() == ErrorCode::CapExceeded || e.code() == ErrorCode::Infeasible;
        out.status = cap ? TaskOutcome::Status::Exceeded : TaskOutcome::Status::Failed;
        out.message = e.what();
    } catch (const std::exception& e) {
        out.status = TaskOutcome::Status::Failed;
        out.message = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

HypergraphDocument build_recipe(const std::string& recipe) {
    const auto colon = recipe.find(':');
    if (colon == std::string::npos) throw LabError(ErrorCode::InvalidArgument, "bad recipe '" + recipe + "'");
    const auto kind = recipe.substr(0, colon);
    const auto rest = recipe.substr(colon + 1);
    HypergraphDocument doc;
    if (kind == "file") {
        doc = load_hypergraph_file(rest);
    } else if (kind == "complete" || kind == "kneser") {
        const auto a = parse_ints(rest, recipe, 2);
        doc.graph = complete_uniform(a[0], a[1]);
    } else if (kind == "hnka") {
        const auto a = parse_ints(rest, recipe, 3);
        doc.graph = hnka(a[0], a[1], a[2]);
    } else if (kind == "star" || kind == "edgeless") {
        const int n = parse_int(rest, recipe);
        if (n < 1) throw LabError(ErrorCode::InvalidArgument, "recipe '" + recipe + "' needs n >= 1");
        std::vector<std::vector<int>> edges;
        if (kind == "star")
            for (int i = 1; i < n; ++i) edges.push_back({i, n});
        doc.graph = Hypergraph::from_lists(static_cast<std::size_t>(n), edges);
    } else if (kind == "edges") {
        const auto parts = split_on(rest, ':');
        if (parts.size() != 2) throw LabError(ErrorCode::InvalidArgument, "recipe '" + recipe + "' is edges:N:1-2,...");
        const int n = parse_int(parts[0], recipe);
        std::vector<std::vector<int>> edges;
        if (!parts[1].empty())
            for (const auto& e : split_on(parts[1], ',')) {
                std::vector<int> verts;
                for (const auto& v : split_on(e, '-')) verts.push_back(parse_int(v, recipe));
                edges.push_back(verts);
            }
        if (n < 0) throw LabError(ErrorCode::InvalidArgument, "recipe '" + recipe + "' needs n >= 0");
        doc.graph = Hypergraph::from_lists(static_cast<std::size_t>(n), edges);
    } else {
        throw LabError(ErrorCode::InvalidArgument, "unknown recipe kind '" + kind + "'");
    }
    Json meta = doc.meta.is_object() ? doc.meta : Json::object();
    meta["recipe"] = recipe;
    doc.meta = meta;
    return doc;
}

std::string to_string(Task t) {
    switch (t) {
    case Task::Invariants: return "invariants";
    case Task::Chromatic: return "chromatic";
    case Task::Bounds: return "bounds";
    case Task::Witness: return "witness";
    case Task::Prooflab: return "prooflab";
    case Task::Reduction: return "reduction";
    }
    return "?";
}

Task task_from_string(const std::string& s) {
    for (auto t : {Task::Invariants, Task::Chromatic, Task::Bounds, Task::Witness, Task::Prooflab, Task::Reduction})
        if (to_string(t) == s) return t;
    throw LabError(ErrorCode::InvalidArgument, "unknown task '" + s + "'");
}

ExperimentSpec spec_from_json(const Json& j) {
    ExperimentSpec spec;
    try {
        if (!j.is_object()) throw LabError(ErrorCode::InvalidArgument, "spec must be a JSON object");
        spec.name = j.value("name", "");
        spec.factors = j.at("factors").get<std::vector<std::string>>();
        if (j.contains("p")) spec.r = j.at("p").get<int>();
        if (j.contains("r")) spec.r = j.at("r").get<int>();
        for (const auto& t : j.at("tasks")) spec.tasks.push_back(task_from_string(t.get<std::string>()));
        if (j.contains("limit") && !j.at("limit").is_null()) spec.limit = j.at("limit").get<int>();
        const auto mode = j.value("mode", "exact");
        if (mode != "exact" && mode != "heuristic") throw LabError(ErrorCode::InvalidArgument, "mode must be exact or heuristic");
        spec.mode = mode == "exact" ? AltMode::Exact : AltMode::Heuristic;
        spec.force = j.value("force", false);
        spec.s = j.value("s", 2);
        if (j.contains("C")) spec.reduction_c = j.at("C").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw LabError(ErrorCode::InvalidArgument, std::string("spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

Json to_json(const ExperimentSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["factors"] = spec.factors;
    j["r"] = spec.r;
    Json tasks = Json::array();
    for (auto t : spec.tasks) tasks.push_back(to_string(t));
    j["tasks"] = tasks;
    j["limit"] = limit_json(spec.limit);
    j["mode"] = mode_name(spec.mode);
    j["force"] = spec.force;
    j["s"] = spec.s;
    j["C"] = spec.reduction_c;
    return j;
}

void validate(const ExperimentSpec& spec) {
    if (spec.factors.empty()) throw LabError(ErrorCode::InvalidArgument, "spec has no factors");
    if (spec.tasks.empty()) throw LabError(ErrorCode::InvalidArgument, "spec has an empty task list");
    if (spec.r < 2) throw LabError(ErrorCode::InvalidArgument, "r must be >= 2");
    if (spec.s < 2) throw LabError(ErrorCode::InvalidArgument, "s must be >= 2");
    if (spec.limit && *spec.limit < 1) throw LabError(ErrorCode::InvalidArgument, "limit must be >= 1");
    for (const auto& recipe : spec.factors) build_recipe(recipe);
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw LabError(ErrorCode::InvalidArgument, "sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string hypergraph_digest(std::span<const Hypergraph> factors) {
    Json j = Json::array();
    for (const auto& f : factors) j.push_back(to_json(f));
    return sha256_hex(j.dump());
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

void ResultCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = Json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("value") ||
            !j["key"].is_string()) {
            rebuilt_ = true;
            break;
        }
        entries_[j["key"].get<std::string>()] = j;
    }
    if (rebuilt_) {
        entries_.clear();
        std::ofstream(path_, std::ios::trunc);
    }
}

std::string ResultCache::make_key(const std::string& digest, const std::string& op, const Json& params) {
    return sha256_hex(digest + "|" + op + "|" + params.dump());
}

std::optional<Json> ResultCache::find(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.at("value");
}

void ResultCache::store(const std::string& key, const std::string& digest, const std::string& op, const Json& params,
                        const Json& value) {
    Json line;
    line["key"] = key;
    line["digest"] = digest;
    line["op"] = op;
    line["params"] = params;
    line["value"] = value;
    line["created"] = utc_now();
    line["code_version"] = kCodeVersion;
    entries_[key] = line;
    added_.push_back(key);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw LabError(ErrorCode::InvalidArgument, "cannot write cache " + path_.string());
    out << line.dump() << "\n";
}

ResultCache ResultCache::shard(const std::filesystem::path& shard_path) const {
    ResultCache c;
    c.path_ = shard_path;
    c.entries_ = entries_;
    std::filesystem::remove(shard_path);
    return c;
}

void ResultCache::absorb(const ResultCache& shard) {
    std::ofstream out(path_, std::ios::app);
    for (const auto& key : shard.added_) {
        if (entries_.contains(key)) continue;
        const auto& line = shard.entries_.at(key);
        entries_[key] = line;
        added_.push_back(key);
        out << line.dump() << "\n";
    }
    std::filesystem::remove(shard.path_);
}

std::string to_string(TaskOutcome::Status s) {
    switch (s) {
    case TaskOutcome::Status::Ok: return "OK";
    case TaskOutcome::Status::Exceeded: return "EXCEEDS";
    case TaskOutcome::Status::Violation: return "VIOLATION";
    case TaskOutcome::Status::Failed: return "FAILED";
    }
    return "?";
}

int RunReport::exit_code(bool strict) const {
    int code = 0;
    for (const auto& t : tasks) {
        if (t.status == TaskOutcome::Status::Failed || t.status == TaskOutcome::Status::Violation) code = 1;
        if (t.status == TaskOutcome::Status::Exceeded && strict) code = 1;
    }
    return code;
}

RunReport run(const ExperimentSpec& spec, const RunOptions& options) {
    validate(spec);
    const auto started = utc_now();
    const auto start = std::chrono::steady_clock::now();
    const auto loaded = load_factors(spec);

    std::optional<ResultCache> cache;
    if (options.cache) cache.emplace(*options.cache);

    RunReport report;
    if (options.parallel && spec.tasks.size() > 1) {
        std::vector<std::optional<ResultCache>> shards(spec.tasks.size());
        std::vector<std::future<TaskOutcome>> futures;
        for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
            if (cache) shards[i] = cache->shard(cache->path().string() + ".shard" + std::to_string(i));
            ResultCache* c = shards[i] ? &*shards[i] : nullptr;
            futures.push_back(std::async(std::launch::async, [&, i, c] {
                return execute(spec.tasks[i], spec, loaded, c, options.self_check);
            }));
        }
        for (auto& f : futures) report.tasks.push_back(f.get());
        if (cache)
            for (auto& s : shards) cache->absorb(*s);
    } else {
        for (auto task : spec.tasks)
            report.tasks.push_back(execute(task, spec, loaded, cache ? &*cache : nullptr, options.self_check));
    }

    Json factors = Json::array();
    for (std::size_t j = 0; j < loaded.factors.size(); ++j)
        factors.push_back({{"recipe", spec.factors[j]},
                           {"digest", loaded.digests[j]},
                           {"n", loaded.factors[j].n()},
                           {"edges", loaded.factors[j].edge_count()}});
    Json& h = report.header;
    h["tool"] = "kglab";
    h["code_version"] = kCodeVersion;
    h["spec"] = to_json(spec);
    h["factors"] = factors;
    h["digest"] = loaded.digest;
    h["cache"] = options.cache ? Json(options.cache->string()) : Json(nullptr);
    h["cache_rebuilt"] = cache && cache->rebuilt();
    h["parallel"] = options.parallel;
    h["started"] = started;
    h["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Json to_json(const RunReport& report) {
    Json j;
    j["header"] = report.header;
    Json tasks = Json::array();
    for (const auto& t : report.tasks) {
        Json o;
        o["task"] = to_string(t.task);
        o["status"] = to_string(t.status);
        o["message"] = t.message;
        o["cache_hits"] = t.cache_hits;
        o["cache_misses"] = t.cache_misses;
        o["seconds"] = t.seconds;
        o["result"] = t.result;
        tasks.push_back(o);
    }
    j["tasks"] = tasks;
    return j;
}

std::string format_report(const RunReport& report) {
    const auto& h = report.header;
    std::ostringstream os;
    os << "kglab " << h["code_version"].get<std::string>() << "  started " << h["started"].get<std::string>()
       << "  wall " << std::fixed << std::setprecision(2) << h["wall_seconds"].get<double>() << " s\n";
    const auto& spec = h["spec"];
    if (!spec["name"].get<std::string>().empty()) os << "spec     " << spec["name"].get<std::string>() << "\n";
    os << "params   r=" << spec["r"] << " limit=" << spec["limit"] << " mode=" << spec["mode"].get<std::string>()
       << (spec["force"].get<bool>() ? " force" : "") << "\n";
    for (const auto& f : h["factors"])
        os << "factor   " << std::left << std::setw(24) << f["recipe"].get<std::string>() << " n=" << f["n"]
           << " edges=" << f["edges"] << " sha256=" << f["digest"].get<std::string>().substr(0, 16) << "\n";
    if (!h["cache"].is_null())
        os << "cache    " << h["cache"].get<std::string>() << (h["cache_rebuilt"].get<bool>() ? " (rebuilt)" : "")
           << "\n";
    os << "\n";
    for (const auto& t : report.tasks) {
        os << "[" << to_string(t.status) << "] " << to_string(t.task) << "  (" << std::setprecision(3) << t.seconds
           << " s, cache " << t.cache_hits << " hit / " << t.cache_misses << " miss)\n";
        if (!t.message.empty()) os << "  " << t.message << "\n";
        if (!t.result.is_null()) {
            std::istringstream lines(t.result.dump(2));
            std::string line;
            while (std::getline(lines, line)) os << "  " << line << "\n";
        }
    }
    return os.str();
}

void write_report(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "report.json", to_json(report).dump(2) + "\n");
    write_text_file(dir / "report.txt", format_report(report));
}

ReductionReport reduction_check(const Hypergraph& h, int r, int s, int color_count) {
    if (r < 2 || s < 2 || color_count < 0)
        throw LabError(ErrorCode::InvalidArgument, "reduction needs r >= 2, s >= 2, C >= 0");
    ReductionReport rep;
    rep.r = r;
    rep.s = s;
    rep.color_count = color_count;
    rep.lhs = ecd(h, r * s).value;
    const auto t = t_hypergraph(h, color_count, s);
    rep.t_edges = t.edge_count();
    rep.rhs = r * (s - 1) * color_count + ecd(t, r).value;
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

Json to_json(const ReductionReport& rep) {
    Json j;
    j["r"] = rep.r;
    j["s"] = rep.s;
    j["C"] = rep.color_count;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["t_edges"] = rep.t_edges;
    j["holds"] = rep.holds;
    return j;
}

std::vector<ExperimentSpec> default_pool() {
    auto entry = [](std::string name, std::vector<std::string> factors, int r) {
        ExperimentSpec s;
        s.name = std::move(name);
        s.factors = std::move(factors);
        s.r = r;
        s.tasks = {Task::Bounds};
        s.limit = 6;
        return s;
    };
    return {
        entry("star K1,3", {"star:4"}, 2),
        entry("K5^(2)", {"complete:5,2"}, 2),
        entry("K6^(2)", {"complete:6,2"}, 2),
        entry("K7^(2), r=3", {"complete:7,2"}, 3),
        entry("H(7,2,3)", {"hnka:7,2,3"}, 2),
        entry("H(8,2,7), r=4", {"hnka:8,2,7"}, 4),
        entry("path P3", {"edges:3:1-2,2-3"}, 2),
        entry("edgeless 4", {"edgeless:4"}, 2),
        entry("K5^(2) x K5^(2)", {"complete:5,2", "complete:5,2"}, 2),
    };
}

CompareTable compare_bounds(const std::vector<ExperimentSpec>& pool, ResultCache* cache) {
    if (pool.empty()) throw LabError(ErrorCode::InvalidArgument, "empty pool");
    CompareTable table;
    for (const auto& spec : pool) {
        validate(spec);
        const auto l = load_factors(spec);
        TaskOutcome sink;
        TaskContext ctx{cache, false, &sink};
        const Json params{{"r", spec.r}, {"limit", limit_json(spec.limit)}};
        const auto b = ctx.cached(l.digest, "bounds", params,
                                  [&] { return to_json(bound_report(l.factors, spec.r, true, spec.limit)); });
        CompareRow row;
        row.name = spec.name.empty() ? spec.factors.front() : spec.name;
        row.r = spec.r;
        bool first = true;
        for (const auto& f : b["factors"]) {
            auto lower = [&](int& field, const char* key) {
                field = first ? f[key].get<int>() : std::min(field, f[key].get<int>());
            };
            lower(row.n, "n");
            lower(row.cd, "cd");
            lower(row.ecd, "ecd");
            lower(row.n_minus_alt, "n_minus_alt");
            row.alt_exact = row.alt_exact && f["alt_exact"].get<bool>();
            first = false;
        }
        row.ecd_bound = b["product_ecd_bound"].get<int>();
        row.alt_bound = b["product_alt_bound"].get<int>();
        row.exact = chi_from_json(b["exact_chi"]);
        if (row.ecd_bound > row.alt_bound && row.alt_exact) ++table.ecd_wins;
        if (row.alt_bound > row.ecd_bound) ++table.alt_wins;
        table.rows.push_back(row);
    }
    return table;
}

Json to_json(const CompareTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        Json o;
        o["name"] = r.name;
        o["r"] = r.r;
        o["n"] = r.n;
        o["cd"] = r.cd;
        o["ecd"] = r.ecd;
        o["n_minus_alt"] = r.n_minus_alt;
        o["alt_exact"] = r.alt_exact;
        o["ecd_bound"] = r.ecd_bound;
        o["alt_bound"] = r.alt_bound;
        o["exact_chi"] = r.exact ? chi_value(*r.exact) : Json(nullptr);
        o["gap"] = r.gap();
        rows.push_back(o);
    }
    Json j;
    j["rows"] = rows;
    j["ecd_wins"] = table.ecd_wins;
    j["alt_wins"] = table.alt_wins;
    return j;
}

std::string format_table(const CompareTable& table) {
    std::size_t width = 8;
    for (const auto& r : table.rows) width = std::max(width, r.name.size() + 2);
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "instance" << std::right << std::setw(3) << "r"
       << std::setw(4) << "n" << std::setw(5) << "cd" << std::setw(5) << "ecd" << std::setw(7) << "n-alt"
       << std::setw(8) << "ecd bd" << std::setw(8) << "alt bd" << std::setw(12) << "chi" << std::setw(6) << "gap"
       << "\n";
    for (const auto& r : table.rows) {
        os << std::left << std::setw(static_cast<int>(width)) << r.name << std::right << std::setw(3) << r.r
           << std::setw(4) << r.n << std::setw(5) << r.cd << std::setw(5) << r.ecd << std::setw(7)
           << (std::to_string(r.n_minus_alt) + (r.alt_exact ? "" : "*")) << std::setw(8) << r.ecd_bound
           << std::setw(8) << r.alt_bound << std::setw(12) << (r.exact ? r.exact->to_string() : "-")
           << std::setw(6) << std::showpos << r.gap() << std::noshowpos << "\n";
    }
    os << "\necd bound above the n-alt bound: " << table.ecd_wins << " instance(s)\n";
    os << "n-alt bound above the ecd bound: " << table.alt_wins << " instance(s)\n";
    if (table.ecd_wins == 0 || table.alt_wins == 0)
        os << "the pool has no strict instance in one direction\n";
    os << "(* = alt from the heuristic search, an upper bound on alt)\n";
    return os.str();
}

}  // namespace kglab
