#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kglab/chromatic.hpp"
#include "kglab/hypergraph.hpp"
#include "kglab/invariants.hpp"
#include "kglab/io.hpp"

namespace kglab {

inline constexpr std::string_view kCodeVersion = "0.1.0";

/// Builds a factor from a recipe string:
///   complete:N,K   hnka:N,K,A   kneser:N,K (ground system of KG(N,K))
///   star:N   edgeless:N   edges:N:1-2,2-3   file:PATH
/// The returned document's meta block records the recipe.
HypergraphDocument build_recipe(const std::string& recipe);

enum class Task { Invariants, Chromatic, Bounds, Witness, Prooflab, Reduction };
std::string to_string(Task t);
Task task_from_string(const std::string& s);

struct ExperimentSpec {
    std::string name;
    std::vector<std::string> factors;
    int r = 2;  // also the modulus p of the witness and prooflab tasks
    std::vector<Task> tasks;
    std::optional<int> limit;
    AltMode mode = AltMode::Exact;
    bool force = false;
    // reduction task: ecd^{rs}(H) <= r(s-1)C + ecd^r(T_{H,C,s}) for each C
    int s = 2;
    std::vector<int> reduction_c{0, 1, 2};
};

/// Accepts "p" as an alias of "r". Throws InvalidArgument on a malformed
/// spec, an empty factor list or an empty task list.
ExperimentSpec spec_from_json(const Json& j);
Json to_json(const ExperimentSpec& spec);
void validate(const ExperimentSpec& spec);

std::string sha256_hex(std::string_view data);
/// Digest of the canonical JSON of the factor list.
std::string hypergraph_digest(std::span<const Hypergraph> factors);

/// Append-only JSON-lines result cache. A file that does not parse is
/// discarded and rebuilt from scratch.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path path);

    const std::filesystem::path& path() const { return path_; }
    bool rebuilt() const { return rebuilt_; }
    std::size_t size() const { return entries_.size(); }

    static std::string make_key(const std::string& digest, const std::string& op, const Json& params);
    std::optional<Json> find(const std::string& key) const;
    void store(const std::string& key, const std::string& digest, const std::string& op, const Json& params,
               const Json& value);

    /// In-memory copy of the entries that appends new ones to shard_path.
    ResultCache shard(const std::filesystem::path& shard_path) const;
    /// Appends the entries added to a shard and removes its file.
    void absorb(const ResultCache& shard);

private:
    ResultCache() = default;
    void load();

    std::filesystem::path path_;
    std::map<std::string, Json> entries_;  // key -> full line
    std::vector<std::string> added_;
    bool rebuilt_ = false;
};

struct RunOptions {
    std::optional<std::filesystem::path> cache;
    bool strict = false;
    bool parallel = false;
    /// recompute every cache hit and compare the JSON byte for byte
    bool self_check = false;
};

struct TaskOutcome {
    enum class Status { Ok, Exceeded, Violation, Failed };
    Task task = Task::Invariants;
    Status status = Status::Ok;
    Json result;
    std::string message;
    int cache_hits = 0;
    int cache_misses = 0;
    double seconds = 0;
};
std::string to_string(TaskOutcome::Status s);

struct RunReport {
    Json header;
    std::vector<TaskOutcome> tasks;

    /// 0 iff no task failed and no violation was found; EXCEEDS counts only
    /// when strict.
    int exit_code(bool strict) const;
};

RunReport run(const ExperimentSpec& spec, const RunOptions& options = {});
Json to_json(const RunReport& report);
std::string format_report(const RunReport& report);
/// Writes report.json and report.txt into dir.
void write_report(const RunReport& report, const std::filesystem::path& dir);

struct ReductionReport {
    int r = 2;
    int s = 2;
    int color_count = 0;
    int lhs = 0;  // ecd^{rs}(H)
    int rhs = 0;  // r(s-1)C + ecd^r(T)
    std::size_t t_edges = 0;
    bool holds = false;
};

/// Throws Infeasible when T cannot be enumerated.
ReductionReport reduction_check(const Hypergraph& h, int r, int s, int color_count);
Json to_json(const ReductionReport& rep);

struct CompareRow {
    std::string name;
    int r = 2;
    int n = 0;
    int cd = 0;
    int ecd = 0;
    int n_minus_alt = 0;
    bool alt_exact = true;
    int ecd_bound = 0;
    int alt_bound = 0;
    std::optional<ChromaticValue> exact;
    /// ecd - (n - alt)
    int gap() const { return ecd - n_minus_alt; }
};

struct CompareTable {
    std::vector<CompareRow> rows;
    int ecd_wins = 0;  // ecd bound strictly above the alt bound (exact alt only)
    int alt_wins = 0;  // alt bound strictly above the ecd bound
};

/// The instances shipped with the tool: star, complete, H(n,k,a), a path
/// where n - alt wins and H(8,2,7) at r = 4 where ecd wins.
std::vector<ExperimentSpec> default_pool();

/// One row per pool entry; multi-factor entries report the factor minima.
/// With a cache every row is read from or stored under the "bounds" key.
CompareTable compare_bounds(const std::vector<ExperimentSpec>& pool, ResultCache* cache = nullptr);
Json to_json(const CompareTable& table);
std::string format_table(const CompareTable& table);

}  // namespace kglab
