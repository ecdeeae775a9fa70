#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kglab/hypergraph.hpp"

namespace kglab {

using Json = nlohmann::ordered_json;

/// A hypergraph plus the free-form metadata block that travels with it
/// (construction recipe, product factors, ...).
struct HypergraphDocument {
    Hypergraph graph;
    Json meta;  // null when absent
};

/// {"n": int, "edges": [[sorted 1-based ints]...]} in canonical edge order;
/// "labels" is added only when the vertex labels are not 1..n.
Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

Json to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

/// Compact single-line form terminated by '\n'. Loading and re-dumping a
/// file written by this function reproduces it byte for byte.
std::string dump_document(const HypergraphDocument& doc);
HypergraphDocument parse_document(const std::string& text);

HypergraphDocument load_hypergraph_file(const std::filesystem::path& path);
void save_hypergraph_file(const std::filesystem::path& path, const HypergraphDocument& doc);

Coloring load_coloring_file(const std::filesystem::path& path);
void save_coloring_file(const std::filesystem::path& path, const Coloring& c);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace kglab
