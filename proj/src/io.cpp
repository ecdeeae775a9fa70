#include "kglab/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "kglab/error.hpp"

namespace kglab {

Json to_json(const Hypergraph& h) {
    Json j;
    j["n"] = h.n();
    j["edges"] = h.edge_lists();
    std::vector<int> identity(h.n());
    std::iota(identity.begin(), identity.end(), 1);
    if (h.labels() != identity) j["labels"] = h.labels();
    return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        auto lists = j.at("edges").get<std::vector<std::vector<int>>>();
        auto h = Hypergraph::from_lists(n, lists);
        if (h.edge_count() != lists.size()) throw LabError(ErrorCode::Parse, "duplicate hyperedges");
        if (j.contains("labels")) return Hypergraph(h.n(), h.edges(), j.at("labels").get<std::vector<int>>());
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw LabError(ErrorCode::Parse, std::string("hypergraph JSON: ") + e.what());
    }
}

Json to_json(const Coloring& c) {
    Json j;
    j["colors"] = c.colors();
    j["color_count"] = c.color_count();
    return j;
}

Coloring coloring_from_json(const Json& j) {
    try {
        return Coloring(j.at("colors").get<std::vector<int>>(), j.at("color_count").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw LabError(ErrorCode::Parse, std::string("colouring JSON: ") + e.what());
    }
}

std::string dump_document(const HypergraphDocument& doc) {
    auto j = to_json(doc.graph);
    if (!doc.meta.is_null()) j["meta"] = doc.meta;
    return j.dump() + "\n";
}

HypergraphDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LabError(ErrorCode::Parse, e.what());
    }
    HypergraphDocument doc{hypergraph_from_json(j), nullptr};
    if (j.contains("meta")) doc.meta = j["meta"];
    return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LabError(ErrorCode::InvalidArgument, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LabError(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
}

HypergraphDocument load_hypergraph_file(const std::filesystem::path& path) {
    return parse_document(read_text_file(path));
}

void save_hypergraph_file(const std::filesystem::path& path, const HypergraphDocument& doc) {
    write_text_file(path, dump_document(doc));
}

Coloring load_coloring_file(const std::filesystem::path& path) {
    try {
        return coloring_from_json(Json::parse(read_text_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw LabError(ErrorCode::Parse, e.what());
    }
}

void save_coloring_file(const std::filesystem::path& path, const Coloring& c) {
    write_text_file(path, to_json(c).dump() + "\n");
}

}  // namespace kglab
