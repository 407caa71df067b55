#include "sparsecap/manifest.hpp"

#include <filesystem>
#include <set>

#include <json.hpp>

#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"
#include "sparsecap/ndf.hpp"
#include "sparsecap/pgm.hpp"

namespace sparsecap {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(Errc::parse_error, where + ": missing key \"" + key + "\"");
    return *it;
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) fail(Errc::parse_error, where + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

std::string resolve_entry_path(const DatasetManifest& ds, const ManifestEntry& e) {
    std::filesystem::path p(e.path);
    if (p.is_absolute() || ds.base_dir.empty()) return e.path;
    return (std::filesystem::path(ds.base_dir) / p).string();
}

std::vector<std::size_t> probe_dims(const std::string& path) {
    if (ends_with(path, ".pgm")) return read_pgm(path).dims;
    return read_ndf_dims(path);
}

SignalTensor load_entry_tensor(const DatasetManifest& ds, const ManifestEntry& e) {
    std::string p = resolve_entry_path(ds, e);
    SignalTensor t = ends_with(p, ".pgm") ? read_pgm(p) : read_ndf(p);
    t.kind = e.kind;
    return t;
}

DatasetManifest load_manifest(const std::string& path) {
    json root = json::parse(read_file_bytes(path), nullptr, false);
    if (root.is_discarded())
        fail(Errc::parse_error, "'" + path + "' is not valid JSON");
    if (!root.is_object())
        fail(Errc::parse_error, "'" + path + "': top level must be an object");

    DatasetManifest ds;
    ds.base_dir = std::filesystem::path(path).parent_path().string();
    ds.name = require_string(root, "name", path);

    const json& grid = require(root, "lightfield_grid", path);
    if (!grid.is_null()) {
        if (!grid.is_array() || grid.size() != 2 || !grid[0].is_number_unsigned() ||
            !grid[1].is_number_unsigned() || grid[0] == 0 || grid[1] == 0)
            fail(Errc::parse_error, path + ": lightfield_grid must be [rows, cols] or null");
        ds.has_grid = true;
        ds.grid_rows = grid[0].get<std::size_t>();
        ds.grid_cols = grid[1].get<std::size_t>();
    }

    const json& entries = require(root, "entries", path);
    if (!entries.is_array())
        fail(Errc::parse_error, path + ": entries must be an array");
    for (const json& je : entries) {
        if (!je.is_object()) fail(Errc::parse_error, path + ": each entry must be an object");
        ManifestEntry e;
        e.path = require_string(je, "path", path);
        std::string role = require_string(je, "role", path);
        if (role == "train") e.role = Role::train;
        else if (role == "test") e.role = Role::test;
        else fail(Errc::parse_error, path + ": role must be \"train\" or \"test\", got \"" + role + "\"");
        e.kind = kind_from_string(require_string(je, "kind", path));
        ds.entries.push_back(std::move(e));
    }

    std::set<std::string> train_paths, test_paths;
    for (const ManifestEntry& e : ds.entries)
        (e.role == Role::train ? train_paths : test_paths).insert(e.path);
    for (const std::string& p : train_paths)
        if (test_paths.count(p))
            fail(Errc::overlapping_split, path + ": '" + p + "' appears in both train and test");

    std::vector<std::size_t> test_dims;
    for (const ManifestEntry& e : ds.entries) {
        // train files are only probed when the lightfield grid check needs them
        if (e.role != Role::test && e.kind != Kind::lightfield) continue;
        std::vector<std::size_t> dims = probe_dims(resolve_entry_path(ds, e));
        if (e.role == Role::test) {
            if (test_dims.empty()) test_dims = dims;
            else if (dims != test_dims)
                fail(Errc::mixed_dims, path + ": test entry '" + e.path + "' has dims " +
                                           dims_to_string(dims) + ", expected " + dims_to_string(test_dims));
        }
        if (e.kind == Kind::lightfield) {
            if (dims.size() != 4)
                fail(Errc::parse_error, path + ": lightfield entry '" + e.path + "' is not 4-D");
            if (ds.has_grid && (dims[0] != ds.grid_rows || dims[1] != ds.grid_cols))
                fail(Errc::parse_error, path + ": lightfield entry '" + e.path + "' does not match lightfield_grid");
        }
    }
    return ds;
}

std::string manifest_to_json(const DatasetManifest& ds) {
    json root;
    root["name"] = ds.name;
    if (ds.has_grid) root["lightfield_grid"] = {ds.grid_rows, ds.grid_cols};
    else root["lightfield_grid"] = nullptr;
    json entries = json::array();
    for (const ManifestEntry& e : ds.entries) {
        entries.push_back({{"path", e.path},
                           {"role", e.role == Role::train ? "train" : "test"},
                           {"kind", kind_name(e.kind)}});
    }
    root["entries"] = std::move(entries);
    return root.dump(2) + "\n";
}

} // namespace sparsecap
