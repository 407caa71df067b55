#ifndef SPARSECAP_MANIFEST_HPP
#define SPARSECAP_MANIFEST_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sparsecap/tensor.hpp"

namespace sparsecap {

enum class Role { train, test };

struct ManifestEntry {
    std::string path; // relative paths resolve against the manifest's directory
    Role role = Role::test;
    Kind kind = Kind::generic;
};

struct DatasetManifest {
    std::string name;
    bool has_grid = false;
    std::size_t grid_rows = 0, grid_cols = 0;
    std::vector<ManifestEntry> entries;
    std::string base_dir; // set by load_manifest; "" means cwd
};

// Parses and validates a manifest JSON file.  Checks: schema, train/test
// disjoint by path (OverlappingSplit), all test entries share dims
// (MixedDims; file headers are probed), lightfield entries 4-D and matching
// lightfield_grid when given.
DatasetManifest load_manifest(const std::string& path);

// Serialization used by the synth generator.
std::string manifest_to_json(const DatasetManifest& ds);

std::string resolve_entry_path(const DatasetManifest& ds, const ManifestEntry& e);

// Shape probe without loading payload (.pgm by extension, NDF otherwise).
std::vector<std::size_t> probe_dims(const std::string& path);

// Full load; tensor kind comes from the entry, not the file.
SignalTensor load_entry_tensor(const DatasetManifest& ds, const ManifestEntry& e);

} // namespace sparsecap

#endif
