#pragma once

#include "lcugf/bench/config.hpp"
#include "lcugf/bench/experiments.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lcugf::bench {

struct FileChecksum {
  std::string file;
  std::string sha256;
};

struct RunManifest {
  std::string config_hash;  // SHA-256 of the config text
  std::vector<FileChecksum> files;
  double wall_seconds = 0.0;
  std::string parameters_json;  // effective parameters per section
};

std::string sha256_hex(std::string_view data);

/// Validates every section, runs them in order, writes the CSVs into
/// `out_dir` and finally manifest.json. A stale manifest is deleted first,
/// so a failed run never leaves one behind.
RunManifest run_config(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                       const RunOptions& opt);

/// JSON text of a manifest.
std::string render_manifest(const RunManifest& m);

}  // namespace lcugf::bench
