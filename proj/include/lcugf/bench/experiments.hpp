#pragma once

// Named experiments runnable from a config section. Each produces one or more
// CSV tables; nothing here touches the filesystem.

#include "lcugf/bench/config.hpp"
#include "lcugf/bench/csv.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lcugf::bench {

/// Hilbert-space dimensions above 2^kMaxLog2Dim are refused unless overridden.
inline constexpr int kMaxLog2Dim = 14;

struct RunOptions {
  int threads = 1;
  bool override_size = false;
};

struct Diagnostic {
  enum class Level { warning, error };
  Level level = Level::error;
  std::string section;
  std::string message;
};

struct KeyInfo {
  std::string key;
  std::string fallback;
  std::string help;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::vector<KeyInfo> keys;
  std::vector<std::string> outputs;  // CSV file names
};

const std::vector<ExperimentInfo>& experiment_catalog();
/// Throws ValidationError for an unknown name.
const ExperimentInfo& find_experiment(std::string_view name);

/// Section values overlaid on the documented defaults.
std::map<std::string, std::string> effective_parameters(const ConfigSection& s);

/// Parses and range-checks a section without running it.
std::vector<Diagnostic> validate_section(const ConfigSection& s, const RunOptions& opt);

/// Runs a section. Throws ValidationError if the section does not validate.
std::vector<CsvTable> run_section(const ConfigSection& s, const RunOptions& opt);

}  // namespace lcugf::bench
