#pragma once

// Experiment configuration files.
//
//   # comment
//   output_dir = results          (optional, top level only)
//
//   [gsp-hubbard]
//   sites = 2, 3, 4, 5
//   interaction = 8
//
// Keys are case-sensitive; values are trimmed; lists are comma separated.
// Each experiment name may appear at most once.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lcugf::bench {

struct ConfigSection {
  std::string name;
  int line = 0;  // line of the section header
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;  // line of each key
};

struct ExperimentConfig {
  std::string text;  // verbatim source, hashed into the manifest
  std::string output_dir;
  std::vector<ConfigSection> sections;
};

/// Throws ValidationError with a line number on malformed input.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Typed accessors over a section with defaults; all throw ValidationError
/// naming the section and key on a malformed value.
class SectionReader {
 public:
  explicit SectionReader(const ConfigSection& s) : section_(&s) {}

  const std::string& name() const { return section_->name; }
  bool has(const std::string& key) const { return section_->values.count(key) != 0; }
  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;
  std::vector<std::string> words(const std::string& key,
                                 const std::vector<std::string>& fallback) const;

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
  const ConfigSection* section_;
};

std::vector<std::string> split_list(std::string_view value);

}  // namespace lcugf::bench
