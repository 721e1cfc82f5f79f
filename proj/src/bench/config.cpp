#include "lcugf/bench/config.hpp"

#include "lcugf/error.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace lcugf::bench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= value.size()) {
    const auto comma = value.find(',', begin);
    const auto end = comma == std::string_view::npos ? value.size() : comma;
    const auto item = trim(value.substr(begin, end - begin));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  cfg.text = std::string(text);
  std::set<std::string> seen;
  std::istringstream in(cfg.text);
  std::string raw;
  int line = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') syntax_error(line, "unterminated section header");
      const std::string name(trim(s.substr(1, s.size() - 2)));
      if (name.empty()) syntax_error(line, "empty section name");
      if (!seen.insert(name).second) syntax_error(line, "duplicate section [" + name + "]");
      cfg.sections.push_back({name, line, {}, {}});
      current = &cfg.sections.back();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) syntax_error(line, "expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (key.empty()) syntax_error(line, "empty key");
    if (current == nullptr) {
      if (key != "output_dir") syntax_error(line, "unknown top-level key '" + key + "'");
      cfg.output_dir = value;
      continue;
    }
    if (!current->values.emplace(key, value).second) {
      syntax_error(line, "duplicate key '" + key + "' in [" + current->name + "]");
    }
    current->lines[key] = line;
  }
  if (cfg.sections.empty()) {
    throw ValidationError("config: no experiment sections");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void SectionReader::fail(const std::string& key, const std::string& what) const {
  std::string where = "[" + section_->name + "] " + key;
  if (auto it = section_->lines.find(key); it != section_->lines.end()) {
    where += " (line " + std::to_string(it->second) + ")";
  }
  throw ValidationError(where + ": " + what);
}

std::string SectionReader::text(const std::string& key, const std::string& fallback) const {
  auto it = section_->values.find(key);
  return it == section_->values.end() ? fallback : it->second;
}

double SectionReader::real(const std::string& key, double fallback) const {
  auto it = section_->values.find(key);
  if (it == section_->values.end()) return fallback;
  const std::string& v = it->second;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(key, "expected a number, got '" + v + "'");
  return out;
}

int SectionReader::integer(const std::string& key, int fallback) const {
  auto it = section_->values.find(key);
  if (it == section_->values.end()) return fallback;
  const std::string& v = it->second;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(key, "expected an integer, got '" + v + "'");
  return out;
}

std::vector<int> SectionReader::integers(const std::string& key,
                                         const std::vector<int>& fallback) const {
  auto it = section_->values.find(key);
  if (it == section_->values.end()) return fallback;
  std::vector<int> out;
  for (const auto& item : split_list(it->second)) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      fail(key, "expected a list of integers, got '" + it->second + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

std::vector<std::string> SectionReader::words(const std::string& key,
                                              const std::vector<std::string>& fallback) const {
  auto it = section_->values.find(key);
  if (it == section_->values.end()) return fallback;
  auto out = split_list(it->second);
  if (out.empty()) fail(key, "empty list");
  return out;
}

}  // namespace lcugf::bench
