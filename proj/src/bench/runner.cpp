#include "lcugf/bench/runner.hpp"

#include "lcugf/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <memory>

namespace lcugf::bench {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << content;
  if (!out.flush()) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256: digest computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string render_manifest(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["config_sha256"] = m.config_hash;
  j["wall_clock_seconds"] = m.wall_seconds;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& f : m.files) files.push_back({{"file", f.file}, {"sha256", f.sha256}});
  j["files"] = files;
  j["parameters"] = nlohmann::ordered_json::parse(m.parameters_json);
  return j.dump(2) + "\n";
}

RunManifest run_config(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                       const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  const auto manifest_path = out_dir / "manifest.json";
  std::filesystem::remove(manifest_path);

  for (const auto& s : cfg.sections) {
    for (const auto& d : validate_section(s, opt)) {
      if (d.level == Diagnostic::Level::error) throw ValidationError(d.message);
    }
  }

  RunManifest m;
  m.config_hash = sha256_hex(cfg.text);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& s : cfg.sections) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : effective_parameters(s)) p[k] = v;
    params[s.name] = p;
    for (const auto& table : run_section(s, opt)) {
      const std::string text = table.render();
      write_file(out_dir / table.file_name(), text);
      m.files.push_back({table.file_name(), sha256_hex(text)});
    }
  }
  m.parameters_json = params.dump();
  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(manifest_path, render_manifest(m));
  return m;
}

}  // namespace lcugf::bench
