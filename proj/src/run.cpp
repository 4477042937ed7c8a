#include "dlc/run.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <memory>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "dlc/error.hpp"

namespace dlc {

namespace fs = std::filesystem;

std::string sha256_bytes(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_bytes(bytes);
}

fs::path resolve_input(const std::string& name, const std::vector<fs::path>& bases) {
  const fs::path p(name);
  if (fs::exists(p)) return p;
  if (p.is_relative()) {
    for (const auto& base : bases)
      if (fs::exists(base / p)) return base / p;
    if (const char* data = std::getenv("DLC_DATA_DIR"); data && *data && fs::exists(fs::path(data) / p))
      return fs::path(data) / p;
  }
  throw InputError("input not found: " + name);
}

void atomic_write(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void OutputSet::add(const fs::path& path, std::string contents) { files_[path] = std::move(contents); }

void OutputSet::commit() const {
  for (const auto& [path, contents] : files_) atomic_write(path, contents);
}

void RunManifest::add_input(const fs::path& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().filename() != "manifest.json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::string combined;
    for (const auto& f : files) combined += f.filename().string() + ' ' + sha256_file(f) + '\n';
    inputs.emplace_back(path.string(), sha256_bytes(combined));
    return;
  }
  inputs.emplace_back(path.string(), sha256_file(path));
}

nlohmann::json RunManifest::to_json() const {
  const auto now = std::chrono::system_clock::now();
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"sha256", digest}});
  nlohmann::json j{{"command", command},
                   {"args", args},
                   {"parameters", parameters},
                   {"inputs", in},
                   {"version", kVersion},
                   {"started_at", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", std::chrono::floor<std::chrono::seconds>(started))},
                   {"elapsed_seconds", std::chrono::duration<double>(now - started).count()}};
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

}  // namespace dlc
