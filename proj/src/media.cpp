#include "explikit/media.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "explikit/error.hpp"

namespace explikit {

namespace fs = std::filesystem;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

bool within(const fs::path& root, const fs::path& candidate) {
  const fs::path r = fs::weakly_canonical(root);
  const fs::path c = fs::weakly_canonical(candidate);
  auto [root_end, _] = std::mismatch(r.begin(), r.end(), c.begin(), c.end());
  return root_end == r.end();
}

}  // namespace

std::string mime_for(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".png") return "image/png";
  if (ext == ".gif") return "image/gif";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

MediaRegistry MediaRegistry::from_manifest(std::string_view manifest_json, const fs::path& root) {
  using nlohmann::json;
  MediaRegistry reg;
  reg.root_ = root;
  if (manifest_json.find_first_not_of(" \t\r\n") == std::string_view::npos) return reg;

  json doc;
  try {
    doc = json::parse(manifest_json);
  } catch (const json::parse_error& e) {
    throw ManifestSyntax(line_of(manifest_json, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_array()) throw ManifestSyntax(1, "manifest must be a JSON array");

  for (const json& entry : doc) {
    if (!entry.is_object() || !entry.contains("constant") || !entry.contains("path") ||
        !entry["constant"].is_string() || !entry["path"].is_string()) {
      throw ManifestSyntax(1, "every entry needs string fields 'constant' and 'path': " +
                                  entry.dump());
    }
    MediaRef ref;
    ref.constant = entry["constant"].get<std::string>();
    ref.path = entry["path"].get<std::string>();
    ref.mime = entry.contains("mime") ? entry["mime"].get<std::string>() : mime_for(ref.path);
    if (entry.contains("caption") && entry["caption"].is_string()) {
      ref.caption = entry["caption"].get<std::string>();
    }
    const fs::path file = root / ref.path;
    if (fs::path(ref.path).is_absolute() || !within(root, file)) {
      throw MissingFile(ref.constant, ref.path + " (outside media root)");
    }
    if (!fs::is_regular_file(file)) throw MissingFile(ref.constant, file.string());
    reg.refs_[ref.constant].push_back(std::move(ref));
  }
  return reg;
}

MediaRegistry MediaRegistry::load_manifest(const fs::path& manifest_path, const fs::path& root) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot read media manifest " + manifest_path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_manifest(buf.str(), root);
}

const std::vector<MediaRef>& MediaRegistry::lookup(const std::string& constant) const {
  static const std::vector<MediaRef> kNone;
  auto it = refs_.find(constant);
  return it == refs_.end() ? kNone : it->second;
}

std::string MediaRegistry::read_bytes(const MediaRef& ref) const {
  std::ifstream in(resolve(ref), std::ios::binary);
  if (!in) throw MissingFile(ref.constant, resolve(ref).string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> MediaRegistry::constants() const {
  std::vector<std::string> out;
  for (const auto& [c, _] : refs_) out.push_back(c);
  return out;
}

}  // namespace explikit
