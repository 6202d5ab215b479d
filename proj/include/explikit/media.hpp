#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace explikit {

struct MediaRef {
  std::string constant;
  std::string path;  // relative to the registry root
  std::string mime;
  std::optional<std::string> caption;

  bool operator==(const MediaRef&) const = default;
};

/// Images bound to constants. Immutable after loading.
class MediaRegistry {
 public:
  MediaRegistry() = default;

  /// Parses a JSON manifest (array of {constant, path, caption?, mime?}) and
  /// checks every file exists under `root`. Throws ManifestSyntax or
  /// MissingFile.
  static MediaRegistry from_manifest(std::string_view manifest_json,
                                     const std::filesystem::path& root);
  static MediaRegistry load_manifest(const std::filesystem::path& manifest_path,
                                     const std::filesystem::path& root);

  /// Empty for unknown constants.
  const std::vector<MediaRef>& lookup(const std::string& constant) const;

  /// Absolute location of a ref's file.
  std::filesystem::path resolve(const MediaRef& ref) const { return root_ / ref.path; }
  std::string read_bytes(const MediaRef& ref) const;

  const std::filesystem::path& root() const noexcept { return root_; }
  std::size_t size() const noexcept { return refs_.size(); }
  bool empty() const noexcept { return refs_.empty(); }
  std::vector<std::string> constants() const;

 private:
  std::filesystem::path root_;
  std::map<std::string, std::vector<MediaRef>> refs_;
};

/// Media type from a file extension (`image/jpeg`, `image/png`, ...).
std::string mime_for(const std::filesystem::path& path);

}  // namespace explikit
