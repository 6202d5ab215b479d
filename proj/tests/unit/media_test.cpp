#include <gtest/gtest.h>

#include <fstream>

#include "explikit/error.hpp"
#include "explikit/media.hpp"
#include "support.hpp"

using namespace explikit;
using namespace explikit::testing;

namespace {

MediaRegistry bundled_media() {
  return MediaRegistry::load_manifest(data_dir() / "media" / "manifest.json", data_dir() / "media");
}

void touch(const std::filesystem::path& p, const std::string& bytes = "x") {
  std::ofstream(p, std::ios::binary) << bytes;
}

}  // namespace

TEST(Media, BundledManifest) {
  const MediaRegistry m = bundled_media();
  const std::vector<std::string> expected{"argo",   "bella",   "bobby",    "clover", "dandelion",
                                          "fluffy", "parsley", "rosemary", "samson", "tipsie"};
  auto constants = m.constants();
  std::sort(constants.begin(), constants.end());
  EXPECT_EQ(constants, expected);
  EXPECT_EQ(m.size(), 10u);
  for (const auto& c : constants) {
    for (const auto& ref : m.lookup(c)) {
      EXPECT_TRUE(std::filesystem::is_regular_file(m.resolve(ref))) << ref.path;
      EXPECT_EQ(ref.mime, "image/jpeg");
    }
  }
}

TEST(Media, Lookup) {
  const MediaRegistry m = bundled_media();
  ASSERT_EQ(m.lookup("bobby").size(), 1u);
  EXPECT_EQ(m.lookup("bobby")[0].path, "bobby.jpg");
  EXPECT_TRUE(m.lookup("stomach").empty());
  EXPECT_TRUE(m.lookup("zorp").empty());
  const std::string bytes = m.read_bytes(m.lookup("bobby")[0]);
  ASSERT_GT(bytes.size(), 2u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 0xFF);
  EXPECT_EQ(static_cast<unsigned char>(bytes[1]), 0xD8);
}

TEST(Media, EmptyManifest) {
  TempDir dir;
  EXPECT_TRUE(MediaRegistry::from_manifest("[]", dir.path).empty());
  EXPECT_TRUE(MediaRegistry::from_manifest("", dir.path).empty());
}

TEST(Media, MissingFile) {
  TempDir dir;
  EXPECT_THROW(
      MediaRegistry::from_manifest(R"([{"constant": "a", "path": "a.png"}])", dir.path),
      MissingFile);
}

TEST(Media, PathTraversalRejected) {
  TempDir dir;
  std::filesystem::create_directories(dir.path / "root");
  touch(dir.path / "secret.png");
  EXPECT_THROW(MediaRegistry::from_manifest(R"([{"constant": "a", "path": "../secret.png"}])",
                                            dir.path / "root"),
               Error);
  EXPECT_THROW(MediaRegistry::from_manifest(
                   R"([{"constant": "a", "path": ")" + (dir.path / "secret.png").string() + "\"}]",
                   dir.path / "root"),
               Error);
}

TEST(Media, SyntaxErrorsCarryLine) {
  TempDir dir;
  try {
    MediaRegistry::from_manifest("[\n  {\"constant\": \"a\",\n  \"path\": }\n]", dir.path);
    FAIL() << "expected ManifestSyntax";
  } catch (const ManifestSyntax& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(MediaRegistry::from_manifest(R"({"constant": "a"})", dir.path), ManifestSyntax);
  EXPECT_THROW(MediaRegistry::from_manifest(R"([{"path": "a.png"}])", dir.path), ManifestSyntax);
}

TEST(Media, MultipleImagesKeepOrderAndMime) {
  TempDir dir;
  touch(dir.path / "one.png");
  touch(dir.path / "two.gif");
  const MediaRegistry m = MediaRegistry::from_manifest(
      R"([{"constant": "a", "path": "one.png", "caption": "first"},
          {"constant": "a", "path": "two.gif"}])",
      dir.path);
  ASSERT_EQ(m.lookup("a").size(), 2u);
  EXPECT_EQ(m.lookup("a")[0].mime, "image/png");
  EXPECT_EQ(m.lookup("a")[0].caption, "first");
  EXPECT_EQ(m.lookup("a")[1].mime, "image/gif");
  EXPECT_FALSE(m.lookup("a")[1].caption.has_value());
}

TEST(Media, MimeTypes) {
  EXPECT_EQ(mime_for("a.jpg"), "image/jpeg");
  EXPECT_EQ(mime_for("a.JPEG"), "image/jpeg");
  EXPECT_EQ(mime_for("a.png"), "image/png");
  EXPECT_EQ(mime_for("a.svg"), "image/svg+xml");
  EXPECT_EQ(mime_for("a.bin"), "application/octet-stream");
}
