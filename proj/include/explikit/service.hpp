#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explikit/dialogue.hpp"
#include "explikit/error.hpp"
#include "explikit/learner.hpp"
#include "explikit/parser.hpp"

namespace explikit {

/// Paths and limits shared by the CLI and the HTTP service. Relative paths
/// in a config file resolve against the file's directory.
struct ServiceConfig {
  std::filesystem::path kb_path;
  std::filesystem::path examples_path;
  std::filesystem::path modes_path;
  std::filesystem::path templates_path;
  std::filesystem::path strings_path;
  std::filesystem::path media_manifest_path;
  std::filesystem::path media_root;
  std::filesystem::path model_path;
  std::string listen_address = "127.0.0.1:8080";
  std::size_t depth_limit = 64;
  std::size_t max_body_literals = 2;
  std::size_t session_idle_minutes = 30;
  std::string cors_origin = "*";

  static ServiceConfig from_json(std::string_view json_text,
                                 const std::filesystem::path& base_dir);
  static ServiceConfig load(const std::filesystem::path& path);

  /// Overrides keys from `EXPLIKIT_<KEY>` variables (e.g. EXPLIKIT_KB_PATH).
  void apply_environment(const std::function<std::optional<std::string>(const std::string&)>& getenv);
  void apply_environment();

  /// Throws ConfigError when a configured path is missing or a limit is zero.
  void validate() const;

  /// Splits `listen_address` into host and port.
  std::pair<std::string, int> host_port() const;
};

std::string read_file(const std::filesystem::path& path);
KnowledgeBase load_program_file(const std::filesystem::path& path,
                                ParseOptions options = {});
ExampleSet load_examples_file(const std::filesystem::path& path);

struct LoadedArtifacts {
  ExampleSet examples;
  std::optional<LearnerConfig> learner;
  bool model_from_file = false;
  std::optional<LearnResult> learned;  // set when the model was learned on load
  std::shared_ptr<const ExplanationContext> context;
};

enum class ModelSource { FileOrLearn, Learn, File };

/// Loads KB, examples, templates, strings, media and the model.
LoadedArtifacts load_artifacts(const ServiceConfig& config, ModelSource source);

/// Maps an error code to its HTTP status.
int http_status(const std::string& code);

/// In-memory sessions. Requests against one session are serialized;
/// different sessions proceed concurrently.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  SessionStore(std::shared_ptr<const ExplanationContext> context, std::chrono::minutes idle);

  /// Opens a session and returns its id and opening message.
  std::pair<std::string, Response> create();

  /// Runs `fn(session)` under the session's lock. Throws UnknownSession.
  template <typename F>
  auto with_session(const std::string& id, F&& fn) {
    std::shared_ptr<Entry> entry = find(id);
    std::lock_guard lock(entry->mutex);
    entry->last_used = Clock::now();
    return fn(entry->session);
  }

  /// Drops sessions idle for longer than the configured timeout.
  std::size_t evict_idle(Clock::time_point now);
  std::size_t size() const;

 private:
  struct Entry {
    explicit Entry(DialogueSession s) : session(std::move(s)), last_used(Clock::now()) {}
    std::mutex mutex;
    DialogueSession session;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;

  std::shared_ptr<const ExplanationContext> context_;
  std::chrono::minutes idle_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// JSON-over-HTTP front end for sessions, the model, trees and media.
class ApiServer {
 public:
  ApiServer(std::shared_ptr<const ExplanationContext> context, const ServiceConfig& config);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until `stop()`; call after `bind`.
  bool run();
  void stop();
  void wait_until_ready() const;

  SessionStore& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace explikit
