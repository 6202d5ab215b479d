#include "explikit/service.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "explikit/serialize.hpp"

namespace explikit {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

namespace {

constexpr const char* kPathKeys[] = {"kb_path",         "examples_path",       "modes_path",
                                     "templates_path",  "strings_path",        "media_manifest_path",
                                     "media_root",      "model_path"};

fs::path& path_field(ServiceConfig& c, std::string_view key) {
  if (key == "kb_path") return c.kb_path;
  if (key == "examples_path") return c.examples_path;
  if (key == "modes_path") return c.modes_path;
  if (key == "templates_path") return c.templates_path;
  if (key == "strings_path") return c.strings_path;
  if (key == "media_manifest_path") return c.media_manifest_path;
  if (key == "media_root") return c.media_root;
  return c.model_path;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long n = std::stoul(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(key + " must be a non-negative integer, got '" + value + "'");
  }
}

}  // namespace

ServiceConfig ServiceConfig::from_json(std::string_view json_text, const fs::path& base_dir) {
  ServiceConfig c;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const char* key : kPathKeys) {
      if (doc.contains(key) && !doc[key].is_null()) {
        fs::path p = doc[key].get<std::string>();
        path_field(c, key) = p.is_absolute() ? p : base_dir / p;
      }
    }
    c.listen_address = doc.value("listen_address", c.listen_address);
    c.depth_limit = doc.value("depth_limit", c.depth_limit);
    c.max_body_literals = doc.value("max_body_literals", c.max_body_literals);
    c.session_idle_minutes = doc.value("session_idle_minutes", c.session_idle_minutes);
    c.cors_origin = doc.value("cors_origin", c.cors_origin);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ServiceConfig ServiceConfig::load(const fs::path& path) {
  return from_json(read_file(path), path.parent_path());
}

void ServiceConfig::apply_environment(
    const std::function<std::optional<std::string>(const std::string&)>& getenv) {
  auto env_name = [](std::string key) {
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return std::toupper(ch); });
    return "EXPLIKIT_" + key;
  };
  for (const char* key : kPathKeys) {
    if (auto v = getenv(env_name(key))) path_field(*this, key) = *v;
  }
  if (auto v = getenv(env_name("listen_address"))) listen_address = *v;
  if (auto v = getenv(env_name("depth_limit"))) depth_limit = parse_count("depth_limit", *v);
  if (auto v = getenv(env_name("max_body_literals"))) {
    max_body_literals = parse_count("max_body_literals", *v);
  }
  if (auto v = getenv(env_name("session_idle_minutes"))) {
    session_idle_minutes = parse_count("session_idle_minutes", *v);
  }
  if (auto v = getenv(env_name("cors_origin"))) cors_origin = *v;
}

void ServiceConfig::apply_environment() {
  apply_environment([](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
}

void ServiceConfig::validate() const {
  if (kb_path.empty()) throw ConfigError("kb_path is required");
  auto must_exist = [](const char* key, const fs::path& p) {
    if (!p.empty() && !fs::exists(p)) {
      throw ConfigError(std::string(key) + " does not exist: " + p.string());
    }
  };
  must_exist("kb_path", kb_path);
  must_exist("examples_path", examples_path);
  must_exist("modes_path", modes_path);
  must_exist("templates_path", templates_path);
  must_exist("strings_path", strings_path);
  must_exist("media_manifest_path", media_manifest_path);
  must_exist("media_root", media_root);
  if (depth_limit == 0) throw ConfigError("depth_limit must be positive");
  if (max_body_literals == 0) throw ConfigError("max_body_literals must be positive");
  if (session_idle_minutes == 0) throw ConfigError("session_idle_minutes must be positive");
  host_port();
}

std::pair<std::string, int> ServiceConfig::host_port() const {
  const auto colon = listen_address.rfind(':');
  if (colon == std::string::npos) throw ConfigError("listen_address must be host:port");
  const auto port = parse_count("listen_address port", listen_address.substr(colon + 1));
  if (port > 65535) throw ConfigError("listen_address port out of range");
  return {listen_address.substr(0, colon), static_cast<int>(port)};
}

// ---------------------------------------------------------------------------
// Artifacts

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

KnowledgeBase load_program_file(const fs::path& path, ParseOptions options) {
  return parse_program(read_file(path), options);
}

ExampleSet load_examples_file(const fs::path& path) { return parse_examples(read_file(path)); }

LoadedArtifacts load_artifacts(const ServiceConfig& config, ModelSource source) {
  LoadedArtifacts out;
  auto ctx = std::make_shared<ExplanationContext>();
  ctx->max_depth = config.depth_limit;
  ctx->background = load_program_file(config.kb_path);
  if (!config.examples_path.empty()) out.examples = load_examples_file(config.examples_path);
  if (!config.modes_path.empty()) {
    out.learner = parse_learner_config(read_file(config.modes_path));
    out.learner->limits.max_depth = config.depth_limit;
    out.learner->limits.max_body_literals = config.max_body_literals;
  }

  ctx->templates = config.templates_path.empty()
                       ? generic_templates(ctx->background)
                       : parse_templates(read_file(config.templates_path), ctx->background);
  if (!config.strings_path.empty()) {
    ctx->strings = parse_dialogue_strings(read_file(config.strings_path));
  }
  if (!config.media_manifest_path.empty()) {
    const fs::path root =
        config.media_root.empty() ? config.media_manifest_path.parent_path() : config.media_root;
    ctx->media = MediaRegistry::load_manifest(config.media_manifest_path, root);
  }

  PredicateKey target = out.examples.target.value_or(
      out.learner ? out.learner->modes.head : PredicateKey{});
  const bool have_file = !config.model_path.empty() && fs::exists(config.model_path);
  if (source == ModelSource::File || (source == ModelSource::FileOrLearn && have_file)) {
    if (!have_file) throw IoError("model file not found: " + config.model_path.string());
    const KnowledgeBase program =
        load_program_file(config.model_path, ParseOptions{.require_ground_facts = false});
    if (!program.empty()) target = program[0].head.key();
    ctx->model = model_from_program(program, target);
    out.model_from_file = true;
  } else {
    if (!out.learner) throw ConfigError("modes_path is required to learn a model");
    out.learned = learn(ctx->background, out.examples, out.learner->modes, out.learner->limits);
    ctx->model = out.learned->model;
  }
  out.context = std::move(ctx);
  return out;
}

int http_status(const std::string& code) {
  static const std::map<std::string, int> kStatus = {
      {"bad_request", 400},       {"syntax_error", 400},        {"not_ground", 400},
      {"no_such_child", 400},     {"fact_leaf", 400},           {"at_root", 400},
      {"no_active_explanation", 400},
      {"unknown_session", 404},   {"unknown_node", 404},        {"unknown_media", 404},
      {"session_ended", 409},     {"not_entailed", 422},
  };
  auto it = kStatus.find(code);
  return it == kStatus.end() ? 500 : it->second;
}

// ---------------------------------------------------------------------------
// Sessions

SessionStore::SessionStore(std::shared_ptr<const ExplanationContext> context,
                           std::chrono::minutes idle)
    : context_(std::move(context)), idle_(idle) {}

std::pair<std::string, Response> SessionStore::create() {
  DialogueSession session = open_session(context_);
  const std::string id = session.id();
  const Response hello = *session.transcript().front().response;
  std::lock_guard lock(mutex_);
  sessions_.emplace(id, std::make_shared<Entry>(std::move(session)));
  return {id, hello};
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

std::size_t SessionStore::evict_idle(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  std::size_t evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
    if (entry_lock.owns_lock() && now - it->second->last_used > idle_) {
      entry_lock.unlock();
      it = sessions_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

// ---------------------------------------------------------------------------
// HTTP

struct ApiServer::Impl {
  Impl(std::shared_ptr<const ExplanationContext> c, const ServiceConfig& cfg)
      : context(std::move(c)),
        config(cfg),
        store(context, std::chrono::minutes(cfg.session_idle_minutes)) {}

  std::shared_ptr<const ExplanationContext> context;
  ServiceConfig config;
  SessionStore store;
  httplib::Server server;

  void send_json(httplib::Response& res, int status, const Json& body) const {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  void send_error(httplib::Response& res, const Error& e, const Json& details = nullptr) const {
    send_json(res, http_status(e.code()), error_json(e.code(), e.what(), details));
  }

  // Runs a handler, turning library errors into ApiError bodies.
  template <typename F>
  void guarded(httplib::Response& res, F&& fn) const {
    try {
      fn();
    } catch (const SyntaxError& e) {
      send_error(res, e, Json{{"line", e.line()}, {"column", e.column()}});
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_json(res, 500, error_json("internal", e.what()));
    }
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    server.Post("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        store.evict_idle(SessionStore::Clock::now());
        auto [id, hello] = store.create();
        send_json(res, 200, {{"session_id", id}, {"response", to_json(hello, context->media)}});
      });
    });

    server.Post(R"(/api/sessions/([^/]+)/requests)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    Json body;
                    try {
                      body = Json::parse(req.body);
                    } catch (const Json::parse_error& e) {
                      throw BadRequest(std::string("malformed JSON: ") + e.what());
                    }
                    const Request request = request_from_json(body);
                    const Response response = store.with_session(
                        req.matches[1], [&](DialogueSession& s) { return s.handle(request); });
                    send_json(res, 200, to_json(response, context->media));
                  });
                });

    server.Get(R"(/api/sessions/([^/]+)/transcript)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   const std::string lines =
                       store.with_session(req.matches[1], [&](DialogueSession& s) {
                         return transcript_to_jsonl(s.transcript(), context->media);
                       });
                   res.status = 200;
                   res.set_content(lines, "application/x-ndjson");
                 });
               });

    server.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
      Json body = to_json(context->model);
      body["sentences"] = verbalize_global(context->model.clauses, context->templates);
      send_json(res, 200, body);
    });

    server.Get(R"(/api/tree/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const Json body = store.with_session(req.matches[1], [&](DialogueSession& s) -> Json {
          if (!s.tree() || s.state() != SessionState::Exploring) return nullptr;
          Json tree = to_json(*s.tree(), context->media, &context->templates);
          tree["cursor"] = s.cursor();
          tree["cursor_path"] = s.tree()->path_to(s.cursor());
          tree["history"] = s.history();
          return tree;
        });
        if (body.is_null()) {
          send_json(res, 404,
                    error_json("no_active_explanation", "this session has no explanatory tree"));
          return;
        }
        send_json(res, 200, body);
      });
    });

    server.Get(R"(/media/([^/]+)/(\d+))", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
      guarded(res, [&] {
        const std::string constant = req.matches[1];
        const auto& refs = context->media.lookup(constant);
        std::size_t n = 0;
        try {
          n = std::stoul(req.matches[2]);
        } catch (const std::exception&) {
        }
        if (n < 1 || n > refs.size()) {
          throw UnknownMedia(constant + "/" + std::string(req.matches[2]));
        }
        const MediaRef& ref = refs[n - 1];
        res.status = 200;
        res.set_content(context->media.read_bytes(ref), ref.mime);
      });
    });

    server.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        const std::string code = res.status == 404 ? "not_found" : "http_error";
        res.set_content(error_json(code, "HTTP " + std::to_string(res.status)).dump(),
                        "application/json");
      }
    });
  }
};

ApiServer::ApiServer(std::shared_ptr<const ExplanationContext> context, const ServiceConfig& config)
    : impl_(std::make_unique<Impl>(std::move(context), config)) {
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::run() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_) impl_->server.stop();
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

SessionStore& ApiServer::sessions() { return impl_->store; }

}  // namespace explikit
