// Command-line front end: learn, query, explain, serve, validate.
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "explikit/engine.hpp"
#include "explikit/error.hpp"
#include "explikit/parser.hpp"
#include "explikit/repl.hpp"
#include "explikit/serialize.hpp"
#include "explikit/service.hpp"

namespace fs = std::filesystem;
using namespace explikit;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kIncomplete = 2, kNotEntailed = 3 };

ApiServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

ServiceConfig load_config(const std::string& path) {
  ServiceConfig config;
  if (!path.empty()) {
    config = ServiceConfig::load(path);
  } else if (fs::exists("config.json")) {
    config = ServiceConfig::load("config.json");
  }
  config.apply_environment();
  config.validate();
  return config;
}

int cmd_learn(const ServiceConfig& base, const std::string& out_path) {
  ServiceConfig config = base;
  if (!out_path.empty()) config.model_path = out_path;
  if (config.model_path.empty()) config.model_path = "model.pl";

  const LoadedArtifacts art = load_artifacts(config, ModelSource::Learn);
  const LearnResult& result = *art.learned;
  {
    std::ofstream out(config.model_path);
    if (!out) throw IoError("cannot write " + config.model_path.string());
    out << result.model.to_program_text();
  }
  for (const auto& line : result.log) std::cerr << "note: " << line << "\n";
  std::cout << result.model.to_program_text();
  const ModelReport report =
      validate_model(result.model, art.context->background, art.examples, config.depth_limit);
  std::cout << report.to_text();
  if (!result.complete()) {
    std::cerr << "error (uncoverable_positives): no admissible clause covers";
    for (const auto& p : result.uncoverable) std::cerr << " " << render(p);
    std::cerr << "\n";
    return kIncomplete;
  }
  return report.complete && report.consistent ? kOk : kIncomplete;
}

int cmd_query(const ServiceConfig& config, const std::string& text) {
  const Atom query = parse_atom(text);
  const LoadedArtifacts art = load_artifacts(config, ModelSource::FileOrLearn);
  const KnowledgeBase program = art.context->background.prepended(art.context->model.clauses);
  const SolveResult result = solve(query, program, SolveLimits{.max_depth = config.depth_limit});

  if (query.is_ground()) {
    if (!result.solutions.empty()) {
      std::cout << "true.\n";
    } else {
      std::cout << (result.depth_limit_exceeded ? "unknown (depth limit reached).\n" : "false.\n");
    }
    return kOk;
  }
  for (const auto& s : result.solutions) {
    std::string line;
    for (const auto& v : variables_of(query)) {
      if (!line.empty()) line += ", ";
      line += v + " = " + s.substitution.resolve(Term::variable(v)).name;
    }
    std::cout << line << "\n";
  }
  if (result.solutions.empty()) std::cout << "false.\n";
  if (result.depth_limit_exceeded) std::cout << "(depth limit reached; answers may be incomplete)\n";
  return kOk;
}

int cmd_explain(const ServiceConfig& config, const std::string& text, bool tree_json, bool dot,
                bool interactive) {
  const Atom query = parse_atom(text);
  const LoadedArtifacts art = load_artifacts(config, ModelSource::FileOrLearn);
  DialogueSession session = open_session(art.context);
  if (interactive) std::cout << format_response(*session.transcript().front().response) << "\n";

  Response first;
  try {
    first = session.handle(Request::classify(query));
  } catch (const NotEntailed& e) {
    std::cout << e.what() << "\n";
    return kNotEntailed;
  }

  const ExplanationContext& ctx = *art.context;
  if (tree_json) {
    std::cout << to_json(*session.tree(), ctx.media, &ctx.templates).dump(2) << "\n";
  } else if (dot) {
    std::cout << to_dot(*session.tree(), &ctx.templates);
  } else {
    std::cout << format_response(first) << "\n";
  }
  if (interactive) run_repl(session, std::cin, std::cout);
  return kOk;
}

int cmd_validate(const ServiceConfig& config) {
  const LoadedArtifacts art = load_artifacts(config, ModelSource::FileOrLearn);
  std::cout << "model (" << (art.model_from_file ? "from " + config.model_path.string() : "learned")
            << "):\n"
            << art.context->model.to_program_text();
  const ModelReport report =
      validate_model(art.context->model, art.context->background, art.examples, config.depth_limit);
  std::cout << report.to_text();
  return report.complete && report.consistent ? kOk : kIncomplete;
}

int cmd_serve(const ServiceConfig& config) {
  const LoadedArtifacts art = load_artifacts(config, ModelSource::FileOrLearn);
  ApiServer server(art.context, config);
  const auto [host, port] = config.host_port();
  const int bound = server.bind(host, port);
  if (bound < 0) throw IoError("cannot listen on " + config.listen_address);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  const bool ok = server.run();
  g_server = nullptr;
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn Horn-clause models and explain their decisions."};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Path to config.json (default: ./config.json)");

  std::string out_path;
  auto* learn = app.add_subcommand("learn", "Learn a model and write it to model_path");
  learn->add_option("--out", out_path, "Write the model here instead of model_path");

  std::string query_text;
  auto* query = app.add_subcommand("query", "Prove an atom against the model and background");
  query->add_option("atom", query_text, "Atom, e.g. is(fox,X)")->required();

  std::string explain_text;
  bool tree_json = false, dot = false, interactive = false;
  auto* explain = app.add_subcommand("explain", "Explain why the model classifies an atom");
  explain->add_option("atom", explain_text, "Ground atom")->required();
  auto* tj = explain->add_flag("--tree-json", tree_json, "Print the explanatory tree as JSON");
  auto* dt = explain->add_flag("--dot", dot, "Print the explanatory tree as Graphviz DOT");
  tj->excludes(dt);
  explain->add_flag("--interactive", interactive, "Start the dialogue REPL");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  auto* validate = app.add_subcommand("validate", "Check the model against the examples");

  CLI11_PARSE(app, argc, argv);

  try {
    const ServiceConfig config = load_config(config_path);
    if (learn->parsed()) return cmd_learn(config, out_path);
    if (query->parsed()) return cmd_query(config, query_text);
    if (explain->parsed()) return cmd_explain(config, explain_text, tree_json, dot, interactive);
    if (serve->parsed()) return cmd_serve(config);
    if (validate->parsed()) return cmd_validate(config);
  } catch (const Error& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
