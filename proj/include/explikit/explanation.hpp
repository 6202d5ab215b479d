#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "explikit/engine.hpp"
#include "explikit/knowledge_base.hpp"
#include "explikit/learner.hpp"
#include "explikit/media.hpp"
#include "explikit/term.hpp"

namespace explikit {

/// One local explanation: the ground clause instance that proved `head`.
struct ExplanationNode {
  std::size_t id = 0;  // preorder position, root = 0
  Atom head;
  std::vector<Atom> body;               // empty for facts
  std::vector<std::size_t> children;    // aligned with body
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
  Clause source;                        // the (non-ground) clause resolved against
  bool from_model = false;              // source is a model clause rather than background
  std::vector<MediaRef> images;

  bool is_fact_leaf() const noexcept { return body.empty(); }
};

/// The recorded first proof of a query against model + background.
class ExplanatoryTree {
 public:
  ExplanatoryTree(Atom query, std::vector<ExplanationNode> nodes);

  const Atom& query() const noexcept { return query_; }
  std::size_t root() const noexcept { return 0; }
  const ExplanationNode& node(std::size_t id) const;
  const std::vector<ExplanationNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(std::size_t id) const noexcept { return id < nodes_.size(); }

  /// The model clause applied at the root, if the root came from the model.
  std::optional<Clause> model_clause() const;

  /// Node ids from the root down to `id`, inclusive.
  std::vector<std::size_t> path_to(std::size_t id) const;

 private:
  Atom query_;
  std::vector<ExplanationNode> nodes_;
};

/// Builds the explanatory tree from the first SLD proof of `query` against
/// the model clauses followed by `background`. Media lookups attach images
/// for every constant in each node head.
///
/// Throws NotGround or NotEntailed.
ExplanatoryTree build_tree(const Atom& query, const InducedModel& model,
                           const KnowledgeBase& background, const MediaRegistry* media = nullptr,
                           std::size_t max_depth = 64);

/// Converts a proof into tree form. `model_clause_count` leading program
/// clauses are marked as model clauses.
ExplanatoryTree tree_from_proof(const Atom& query, const ProofNode& proof,
                                const KnowledgeBase& program, std::size_t model_clause_count,
                                const MediaRegistry* media = nullptr);

/// All model clauses, or only those that on their own entail `example`.
std::vector<Clause> global_explanation(const InducedModel& model, const KnowledgeBase& background,
                                       const std::optional<Atom>& example = std::nullopt,
                                       std::size_t max_depth = 64);

std::pair<Atom, std::vector<Atom>> local_explanation(const ExplanationNode& node);

/// The child explaining body literal `child_index` (1-based) of `node_id`.
/// Throws UnknownNode, FactLeaf or NoSuchChild.
const ExplanationNode& drill_down(const ExplanatoryTree& tree, std::size_t node_id,
                                  std::size_t child_index);

}  // namespace explikit
