#include "explikit/explanation.hpp"

#include <algorithm>

#include "explikit/error.hpp"

namespace explikit {

ExplanatoryTree::ExplanatoryTree(Atom query, std::vector<ExplanationNode> nodes)
    : query_(std::move(query)), nodes_(std::move(nodes)) {}

const ExplanationNode& ExplanatoryTree::node(std::size_t id) const {
  if (id >= nodes_.size()) throw UnknownNode(id);
  return nodes_[id];
}

std::optional<Clause> ExplanatoryTree::model_clause() const {
  if (nodes_.empty() || !nodes_.front().from_model) return std::nullopt;
  return Clause{nodes_.front().head, nodes_.front().body};
}

std::vector<std::size_t> ExplanatoryTree::path_to(std::size_t id) const {
  std::vector<std::size_t> path;
  std::optional<std::size_t> cur = node(id).id;
  while (cur) {
    path.push_back(*cur);
    cur = nodes_[*cur].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

void flatten(const ProofNode& proof, std::optional<std::size_t> parent, std::size_t depth,
             const KnowledgeBase& program, std::size_t model_clause_count,
             const MediaRegistry* media, std::vector<ExplanationNode>& out) {
  const std::size_t id = out.size();
  {
    ExplanationNode node;
    node.id = id;
    node.head = proof.goal;
    node.body = proof.clause.body;
    node.parent = parent;
    node.depth = depth;
    node.source = program[proof.clause_index];
    node.from_model = proof.clause_index < model_clause_count;
    if (media != nullptr) {
      std::vector<std::string> seen;
      for (const auto& arg : node.head.args) {
        if (!arg.is_constant() ||
            std::find(seen.begin(), seen.end(), arg.name) != seen.end()) {
          continue;
        }
        seen.push_back(arg.name);
        const auto& refs = media->lookup(arg.name);
        node.images.insert(node.images.end(), refs.begin(), refs.end());
      }
    }
    out.push_back(std::move(node));
  }
  for (const auto& child : proof.children) {
    const std::size_t child_id = out.size();
    flatten(child, id, depth + 1, program, model_clause_count, media, out);
    out[id].children.push_back(child_id);
  }
}

}  // namespace

ExplanatoryTree tree_from_proof(const Atom& query, const ProofNode& proof,
                                const KnowledgeBase& program, std::size_t model_clause_count,
                                const MediaRegistry* media) {
  std::vector<ExplanationNode> nodes;
  flatten(proof, std::nullopt, 0, program, model_clause_count, media, nodes);
  return ExplanatoryTree(query, std::move(nodes));
}

ExplanatoryTree build_tree(const Atom& query, const InducedModel& model,
                           const KnowledgeBase& background, const MediaRegistry* media,
                           std::size_t max_depth) {
  if (!query.is_ground()) throw NotGround(render(query));
  const Prover prover(background.prepended(model.clauses));
  const SolveResult result = prover.solve(query, {max_depth, 1});
  if (result.solutions.empty()) throw NotEntailed(render(query) + " is not entailed");
  return tree_from_proof(query, result.solutions.front().proof, prover.knowledge_base(),
                         model.clauses.size(), media);
}

std::vector<Clause> global_explanation(const InducedModel& model, const KnowledgeBase& background,
                                       const std::optional<Atom>& example,
                                       std::size_t max_depth) {
  if (!example) return model.clauses;
  std::vector<Clause> out;
  for (const auto& c : model.clauses) {
    if (entails(background.prepended({c}), *example, max_depth) == Entailment::Entailed) {
      out.push_back(c);
    }
  }
  return out;
}

std::pair<Atom, std::vector<Atom>> local_explanation(const ExplanationNode& node) {
  return {node.head, node.body};
}

const ExplanationNode& drill_down(const ExplanatoryTree& tree, std::size_t node_id,
                                  std::size_t child_index) {
  const ExplanationNode& node = tree.node(node_id);
  if (node.is_fact_leaf()) throw FactLeaf();
  if (child_index < 1 || child_index > node.children.size()) {
    throw NoSuchChild(child_index, node.children.size());
  }
  return tree.node(node.children[child_index - 1]);
}

}  // namespace explikit
