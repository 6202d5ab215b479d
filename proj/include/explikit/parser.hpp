#pragma once

#include <string_view>

#include "explikit/knowledge_base.hpp"
#include "explikit/term.hpp"

namespace explikit {

struct ParseOptions {
  /// Learned models may contain bodiless clauses with variables
  /// (`tracks_down(A,B).` is the most general clause); KB files may not.
  bool require_ground_facts = true;
};

/// Parses the Prolog subset: `head.` / `head :- b1, ..., bn.` with
/// function-free atoms and `%` line comments.
///
/// Throws SyntaxError, NonGroundFact or ArityConflict.
KnowledgeBase parse_program(std::string_view source, ParseOptions options = {});

/// Parses `pos(<atom>).` / `neg(<atom>).` lines.
///
/// Throws SyntaxError, NotGround, DisjointnessViolation or MixedTarget.
ExampleSet parse_examples(std::string_view source);

/// Parses a single atom, optionally terminated by `.`, e.g. a query.
Atom parse_atom(std::string_view source);

/// Parses a single clause terminated by `.`.
Clause parse_clause(std::string_view source);

}  // namespace explikit
