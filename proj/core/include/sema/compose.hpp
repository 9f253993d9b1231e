#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sema/lexicon.hpp"
#include "sema/ontology.hpp"
#include "sema/reduce.hpp"
#include "sema/sexpr.hpp"
#include "sema/term.hpp"
#include "sema/typecheck.hpp"

namespace sema::compose {

/// Binary application tree over lexicon words. The functor precedes its
/// argument, so a transitive verb first meets its object, then its subject.
class SyntaxTree {
 public:
  static SyntaxTree leaf(std::string word);
  static SyntaxTree node(SyntaxTree functor, SyntaxTree argument);

  bool is_leaf() const;
  const std::string& word() const;
  const SyntaxTree& functor() const;
  const SyntaxTree& argument() const;

  std::string str() const;

 private:
  struct Node;
  explicit SyntaxTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Reads `(node TREE TREE)` forms with word atoms at the leaves.
SyntaxTree read_tree(const sexpr::SExpr& e);
SyntaxTree parse_tree(std::string_view src);

/// Position in a tree: 0 descends into the functor, 1 into the argument.
using TreePath = std::vector<int>;
std::string path_str(const TreePath& path);
int compare_paths(const TreePath& a, const TreePath& b);

/// One recorded meaning transfer: which coercion was spliced in, anchored at
/// which word occurrence.
struct CoercionUse {
  std::string anchor;
  std::string name;
  TreePath at;
  bool exclusive = false;
};

int compare_use(const CoercionUse& a, const CoercionUse& b);
int compare_trace(const std::vector<CoercionUse>& a,
                  const std::vector<CoercionUse>& b);
bool trace_respects_exclusivity(const std::vector<CoercionUse>& trace);

struct Config {
  int max_coercion_depth = 3;
  long fuel = kernel::kDefaultFuel;
};

/// A closed normal term of sort t together with the transfers and type
/// instantiations that produced it.
struct Reading {
  kernel::Term term;
  std::vector<CoercionUse> trace;
  std::vector<std::pair<std::string, kernel::Type>> instantiations;
};

class NoReadingError : public std::runtime_error {
 public:
  NoReadingError(TreePath at, const std::string& detail)
      : std::runtime_error("no felicitous reading: " + detail + " (at " +
                           path_str(at) + ")"),
        at_(std::move(at)) {}
  const TreePath& at() const { return at_; }

 private:
  TreePath at_;
};

/// The instantiated composition: tree shape with each leaf replaced by its
/// entry's main term, before any repair or reduction.
class RawComposition {
 public:
  struct Leaf {
    std::string word;
    kernel::Term term;
    TreePath at;
  };

  static RawComposition leaf(Leaf l);
  static RawComposition node(RawComposition functor, RawComposition argument,
                             TreePath at);

  bool is_leaf() const;
  const Leaf& as_leaf() const;
  const RawComposition& functor() const;
  const RawComposition& argument() const;
  const TreePath& at() const;

  /// The naive application term, ignoring type mismatches.
  kernel::Term raw_term() const;
  /// The word anchoring this subtree: the head of its application spine.
  const std::string& anchor_word() const;
  TreePath anchor_path() const;

 private:
  struct Node;
  explicit RawComposition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Splices main terms into the tree. Throws UnknownWordError.
RawComposition instantiate(const SyntaxTree& tree, const lexicon::Lexicon& lex);

/// All felicitous repairs of the instantiated composition that yield a term
/// of sort t: coercion insertions on mismatched applications plus type
/// instantiations of polymorphic constants, filtered for exclusivity.
/// Results are normal-form-free (not yet reduced), duplicate-free, and
/// ordered by trace.
struct Repair {
  kernel::Term term;
  std::vector<CoercionUse> trace;
  std::vector<std::pair<std::string, kernel::Type>> instantiations;
};

std::vector<Repair> repair(const RawComposition& raw, const lexicon::Lexicon& lex,
                           const lexicon::Ontology& ontology,
                           const kernel::Signature& sig, const Config& config = {});

/// instantiate + repair + normalize: every reading of the tree, ordered by
/// trace. Throws NoReadingError when the felicity filter rejects everything.
std::vector<Reading> readings(const SyntaxTree& tree, const lexicon::Lexicon& lex,
                              const lexicon::Ontology& ontology,
                              const kernel::Signature& sig,
                              const Config& config = {});

/// The restricted generic: applies the specimen-of constant at `sort` to a
/// restrictor of type (-> sort t). Throws TypeError on a mismatch.
kernel::Term specimen_read(const kernel::Term& restrictor, const kernel::Type& sort,
                           const kernel::Signature& sig);

}  // namespace sema::compose
