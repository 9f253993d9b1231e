#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sema/ontology.hpp"
#include "sema/term.hpp"
#include "sema/typecheck.hpp"

namespace sema::lexicon {

class UnknownWordError : public std::runtime_error {
 public:
  explicit UnknownWordError(const std::string& word)
      : std::runtime_error("unknown word " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An optional meaning transfer of an entry. The display name may differ
/// from the constant the term is built from. Exclusive transfers are
/// incompatible with any other transfer of the same word occurrence.
struct Coercion {
  std::string name;
  kernel::Term term;  // functional type
  bool exclusive = false;
};

struct LexEntry {
  std::string word;
  kernel::Term main;
  std::vector<Coercion> coercions;
};

class Lexicon {
 public:
  void add(LexEntry entry);
  bool has(const std::string& word) const;
  const LexEntry& lookup(const std::string& word) const;  // throws UnknownWordError
  const std::map<std::string, LexEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, LexEntry> entries_;
};

/// One way to turn a `from`-object into a `to`-object: either a lexical
/// coercion of the entry, a composite of inclusion morphisms, or the
/// identity when the sorts agree. `names` lists the uses to record,
/// innermost first; the identity has none.
struct CoercionCandidate {
  kernel::Term term;  // type (-> from to)
  std::vector<std::string> names;
  bool exclusive = false;
  bool identity = false;
};

/// Lexical coercions of `entry` typed (-> from to) first (in entry order),
/// then the inclusion chain, with the identity counting as the empty chain.
std::vector<CoercionCandidate> coercion_candidates(const LexEntry& entry,
                                                   const Ontology& ontology,
                                                   const std::string& from,
                                                   const std::string& to,
                                                   int max_depth = 3);

/// Builds the composite morphism term for an inclusion chain.
kernel::Term chain_term(const kernel::Signature& sig, const std::string& from,
                        const std::vector<std::string>& chain);

/// A parsed lexicon bundle: directives extend the builtin signature.
struct LoadResult {
  kernel::Signature signature;
  Ontology ontology;
  Lexicon lexicon;
};

/// Loads `(sort ..)`, `(incl ..)`, `(const ..)` and `(word ..)` directives.
/// Sources may split the directives arbitrarily; sorts are processed first,
/// then constants and inclusions, then words.
LoadResult load_sources(const std::vector<std::string>& sources);

}  // namespace sema::lexicon
