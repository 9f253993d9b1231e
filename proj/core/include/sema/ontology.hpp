#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sema::lexicon {

class OntologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inclusion {
  std::string sub;
  std::string super;
  std::string morphism;
};

/// The registry of entity sorts and the directed, acyclic graph of
/// inclusions between them. Each inclusion edge names the morphism constant
/// that materializes it in terms.
class Ontology {
 public:
  void add_sort(const std::string& name);
  bool has_sort(const std::string& name) const;
  const std::set<std::string>& sorts() const { return sorts_; }

  /// Both sorts must be registered; rejects edges that would close a cycle.
  void add_inclusion(const std::string& sub, const std::string& super,
                     const std::string& morphism);

  const std::vector<Inclusion>& inclusions() const { return inclusions_; }
  std::set<std::string> inclusion_morphisms() const;

  /// Shortest composition path of inclusion morphisms, innermost first.
  /// Empty path when from == to; nothing when unreachable within max_len.
  std::optional<std::vector<std::string>> inclusion_chain(
      const std::string& from, const std::string& to, int max_len = 3) const;

  /// All sorts reachable from `from` with their shortest chains, ordered by
  /// chain length then by morphism names. Includes `from` with [].
  std::vector<std::pair<std::string, std::vector<std::string>>> reachable(
      const std::string& from, int max_len = 3) const;

 private:
  std::set<std::string> sorts_;
  std::vector<Inclusion> inclusions_;
};

}  // namespace sema::lexicon
