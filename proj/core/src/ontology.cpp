#include "sema/ontology.hpp"

#include <algorithm>
#include <map>

namespace sema::lexicon {

void Ontology::add_sort(const std::string& name) {
  if (name.empty()) throw OntologyError("empty sort name");
  sorts_.insert(name);
}

bool Ontology::has_sort(const std::string& name) const {
  return sorts_.count(name) != 0;
}

void Ontology::add_inclusion(const std::string& sub, const std::string& super,
                             const std::string& morphism) {
  if (!has_sort(sub)) throw OntologyError("unknown sort " + sub);
  if (!has_sort(super)) throw OntologyError("unknown sort " + super);
  if (sub == super) throw OntologyError("inclusion " + sub + " into itself");
  for (const auto& inc : inclusions_)
    if (inc.morphism == morphism)
      throw OntologyError("duplicate inclusion morphism " + morphism);
  // Adding sub -> super closes a cycle iff sub is reachable from super.
  if (inclusion_chain(super, sub, static_cast<int>(sorts_.size())))
    throw OntologyError("inclusion " + sub + " into " + super +
                        " would create a cycle");
  inclusions_.push_back({sub, super, morphism});
}

std::set<std::string> Ontology::inclusion_morphisms() const {
  std::set<std::string> out;
  for (const auto& inc : inclusions_) out.insert(inc.morphism);
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>>
Ontology::reachable(const std::string& from, int max_len) const {
  if (!has_sort(from)) throw OntologyError("unknown sort " + from);

  // Edges sorted by (super, morphism) so breadth-first discovery settles
  // ties on shortest chains deterministically.
  std::multimap<std::string, std::pair<std::string, std::string>> edges;
  for (const auto& inc : inclusions_)
    edges.emplace(inc.sub, std::make_pair(inc.super, inc.morphism));

  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::map<std::string, std::vector<std::string>> best;
  best[from] = {};
  std::vector<std::string> frontier{from};
  out.emplace_back(from, std::vector<std::string>{});
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::string> next;
    for (const auto& node : frontier) {
      auto [lo, hi] = edges.equal_range(node);
      std::vector<std::pair<std::string, std::string>> outs;
      for (auto it = lo; it != hi; ++it) outs.push_back(it->second);
      std::sort(outs.begin(), outs.end());
      for (const auto& [super, morph] : outs) {
        if (best.count(super)) continue;
        auto chain = best[node];
        chain.push_back(morph);
        best[super] = chain;
        out.emplace_back(super, chain);
        next.push_back(super);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<std::vector<std::string>> Ontology::inclusion_chain(
    const std::string& from, const std::string& to, int max_len) const {
  if (!has_sort(to)) throw OntologyError("unknown sort " + to);
  for (const auto& [sort, chain] : reachable(from, max_len))
    if (sort == to) return chain;
  return std::nullopt;
}

}  // namespace sema::lexicon
