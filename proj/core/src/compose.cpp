#include "sema/compose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <variant>

#include "sema/builtins.hpp"

namespace sema::compose {

using kernel::Term;
using kernel::Type;

// ---------------------------------------------------------------------------
// Trees.

struct SyntaxTree::Node {
  std::string word;  // leaf
  std::optional<std::pair<SyntaxTree, SyntaxTree>> children;
};

SyntaxTree SyntaxTree::leaf(std::string word) {
  return SyntaxTree(
      std::make_shared<const Node>(Node{std::move(word), std::nullopt}));
}
SyntaxTree SyntaxTree::node(SyntaxTree functor, SyntaxTree argument) {
  return SyntaxTree(std::make_shared<const Node>(
      Node{{}, std::make_pair(std::move(functor), std::move(argument))}));
}
bool SyntaxTree::is_leaf() const { return !node_->children.has_value(); }
const std::string& SyntaxTree::word() const { return node_->word; }
const SyntaxTree& SyntaxTree::functor() const { return node_->children->first; }
const SyntaxTree& SyntaxTree::argument() const { return node_->children->second; }

std::string SyntaxTree::str() const {
  if (is_leaf()) return word();
  return "(node " + functor().str() + ' ' + argument().str() + ')';
}

SyntaxTree read_tree(const sexpr::SExpr& e) {
  if (e.is_atom()) return SyntaxTree::leaf(e.atom);
  if (e.headed("node") && e.items.size() == 3)
    return SyntaxTree::node(read_tree(e.items[1]), read_tree(e.items[2]));
  throw sexpr::ParseError(e.line, e.col,
                          "expected a word or (node TREE TREE), got " + e.str());
}

SyntaxTree parse_tree(std::string_view src) {
  return read_tree(sexpr::read_one(src));
}

std::string path_str(const TreePath& path) {
  if (path.empty()) return "/";
  std::string out;
  for (int step : path) out += "/" + std::to_string(step);
  return out;
}

int compare_paths(const TreePath& a, const TreePath& b) {
  if (a == b) return 0;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())
             ? -1
             : 1;
}

int compare_use(const CoercionUse& a, const CoercionUse& b) {
  if (int c = compare_paths(a.at, b.at)) return c;
  if (int c = a.name.compare(b.name)) return c;
  if (int c = a.anchor.compare(b.anchor)) return c;
  return a.exclusive == b.exclusive ? 0 : (a.exclusive ? 1 : -1);
}

int compare_trace(const std::vector<CoercionUse>& a,
                  const std::vector<CoercionUse>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = compare_use(a[i], b[i])) return c;
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool trace_respects_exclusivity(const std::vector<CoercionUse>& trace) {
  // An exclusive transfer tolerates no second transfer on the same word
  // occurrence.
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].exclusive) continue;
    for (std::size_t j = 0; j < trace.size(); ++j) {
      if (j == i) continue;
      if (trace[j].at == trace[i].at && trace[j].anchor == trace[i].anchor)
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// RawComposition.

struct RawComposition::Node {
  std::optional<Leaf> leaf;
  std::optional<std::pair<RawComposition, RawComposition>> children;
  TreePath at;
};

RawComposition RawComposition::leaf(Leaf l) {
  TreePath at = l.at;
  return RawComposition(std::make_shared<const Node>(
      Node{std::move(l), std::nullopt, std::move(at)}));
}
RawComposition RawComposition::node(RawComposition functor,
                                    RawComposition argument, TreePath at) {
  return RawComposition(std::make_shared<const Node>(
      Node{std::nullopt, std::make_pair(std::move(functor), std::move(argument)),
           std::move(at)}));
}
bool RawComposition::is_leaf() const { return node_->leaf.has_value(); }
const RawComposition::Leaf& RawComposition::as_leaf() const {
  return *node_->leaf;
}
const RawComposition& RawComposition::functor() const {
  return node_->children->first;
}
const RawComposition& RawComposition::argument() const {
  return node_->children->second;
}
const TreePath& RawComposition::at() const { return node_->at; }

kernel::Term RawComposition::raw_term() const {
  if (is_leaf()) return as_leaf().term;
  return Term::app(functor().raw_term(), argument().raw_term());
}

const std::string& RawComposition::anchor_word() const {
  const RawComposition* cur = this;
  while (!cur->is_leaf()) cur = &cur->functor();
  return cur->as_leaf().word;
}

TreePath RawComposition::anchor_path() const {
  const RawComposition* cur = this;
  while (!cur->is_leaf()) cur = &cur->functor();
  return cur->as_leaf().at;
}

namespace {
RawComposition instantiate_at(const SyntaxTree& tree, const lexicon::Lexicon& lex,
                              TreePath at) {
  if (tree.is_leaf()) {
    const auto& entry = lex.lookup(tree.word());
    return RawComposition::leaf({entry.word, entry.main, at});
  }
  TreePath fun_at = at, arg_at = at;
  fun_at.push_back(0);
  arg_at.push_back(1);
  RawComposition f = instantiate_at(tree.functor(), lex, std::move(fun_at));
  RawComposition a = instantiate_at(tree.argument(), lex, std::move(arg_at));
  return RawComposition::node(std::move(f), std::move(a), std::move(at));
}
}  // namespace

RawComposition instantiate(const SyntaxTree& tree, const lexicon::Lexicon& lex) {
  return instantiate_at(tree, lex, {});
}

// ---------------------------------------------------------------------------
// Repair: type-driven elaboration with transfer insertion.

namespace {

bool is_meta(const std::string& name) {
  return !name.empty() && name[0] == '?';
}

bool type_has_meta(const Type& t) {
  for (const auto& v : t.free_vars())
    if (is_meta(v)) return true;
  return false;
}

bool term_has_meta(const Term& t) {
  for (const auto& v : t.free_tyvars())
    if (is_meta(v)) return true;
  return false;
}

using Solution = std::map<std::string, Type>;

Type apply_sol(const Solution& sol, Type t) {
  for (const auto& [m, ty] : sol) t = kernel::subst_type(t, m, ty);
  return t;
}

Term apply_sol(const Solution& sol, Term t) {
  for (const auto& [m, ty] : sol) t = kernel::subst_type_in_term(t, m, ty);
  return t;
}

// One-sided matching: metas occur in the pattern only; the target is rigid.
bool match_type(const Type& pattern, const Type& target, Solution& sol) {
  if (pattern.is_free_var() && is_meta(pattern.name())) {
    auto it = sol.find(pattern.name());
    if (it != sol.end()) return it->second == target;
    if (type_has_meta(target)) return false;
    sol.emplace(pattern.name(), target);
    return true;
  }
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::FreeVar:
      return pattern.name() == target.name();
    case Type::Kind::BoundVar:
      return pattern.index() == target.index();
    case Type::Kind::Arrow:
      return match_type(pattern.domain(), target.domain(), sol) &&
             match_type(pattern.codomain(), target.codomain(), sol);
    case Type::Kind::Forall:
      return match_type(pattern.body(), target.body(), sol);
  }
  return false;
}

struct Candidate {
  Term term;
  Type type;
  std::vector<CoercionUse> trace;
  std::vector<std::pair<std::string, Type>> insts;
};

struct Partial {
  Term term;  // may mention metas in type arguments
  Type type;  // may mention metas
  Solution sol;
  std::vector<CoercionUse> trace;
  std::vector<std::pair<std::string, Type>> done_insts;      // from arguments
  std::vector<std::pair<std::string, std::string>> pending;  // (word, meta)
  // Original sort of each consumed argument -> its anchoring occurrence;
  // trailing transfer slots draw their providers from here.
  std::map<std::string, std::pair<std::string, TreePath>> sort_anchor;
};

// A transfer option at one application site.
struct Transfer {
  Term term;  // type (-> from T)
  Type target;
  std::vector<std::string> names;
  bool exclusive;
  std::string anchor;
  TreePath anchor_at;
};

struct Failure {
  int priority;  // higher wins
  TreePath at;
  std::string message;
};

struct Engine {
  const lexicon::Lexicon& lex;
  const lexicon::Ontology& onto;
  const kernel::Signature& sig;
  const Config& config;
  int meta_counter = 0;
  std::vector<Failure> failures;

  std::string fresh_meta() { return "?" + std::to_string(meta_counter++); }

  void fail(int priority, const TreePath& at, std::string msg) {
    failures.push_back({priority, at, std::move(msg)});
  }

  const Failure* best_failure() const {
    const Failure* best = nullptr;
    for (const auto& f : failures) {
      if (!best || f.priority > best->priority ||
          (f.priority == best->priority && f.at.size() > best->at.size()))
        best = &f;
    }
    return best;
  }

  // Every transfer applicable to an argument of sort `from`, anchored either
  // at the argument or at the functor head.
  std::vector<Transfer> transfers_from(const std::string& from,
                                       const RawComposition& arg,
                                       const std::string& head_word,
                                       const TreePath& head_at) {
    std::vector<Transfer> out;
    auto add_lexical = [&](const std::string& word, const TreePath& at) {
      if (!lex.has(word)) return;
      for (const auto& c : lex.lookup(word).coercions) {
        Type ty = kernel::infer_type(c.term);
        if (!ty.is_arrow() || !ty.domain().is_sort() ||
            ty.domain().name() != from || !ty.codomain().is_sort())
          continue;
        out.push_back({c.term, ty.codomain(), {c.name}, c.exclusive, word, at});
      }
    };
    add_lexical(arg.anchor_word(), arg.anchor_path());
    if (head_word != arg.anchor_word()) add_lexical(head_word, head_at);
    if (onto.has_sort(from)) {
      kernel::Signature morphs;
      for (const auto& s : onto.sorts())
        if (s != "t") morphs.declare_sort(s);
      for (const auto& inc : onto.inclusions())
        morphs.declare_const(inc.morphism, Type::arrow(Type::sort(inc.sub),
                                                       Type::sort(inc.super)));
      for (const auto& [target, chain] :
           onto.reachable(from, config.max_coercion_depth)) {
        if (chain.empty()) continue;  // identity is the direct route
        out.push_back({lexicon::chain_term(morphs, from, chain),
                       Type::sort(target), chain, false, arg.anchor_word(),
                       arg.anchor_path()});
      }
    }
    return out;
  }

  void emit_partial(std::vector<Partial>& out, Partial p,
                    const TreePath& site) {
    if (!trace_respects_exclusivity(p.trace)) {
      std::string names;
      for (const auto& u : p.trace)
        if (u.exclusive) names = u.name;
      fail(2, site,
           "exclusive transfer " + names + " conflicts with another transfer "
           "of the same occurrence");
      return;
    }
    out.push_back(std::move(p));
  }

  // Applies one elaborated argument to one partial functor.
  void expand(const Partial& p, const Candidate& ac, const RawComposition& arg,
              const TreePath& app_at, const std::string& head_word,
              const TreePath& head_at, std::vector<Partial>& out) {
    Type ty = apply_sol(p.sol, p.type);
    Term tm = p.term;
    auto pending = p.pending;
    while (ty.is_forall()) {
      std::string m = fresh_meta();
      ty = kernel::open_type(ty.body(), Type::free_var(m), 0);
      tm = Term::tyapp(tm, Type::free_var(m));
      pending.emplace_back(head_word, m);
    }
    if (!ty.is_arrow()) {
      fail(1, app_at,
           "`" + head_word + "` of type " + ty.str() + " takes no argument");
      return;
    }
    Type dom = apply_sol(p.sol, ty.domain());
    Type cod = ty.codomain();
    bool matched = false;

    auto push = [&](Term new_term, Solution sol, std::vector<CoercionUse> uses) {
      Partial np{Term::app(tm, std::move(new_term)), cod, std::move(sol),
                 p.trace, p.done_insts, pending, p.sort_anchor};
      np.trace.insert(np.trace.end(), ac.trace.begin(), ac.trace.end());
      np.trace.insert(np.trace.end(), uses.begin(), uses.end());
      np.done_insts.insert(np.done_insts.end(), ac.insts.begin(), ac.insts.end());
      if (ac.type.is_sort())
        np.sort_anchor[ac.type.name()] = {arg.anchor_word(), arg.anchor_path()};
      matched = true;
      emit_partial(out, std::move(np), app_at);
    };

    {  // direct
      Solution sol = p.sol;
      if (match_type(dom, ac.type, sol)) push(ac.term, std::move(sol), {});
    }
    if (ac.type.is_sort() && !ac.type.is_prop()) {
      for (auto& tr : transfers_from(ac.type.name(), arg, head_word, head_at)) {
        Solution sol = p.sol;
        if (!match_type(dom, tr.target, sol)) continue;
        std::vector<CoercionUse> uses;
        for (const auto& n : tr.names)
          uses.push_back({tr.anchor, n, tr.anchor_at,
                          tr.exclusive && tr.names.size() == 1});
        push(Term::app(tr.term, ac.term), std::move(sol), std::move(uses));
      }
    }
    if (ac.type.is_forall() && !type_has_meta(dom)) {
      // Polymorphic argument against a rigid expectation.
      Type stripped = ac.type;
      Term wrapped = ac.term;
      Solution local;
      std::vector<std::string> arg_metas;
      while (stripped.is_forall()) {
        std::string m = fresh_meta();
        arg_metas.push_back(m);
        stripped = kernel::open_type(stripped.body(), Type::free_var(m), 0);
        wrapped = Term::tyapp(wrapped, Type::free_var(m));
      }
      if (match_type(stripped, dom, local)) {
        bool solved = true;
        for (const auto& m : arg_metas)
          if (!local.count(m)) solved = false;
        if (solved) {
          Solution sol = p.sol;
          push(apply_sol(local, wrapped), std::move(sol), {});
        }
      }
    }
    if (!matched) {
      fail(1, app_at,
           "cannot apply `" + head_word + "` expecting " + dom.str() +
               " to `" + arg.anchor_word() + "` of type " + ac.type.str() +
               ": no coercion or inclusion applies");
    }
  }

  void resolve_candidate(const Partial& p, std::vector<Candidate>& out) {
    Type ty = apply_sol(p.sol, p.type);
    Term tm = apply_sol(p.sol, p.term);
    if (type_has_meta(ty) || term_has_meta(tm)) return;
    std::vector<std::pair<std::string, Type>> insts = p.done_insts;
    for (const auto& [word, meta] : p.pending) {
      auto it = p.sol.find(meta);
      if (it == p.sol.end()) return;  // uninstantiated specialisation
      insts.emplace_back(word, it->second);
    }
    out.push_back({std::move(tm), std::move(ty), p.trace, std::move(insts)});
  }

  // Saturates trailing transfer slots: a remaining domain of shape
  // (-> S1 S2) is filled from the entry anchoring the S1-sorted argument.
  void fill(const Partial& p, bool filled_any, std::vector<Candidate>& out) {
    Type ty = apply_sol(p.sol, p.type);
    if (ty.is_prop()) {
      if (filled_any) resolve_candidate(p, out);
      return;
    }
    if (!ty.is_arrow()) return;
    Type dom = ty.domain();
    if (!dom.is_arrow() || !dom.domain().is_sort()) return;
    const std::string& from = dom.domain().name();
    auto anchor = p.sort_anchor.find(from);
    if (anchor == p.sort_anchor.end()) {
      fail(1, p.trace.empty() ? TreePath{} : p.trace.back().at,
           "no provider for a transfer from " + from);
      return;
    }
    const auto& [anchor_word, anchor_at] = anchor->second;
    if (!lex.has(anchor_word)) return;
    const auto& entry = lex.lookup(anchor_word);

    // Enumerate fill options: identity, lexical coercions, inclusion chains.
    std::vector<lexicon::CoercionCandidate> options;
    {
      std::vector<std::string> targets{from};
      for (const auto& c : entry.coercions) {
        Type cty = kernel::infer_type(c.term);
        if (cty.is_arrow() && cty.domain().is_sort() &&
            cty.domain().name() == from && cty.codomain().is_sort())
          targets.push_back(cty.codomain().name());
      }
      if (onto.has_sort(from))
        for (const auto& [target, chain] :
             onto.reachable(from, config.max_coercion_depth))
          targets.push_back(target);
      std::vector<std::string> seen;
      for (const auto& target : targets) {
        if (std::find(seen.begin(), seen.end(), target) != seen.end()) continue;
        seen.push_back(target);
        if (!onto.has_sort(from) || !onto.has_sort(target)) {
          // Sorts outside the ontology still admit lexical transfers.
          Type wanted = Type::arrow(Type::sort(from), Type::sort(target));
          for (const auto& c : entry.coercions)
            if (kernel::infer_type(c.term) == wanted)
              options.push_back({c.term, {c.name}, c.exclusive, false});
          if (from == target)
            options.push_back({lexicon::chain_term(sig, from, {}), {}, false, true});
          continue;
        }
        auto cands = lexicon::coercion_candidates(entry, onto, from, target,
                                                  config.max_coercion_depth);
        options.insert(options.end(), cands.begin(), cands.end());
      }
    }

    for (const auto& opt : options) {
      Solution sol = p.sol;
      if (!match_type(dom, kernel::infer_type(opt.term), sol)) continue;
      Partial np{Term::app(p.term, opt.term), ty.codomain(), std::move(sol),
                 p.trace, p.done_insts, p.pending, p.sort_anchor};
      for (const auto& n : opt.names)
        np.trace.push_back({anchor_word, n, anchor_at,
                            opt.exclusive && opt.names.size() == 1});
      if (!trace_respects_exclusivity(np.trace)) {
        fail(2, anchor_at,
             "transfers required for `" + anchor_word +
                 "` violate exclusivity");
        continue;
      }
      fill(np, true, out);
    }
  }

  std::vector<Candidate> elaborate(const RawComposition& node) {
    // Decompose the left spine: head leaf plus arguments in order.
    std::vector<std::pair<const RawComposition*, TreePath>> args;
    const RawComposition* cur = &node;
    while (!cur->is_leaf()) {
      args.emplace_back(&cur->argument(), cur->at());
      cur = &cur->functor();
    }
    std::reverse(args.begin(), args.end());
    const auto& head = cur->as_leaf();

    std::vector<Partial> partials;
    partials.push_back(
        {head.term, kernel::type_of(head.term, sig), {}, {}, {}, {}, {}});

    for (const auto& [arg, app_at] : args) {
      std::vector<Candidate> arg_cands = elaborate(*arg);
      std::vector<Partial> next;
      for (const auto& p : partials)
        for (const auto& ac : arg_cands)
          expand(p, ac, *arg, app_at, head.word, head.at, next);
      partials = std::move(next);
      if (partials.empty()) return {};
    }

    std::vector<Candidate> out;
    for (const auto& p : partials) {
      resolve_candidate(p, out);
      fill(p, false, out);
    }
    // Dedup, preserving discovery order.
    std::vector<Candidate> unique;
    for (auto& c : out) {
      bool dup = false;
      for (const auto& u : unique)
        if (u.term == c.term && u.type == c.type &&
            compare_trace(u.trace, c.trace) == 0 && u.insts == c.insts)
          dup = true;
      if (!dup) unique.push_back(std::move(c));
    }
    return unique;
  }
};

int compare_insts(const std::vector<std::pair<std::string, Type>>& a,
                  const std::vector<std::pair<std::string, Type>>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = a[i].first.compare(b[i].first)) return c;
    if (int c = kernel::compare(a[i].second, b[i].second)) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

}  // namespace

std::vector<Repair> repair(const RawComposition& raw, const lexicon::Lexicon& lex,
                           const lexicon::Ontology& ontology,
                           const kernel::Signature& sig, const Config& config) {
  Engine engine{lex, ontology, sig, config, 0, {}};
  std::vector<Candidate> cands = engine.elaborate(raw);
  std::vector<Repair> out;
  for (auto& c : cands)
    if (c.type.is_prop())
      out.push_back({std::move(c.term), std::move(c.trace), std::move(c.insts)});
  if (out.empty()) {
    if (const Failure* f = engine.best_failure())
      throw NoReadingError(f->at, f->message);
    throw NoReadingError({}, "the composition does not reach the sort t");
  }
  std::stable_sort(out.begin(), out.end(), [](const Repair& a, const Repair& b) {
    if (int c = compare_trace(a.trace, b.trace)) return c < 0;
    if (int c = kernel::compare(a.term, b.term)) return c < 0;
    return compare_insts(a.instantiations, b.instantiations) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Repair& a, const Repair& b) {
                          return a.term == b.term &&
                                 compare_trace(a.trace, b.trace) == 0 &&
                                 compare_insts(a.instantiations,
                                               b.instantiations) == 0;
                        }),
            out.end());
  return out;
}

std::vector<Reading> readings(const SyntaxTree& tree, const lexicon::Lexicon& lex,
                              const lexicon::Ontology& ontology,
                              const kernel::Signature& sig, const Config& config) {
  RawComposition raw = instantiate(tree, lex);
  std::vector<Repair> repairs = repair(raw, lex, ontology, sig, config);
  std::vector<Reading> out;
  for (auto& r : repairs) {
    kernel::NormalizeResult nf = kernel::normalize(r.term, config.fuel);
    Reading reading{std::move(nf.term), std::move(r.trace),
                    std::move(r.instantiations)};
    if (!reading.term.closed() || !reading.term.free_vars().empty() ||
        !reading.term.is_normal() ||
        kernel::type_of(reading.term, sig) != Type::prop())
      throw kernel::TypeError(kernel::TypeErrorKind::IllFormed,
                              "reading failed its closure invariants");
    bool dup = false;
    for (const auto& prev : out)
      if (prev.term == reading.term &&
          compare_trace(prev.trace, reading.trace) == 0 &&
          compare_insts(prev.instantiations, reading.instantiations) == 0)
        dup = true;
    if (!dup) out.push_back(std::move(reading));
  }
  return out;
}

kernel::Term specimen_read(const kernel::Term& restrictor, const kernel::Type& sort,
                           const kernel::Signature& sig) {
  Type expected = Type::arrow(sort, Type::prop());
  Type actual = kernel::type_of(restrictor, sig);
  if (actual != expected)
    throw kernel::TypeError(kernel::TypeErrorKind::TypeMismatch,
                            "restrictor has type " + actual.str() +
                                ", expected " + expected.str());
  Term chooser = Term::constant(builtin::kSpecimenOf,
                                sig.const_type(builtin::kSpecimenOf));
  return Term::app(Term::tyapp(chooser, sort), restrictor);
}

}  // namespace sema::compose
