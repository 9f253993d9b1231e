#include "sema/lexicon.hpp"

#include "sema/builtins.hpp"
#include "sema/sexpr.hpp"

namespace sema::lexicon {

using kernel::Term;
using kernel::Type;

void Lexicon::add(LexEntry entry) {
  if (entry.word.empty()) throw LexiconError("empty word");
  auto [it, inserted] = entries_.emplace(entry.word, std::move(entry));
  if (!inserted) throw LexiconError("duplicate word " + it->first);
}

bool Lexicon::has(const std::string& word) const {
  return entries_.count(word) != 0;
}

const LexEntry& Lexicon::lookup(const std::string& word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) throw UnknownWordError(word);
  return it->second;
}

kernel::Term chain_term(const kernel::Signature& sig, const std::string& from,
                        const std::vector<std::string>& chain) {
  Type dom = Type::sort(from);
  if (chain.empty())
    return Term::lam("x", dom, Term::var("x", dom));
  if (chain.size() == 1)
    return Term::constant(chain[0], sig.const_type(chain[0]));
  Term acc = Term::var("x", dom);
  for (const auto& morph : chain)
    acc = Term::app(Term::constant(morph, sig.const_type(morph)), acc);
  return Term::lam("x", dom, acc);
}

std::vector<CoercionCandidate> coercion_candidates(const LexEntry& entry,
                                                   const Ontology& ontology,
                                                   const std::string& from,
                                                   const std::string& to,
                                                   int max_depth) {
  if (!ontology.has_sort(from)) throw OntologyError("unknown sort " + from);
  if (!ontology.has_sort(to)) throw OntologyError("unknown sort " + to);

  std::vector<CoercionCandidate> out;
  Type wanted = Type::arrow(Type::sort(from), Type::sort(to));
  for (const auto& c : entry.coercions) {
    if (kernel::infer_type(c.term) == wanted)
      out.push_back({c.term, {c.name}, c.exclusive, false});
  }
  if (from == to) {
    Type dom = Type::sort(from);
    out.push_back({Term::lam("x", dom, Term::var("x", dom)), {}, false, true});
    return out;
  }
  if (auto chain = ontology.inclusion_chain(from, to, max_depth)) {
    // Morphism constants recover their types from their inclusion edges.
    kernel::Signature morphs;
    for (const auto& s : ontology.sorts())
      if (s != "t") morphs.declare_sort(s);
    for (const auto& inc : ontology.inclusions())
      morphs.declare_const(inc.morphism,
                           Type::arrow(Type::sort(inc.sub), Type::sort(inc.super)));
    out.push_back({chain_term(morphs, from, *chain), *chain, false, false});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Directive loading.

namespace {

using sexpr::SExpr;

[[noreturn]] void fail(const SExpr& e, const std::string& msg) {
  throw LexiconError("lexicon: " + msg + " in " + e.str());
}

const std::string& atom(const SExpr& e, std::size_t i, const char* what) {
  if (i >= e.items.size() || !e.items[i].is_atom())
    fail(e, std::string("expected ") + what);
  return e.items[i].atom;
}

Coercion read_coercion(const SExpr& form, const sexpr::ReadContext& ctx) {
  if (!form.is_list() || form.items.size() < 2)
    fail(form, "coercion needs a name and a term");
  Coercion c{atom(form, 0, "coercion name"),
             sexpr::read_term(form.items[1], ctx), false};
  for (std::size_t i = 2; i < form.items.size(); ++i) {
    if (form.items[i].is_atom() && form.items[i].atom == ":exclusive")
      c.exclusive = true;
    else
      fail(form, "unknown coercion attribute");
  }
  if (!c.term.free_vars().empty() || !c.term.closed())
    fail(form, "coercion " + c.name + " is not closed");
  Type ty = kernel::infer_type(c.term);
  if (!ty.is_arrow())
    fail(form, "coercion " + c.name + " is not functional: " + ty.str());
  return c;
}

LexEntry read_word(const SExpr& form, const sexpr::ReadContext& ctx,
                   const kernel::Signature& sig) {
  std::string word = atom(form, 1, "word name");
  std::optional<Term> main;
  std::vector<Coercion> coercions;
  std::size_t i = 2;
  while (i < form.items.size()) {
    const std::string& key = atom(form, i, "keyword");
    if (key == ":main") {
      if (i + 1 >= form.items.size()) fail(form, ":main needs a term");
      main = sexpr::read_term(form.items[i + 1], ctx);
      i += 2;
    } else if (key == ":coercion") {
      if (i + 1 >= form.items.size()) fail(form, ":coercion needs a form");
      coercions.push_back(read_coercion(form.items[i + 1], ctx));
      i += 2;
    } else {
      fail(form, "unknown keyword " + key);
    }
  }
  if (!main) fail(form, "word " + word + " has no :main term");
  if (!main->free_vars().empty() || !main->closed())
    fail(form, "main term of " + word + " is not closed");
  kernel::type_of(*main, sig);  // rejects ill-typed entries
  return LexEntry{std::move(word), *std::move(main), std::move(coercions)};
}

}  // namespace

LoadResult load_sources(const std::vector<std::string>& sources) {
  std::vector<SExpr> forms;
  for (const auto& src : sources) {
    auto parsed = sexpr::read_all(src);
    forms.insert(forms.end(), parsed.begin(), parsed.end());
  }

  LoadResult out{builtin::signature(), {}, {}};
  out.ontology.add_sort(builtin::kFloat);

  for (const auto& f : forms) {
    if (f.headed("sort")) {
      const std::string& name = atom(f, 1, "sort name");
      out.signature.declare_sort(name);
      out.ontology.add_sort(name);
    } else if (!f.is_list() || f.items.empty() || !f.items[0].is_atom()) {
      fail(f, "expected a directive list");
    }
  }
  sexpr::ReadContext ctx{&out.signature, &builtin::definitions()};
  for (const auto& f : forms) {
    if (f.headed("const")) {
      if (f.items.size() != 3) fail(f, "const needs a name and a type");
      const std::string& name = atom(f, 1, "constant name");
      out.signature.declare_const(name, sexpr::read_type(f.items[2], ctx));
    } else if (f.headed("incl")) {
      if (f.items.size() != 4) fail(f, "incl needs sub, super, and a morphism");
      const std::string& sub = atom(f, 1, "sort");
      const std::string& super = atom(f, 2, "sort");
      const std::string& morph = atom(f, 3, "morphism name");
      out.signature.declare_const(
          morph, Type::arrow(Type::sort(sub), Type::sort(super)));
      out.ontology.add_inclusion(sub, super, morph);
    }
  }
  for (const auto& f : forms) {
    if (f.headed("word"))
      out.lexicon.add(read_word(f, ctx, out.signature));
    else if (!f.headed("sort") && !f.headed("const") && !f.headed("incl"))
      fail(f, "unknown directive " + f.items[0].atom);
  }
  return out;
}

}  // namespace sema::lexicon
