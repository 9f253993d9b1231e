#include "sema/hol.hpp"

#include <variant>

#include "sema/builtins.hpp"
#include "sema/sexpr.hpp"

namespace sema::hol {

using kernel::Term;
using kernel::Type;

// ---------------------------------------------------------------------------
// Nodes.

namespace {
struct IndividualV {
  std::string name;
  Type sort;
};
struct GenericV {
  std::string name;
  Type sort;
  HolTerm::Origin origin;
};
struct FunAppV {
  std::string morphism;
  HolTerm arg;
};
}  // namespace

struct HolTerm::Node {
  std::variant<IndividualV, GenericV, FunAppV> v;
};

HolTerm HolTerm::individual(std::string name, Type sort) {
  return HolTerm(std::make_shared<const Node>(
      Node{IndividualV{std::move(name), std::move(sort)}}));
}
HolTerm HolTerm::number(std::string literal) {
  return individual(std::move(literal), Type::sort(builtin::kFloat));
}
HolTerm HolTerm::generic(std::string name, Type sort, Origin origin) {
  return HolTerm(std::make_shared<const Node>(
      Node{GenericV{std::move(name), std::move(sort), origin}}));
}
HolTerm HolTerm::fun_app(std::string morphism, HolTerm arg) {
  return HolTerm(std::make_shared<const Node>(
      Node{FunAppV{std::move(morphism), std::move(arg)}}));
}

HolTerm::Kind HolTerm::kind() const { return static_cast<Kind>(node_->v.index()); }

const std::string& HolTerm::name() const {
  switch (kind()) {
    case Kind::Individual: return std::get<IndividualV>(node_->v).name;
    case Kind::Generic: return std::get<GenericV>(node_->v).name;
    case Kind::FunApp: return std::get<FunAppV>(node_->v).morphism;
  }
  return std::get<IndividualV>(node_->v).name;
}
const Type& HolTerm::sort() const {
  if (auto* i = std::get_if<IndividualV>(&node_->v)) return i->sort;
  return std::get<GenericV>(node_->v).sort;
}
HolTerm::Origin HolTerm::origin() const {
  return std::get<GenericV>(node_->v).origin;
}
const HolTerm& HolTerm::arg() const { return std::get<FunAppV>(node_->v).arg; }

int compare(const HolTerm& a, const HolTerm& b) {
  if (a.node_ == b.node_) return 0;
  int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case HolTerm::Kind::Individual: {
      if (int c = a.name().compare(b.name())) return c;
      return kernel::compare(a.sort(), b.sort());
    }
    case HolTerm::Kind::Generic: {
      if (int c = a.name().compare(b.name())) return c;
      if (int c = kernel::compare(a.sort(), b.sort())) return c;
      int oa = static_cast<int>(a.origin()), ob = static_cast<int>(b.origin());
      return oa == ob ? 0 : (oa < ob ? -1 : 1);
    }
    case HolTerm::Kind::FunApp: {
      if (int c = a.name().compare(b.name())) return c;
      return compare(a.arg(), b.arg());
    }
  }
  return 0;
}

namespace {
struct PredV {
  std::string name;
  std::vector<Type> signature;
  std::vector<HolTerm> args;
};
struct ConnV {
  Formula::ConnKind kind;
  std::vector<Formula> operands;
};
struct QuantV {
  Formula::QuantKind kind;
  std::string var;
  Type sort;
  std::shared_ptr<const Formula> body;
};
struct CmpV {
  Formula::CmpKind kind;
  HolTerm left;
  HolTerm right;
};
}  // namespace

struct Formula::Node {
  std::variant<PredV, ConnV, QuantV, CmpV> v;
};

Formula Formula::pred(std::string name, std::vector<Type> signature,
                      std::vector<HolTerm> args) {
  return Formula(std::make_shared<const Node>(
      Node{PredV{std::move(name), std::move(signature), std::move(args)}}));
}
Formula Formula::conn(ConnKind kind, std::vector<Formula> operands) {
  return Formula(
      std::make_shared<const Node>(Node{ConnV{kind, std::move(operands)}}));
}
Formula Formula::quant(QuantKind kind, std::string var, Type sort, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{QuantV{kind, std::move(var), std::move(sort),
                  std::make_shared<const Formula>(std::move(body))}}));
}
Formula Formula::cmp(CmpKind kind, HolTerm left, HolTerm right) {
  return Formula(std::make_shared<const Node>(
      Node{CmpV{kind, std::move(left), std::move(right)}}));
}

Formula::Kind Formula::kind() const { return static_cast<Kind>(node_->v.index()); }

const std::string& Formula::pred_name() const {
  return std::get<PredV>(node_->v).name;
}
const std::vector<Type>& Formula::pred_signature() const {
  return std::get<PredV>(node_->v).signature;
}
const std::vector<HolTerm>& Formula::pred_args() const {
  return std::get<PredV>(node_->v).args;
}
Formula::ConnKind Formula::conn_kind() const {
  return std::get<ConnV>(node_->v).kind;
}
const std::vector<Formula>& Formula::operands() const {
  return std::get<ConnV>(node_->v).operands;
}
Formula::QuantKind Formula::quant_kind() const {
  return std::get<QuantV>(node_->v).kind;
}
const std::string& Formula::quant_var() const {
  return std::get<QuantV>(node_->v).var;
}
const Type& Formula::quant_sort() const { return std::get<QuantV>(node_->v).sort; }
const Formula& Formula::body() const { return *std::get<QuantV>(node_->v).body; }
Formula::CmpKind Formula::cmp_kind() const { return std::get<CmpV>(node_->v).kind; }
const HolTerm& Formula::left() const { return std::get<CmpV>(node_->v).left; }
const HolTerm& Formula::right() const { return std::get<CmpV>(node_->v).right; }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Formula::Kind::Pred: {
      if (int c = a.pred_name().compare(b.pred_name())) return c;
      if (a.pred_signature().size() != b.pred_signature().size())
        return a.pred_signature().size() < b.pred_signature().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.pred_signature().size(); ++i)
        if (int c = kernel::compare(a.pred_signature()[i], b.pred_signature()[i]))
          return c;
      if (a.pred_args().size() != b.pred_args().size())
        return a.pred_args().size() < b.pred_args().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.pred_args().size(); ++i)
        if (int c = compare(a.pred_args()[i], b.pred_args()[i])) return c;
      return 0;
    }
    case Formula::Kind::Conn: {
      int ca = static_cast<int>(a.conn_kind()), cb = static_cast<int>(b.conn_kind());
      if (ca != cb) return ca < cb ? -1 : 1;
      if (a.operands().size() != b.operands().size())
        return a.operands().size() < b.operands().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.operands().size(); ++i)
        if (int c = compare(a.operands()[i], b.operands()[i])) return c;
      return 0;
    }
    case Formula::Kind::Quant: {
      int qa = static_cast<int>(a.quant_kind()), qb = static_cast<int>(b.quant_kind());
      if (qa != qb) return qa < qb ? -1 : 1;
      if (int c = a.quant_var().compare(b.quant_var())) return c;
      if (int c = kernel::compare(a.quant_sort(), b.quant_sort())) return c;
      return compare(a.body(), b.body());
    }
    case Formula::Kind::Cmp: {
      int ca = static_cast<int>(a.cmp_kind()), cb = static_cast<int>(b.cmp_kind());
      if (ca != cb) return ca < cb ? -1 : 1;
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Extraction.

namespace {

[[noreturn]] void not_a_proposition(const Term& t) {
  throw HolError("not a proposition: " + t.str());
}
[[noreturn]] void unsortable(const Term& t) {
  throw HolError("unsortable term: " + t.str());
}

struct Converter {
  const kernel::Signature& sig;
  int generic_counter = 0;
  int placeholder_counter = 0;
  std::map<std::string, HolTerm> placeholders;
  std::set<std::string> bound_names;
  std::vector<GenericInfo> generics;
  std::vector<Formula> facts;

  std::string fresh_generic() {
    ++generic_counter;
    return generic_counter == 1 ? "s" : "s" + std::to_string(generic_counter);
  }

  std::string fresh_bound(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    if (!bound_names.count(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!bound_names.count(cand)) return cand;
    }
  }

  // P applied to a subject already rendered as a HOL term.
  Formula apply_pred(const Term& pred, const HolTerm& subject, const Type& sort) {
    std::string ph = "\x01ph" + std::to_string(placeholder_counter++);
    Term v = Term::var(ph, sort);
    placeholders.emplace(ph, subject);
    Term applied = pred.is_abs() ? kernel::open_term(pred.body(), v)
                                 : Term::app(pred, v);
    Formula out = prop(applied);
    placeholders.erase(ph);
    return out;
  }

  Formula prop(const Term& t) {
    auto [head, items] = kernel::spine(t);
    if (!head.is_const()) not_a_proposition(t);
    const std::string& name = head.name();

    auto term_arg = [&](std::size_t i) -> const Term& {
      if (i >= items.size() || !std::holds_alternative<Term>(items[i]))
        not_a_proposition(t);
      return std::get<Term>(items[i]);
    };
    auto type_arg = [&](std::size_t i) -> const Type& {
      if (i >= items.size() || !std::holds_alternative<Type>(items[i]))
        not_a_proposition(t);
      return std::get<Type>(items[i]);
    };

    if (name == builtin::kAnd || name == builtin::kOr || name == builtin::kImpl) {
      if (items.size() != 2) not_a_proposition(t);
      Formula::ConnKind k = name == builtin::kAnd ? Formula::ConnKind::And
                            : name == builtin::kOr ? Formula::ConnKind::Or
                                                   : Formula::ConnKind::Implies;
      return Formula::conn(k, {prop(term_arg(0)), prop(term_arg(1))});
    }
    if (name == builtin::kNot) {
      if (items.size() != 1) not_a_proposition(t);
      return Formula::conn(Formula::ConnKind::Not, {prop(term_arg(0))});
    }
    if (name == builtin::kLt || name == builtin::kLeq) {
      if (items.size() != 2) not_a_proposition(t);
      Formula::CmpKind k =
          name == builtin::kLt ? Formula::CmpKind::Lt : Formula::CmpKind::Leq;
      return Formula::cmp(k, term(term_arg(0)), term(term_arg(1)));
    }
    if (name == builtin::kForall || name == builtin::kExists) {
      if (items.size() != 2) not_a_proposition(t);
      const Type& sort = type_arg(0);
      const Term& pred = term_arg(1);
      std::string var =
          fresh_bound(pred.is_abs() ? pred.binder_hint() : std::string("x"));
      bound_names.insert(var);
      Formula body = apply_pred(pred, HolTerm::individual(var, sort), sort);
      bound_names.erase(var);
      Formula::QuantKind k = name == builtin::kForall ? Formula::QuantKind::Forall
                                                      : Formula::QuantKind::Exists;
      return Formula::quant(k, var, sort, std::move(body));
    }

    // Plain predicate constant, possibly specialised.
    if (!sig.has_const(name)) not_a_proposition(t);
    Type ty = sig.const_type(name);
    std::vector<Type> domains;
    std::vector<HolTerm> args;
    for (const auto& item : items) {
      if (std::holds_alternative<Type>(item)) {
        if (!ty.is_forall()) not_a_proposition(t);
        ty = kernel::open_type(ty.body(), std::get<Type>(item), 0);
      } else {
        if (!ty.is_arrow()) not_a_proposition(t);
        domains.push_back(ty.domain());
        args.push_back(term(std::get<Term>(item)));
        ty = ty.codomain();
      }
    }
    if (!ty.is_prop()) not_a_proposition(t);
    return Formula::pred(name, std::move(domains), std::move(args));
  }

  HolTerm term(const Term& t) {
    auto [head, items] = kernel::spine(t);
    if (head.is_free_var()) {
      auto it = placeholders.find(head.name());
      if (it == placeholders.end() || !items.empty()) unsortable(t);
      return it->second;
    }
    if (!head.is_const()) unsortable(t);
    const std::string& name = head.name();

    if (name == builtin::kSpecimen) {
      if (items.size() != 1 || !std::holds_alternative<Type>(items[0]))
        unsortable(t);
      const Type& sort = std::get<Type>(items[0]);
      std::string g = fresh_generic();
      generics.push_back({g, sort, HolTerm::Origin::Bare, std::nullopt});
      return HolTerm::generic(g, sort, HolTerm::Origin::Bare);
    }
    if (name == builtin::kSpecimenOf || name == builtin::kIota) {
      if (items.size() != 2 || !std::holds_alternative<Type>(items[0]) ||
          !std::holds_alternative<Term>(items[1]))
        unsortable(t);
      const Type& sort = std::get<Type>(items[0]);
      std::string g = fresh_generic();
      HolTerm ref = HolTerm::generic(g, sort, HolTerm::Origin::Restricted);
      Formula restrictor = apply_pred(std::get<Term>(items[1]), ref, sort);
      generics.push_back({g, sort, HolTerm::Origin::Restricted, restrictor});
      // The specimen of a restricted class satisfies its restrictor.
      if (name == builtin::kSpecimenOf) facts.push_back(restrictor);
      return ref;
    }
    if (!sig.has_const(name)) unsortable(t);
    const Type& ty = sig.const_type(name);
    if (items.empty()) {
      if (!ty.is_sort()) unsortable(t);
      return HolTerm::individual(name, ty);
    }
    if (items.size() == 1 && std::holds_alternative<Term>(items[0]) &&
        ty.is_arrow() && ty.domain().is_sort() && ty.codomain().is_sort())
      return HolTerm::fun_app(name, term(std::get<Term>(items[0])));
    unsortable(t);
  }
};

}  // namespace

ReadingFormula to_formula(const compose::Reading& reading,
                          const kernel::Signature& sig) {
  Converter conv{sig, 0, 0, {}, {}, {}, {}};
  Formula matrix = conv.prop(reading.term);
  for (auto it = conv.facts.rbegin(); it != conv.facts.rend(); ++it)
    matrix = Formula::conn(Formula::ConnKind::And, {*it, std::move(matrix)});
  return {std::move(matrix), std::move(conv.generics)};
}

// ---------------------------------------------------------------------------
// Printing.

namespace {
std::string sort_str(const Type& t) {
  return t.is_sort() ? t.name() : t.str();
}
}  // namespace

std::string pretty(const HolTerm& term, const PrettyOptions& opts) {
  switch (term.kind()) {
    case HolTerm::Kind::Individual:
      return term.name();
    case HolTerm::Kind::Generic:
      return term.origin() == HolTerm::Origin::Bare
                 ? "⪍_" + sort_str(term.sort())
                 : term.name();
    case HolTerm::Kind::FunApp:
      if (opts.elide_inclusions && opts.inclusion_morphisms.count(term.name()))
        return pretty(term.arg(), opts);
      return term.name() + "(" + pretty(term.arg(), opts) + ")";
  }
  return "?";
}

namespace {
std::string pretty_wrapped(const Formula& f, const PrettyOptions& opts) {
  std::string s = pretty(f, opts);
  if (f.is_pred()) return s;
  return "(" + s + ")";
}
}  // namespace

std::string pretty(const Formula& formula, const PrettyOptions& opts) {
  switch (formula.kind()) {
    case Formula::Kind::Pred: {
      if (formula.pred_args().empty()) return formula.pred_name();
      std::string out = formula.pred_name() + "(";
      for (std::size_t i = 0; i < formula.pred_args().size(); ++i) {
        if (i) out += ", ";
        out += pretty(formula.pred_args()[i], opts);
      }
      return out + ")";
    }
    case Formula::Kind::Conn: {
      const auto& ops = formula.operands();
      switch (formula.conn_kind()) {
        case Formula::ConnKind::Not:
          return "¬" + pretty_wrapped(ops[0], opts);
        case Formula::ConnKind::And:
          return pretty_wrapped(ops[0], opts) + " ∧ " +
                 pretty_wrapped(ops[1], opts);
        case Formula::ConnKind::Or:
          return pretty_wrapped(ops[0], opts) + " ∨ " +
                 pretty_wrapped(ops[1], opts);
        case Formula::ConnKind::Implies:
          return pretty_wrapped(ops[0], opts) + " ⇒ " +
                 pretty_wrapped(ops[1], opts);
      }
      return "?";
    }
    case Formula::Kind::Quant: {
      const char* q = formula.quant_kind() == Formula::QuantKind::Forall
                          ? "∀"
                          : "∃";
      return std::string(q) + formula.quant_var() + ":" +
             sort_str(formula.quant_sort()) + ". " + pretty(formula.body(), opts);
    }
    case Formula::Kind::Cmp: {
      const char* op =
          formula.cmp_kind() == Formula::CmpKind::Lt ? " < " : " ≤ ";
      return pretty(formula.left(), opts) + op + pretty(formula.right(), opts);
    }
  }
  return "?";
}

namespace {
std::string term_sexpr(const HolTerm& t) {
  switch (t.kind()) {
    case HolTerm::Kind::Individual:
    case HolTerm::Kind::Generic:
      return t.name();
    case HolTerm::Kind::FunApp:
      return "(fun " + t.name() + " " + term_sexpr(t.arg()) + ")";
  }
  return "?";
}
}  // namespace

std::string to_sexpr(const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::Pred: {
      std::string out = "(pred " + formula.pred_name() + " (";
      for (std::size_t i = 0; i < formula.pred_args().size(); ++i) {
        if (i) out += ' ';
        out += term_sexpr(formula.pred_args()[i]);
      }
      return out + "))";
    }
    case Formula::Kind::Conn: {
      const char* head = nullptr;
      switch (formula.conn_kind()) {
        case Formula::ConnKind::And: head = "and"; break;
        case Formula::ConnKind::Or: head = "or"; break;
        case Formula::ConnKind::Implies: head = "implies"; break;
        case Formula::ConnKind::Not: head = "not"; break;
      }
      std::string out = std::string("(") + head;
      for (const auto& op : formula.operands()) out += ' ' + to_sexpr(op);
      return out + ")";
    }
    case Formula::Kind::Quant: {
      const char* head =
          formula.quant_kind() == Formula::QuantKind::Forall ? "forall" : "exists";
      return std::string("(") + head + ' ' + formula.quant_var() + ' ' +
             formula.quant_sort().str() + ' ' + to_sexpr(formula.body()) + ')';
    }
    case Formula::Kind::Cmp: {
      const char* head =
          formula.cmp_kind() == Formula::CmpKind::Lt ? "lt" : "leq";
      return std::string("(") + head + ' ' + term_sexpr(formula.left()) + ' ' +
             term_sexpr(formula.right()) + ')';
    }
  }
  return "?";
}

std::string to_sexpr(const ReadingFormula& reading) {
  std::string out = "(reading (generics";
  for (const auto& g : reading.generics) {
    out += " (generic " + g.name + ' ' + g.sort.str();
    if (g.origin == HolTerm::Origin::Restricted && g.restrictor)
      out += " :restrictor " + to_sexpr(*g.restrictor);
    out += ')';
  }
  out += ") (formula " + to_sexpr(reading.formula) + "))";
  return out;
}

// ---------------------------------------------------------------------------
// Re-reading structured output.

namespace {

using sexpr::SExpr;

struct FormulaReader {
  const kernel::Signature& sig;
  std::map<std::string, GenericInfo> table;
  std::map<std::string, Type> scope;

  [[noreturn]] void fail(const SExpr& e, const std::string& msg) const {
    throw HolError("formula: " + msg + " in " + e.str());
  }

  bool numeral(const std::string& s) const {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    bool digit = false, dot = false;
    for (; i < s.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(s[i]))) digit = true;
      else if (s[i] == '.' && !dot) dot = true;
      else return false;
    }
    return digit;
  }

  HolTerm term(const SExpr& e) {
    if (e.is_atom()) {
      auto g = table.find(e.atom);
      if (g != table.end())
        return HolTerm::generic(g->second.name, g->second.sort, g->second.origin);
      auto v = scope.find(e.atom);
      if (v != scope.end()) return HolTerm::individual(e.atom, v->second);
      if (sig.has_const(e.atom)) {
        const Type& ty = sig.const_type(e.atom);
        if (!ty.is_sort()) fail(e, e.atom + " is not an individual constant");
        return HolTerm::individual(e.atom, ty);
      }
      if (numeral(e.atom)) return HolTerm::number(e.atom);
      fail(e, "unknown individual " + e.atom);
    }
    if (e.headed("fun") && e.items.size() == 3 && e.items[1].is_atom())
      return HolTerm::fun_app(e.items[1].atom, term(e.items[2]));
    fail(e, "expected a term");
  }

  Type sort_of(const HolTerm& t) {
    switch (t.kind()) {
      case HolTerm::Kind::Individual:
      case HolTerm::Kind::Generic:
        return t.sort();
      case HolTerm::Kind::FunApp: {
        if (!sig.has_const(t.name()))
          throw HolError("unknown morphism " + t.name());
        const Type& ty = sig.const_type(t.name());
        if (!ty.is_arrow()) throw HolError(t.name() + " is not a morphism");
        return ty.codomain();
      }
    }
    throw HolError("unreachable");
  }

  Formula formula(const SExpr& e) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom())
      fail(e, "expected a formula");
    const std::string& head = e.items[0].atom;
    if (head == "and" || head == "or" || head == "implies") {
      if (e.items.size() != 3) fail(e, head + " needs two operands");
      Formula::ConnKind k = head == "and"   ? Formula::ConnKind::And
                            : head == "or" ? Formula::ConnKind::Or
                                           : Formula::ConnKind::Implies;
      return Formula::conn(k, {formula(e.items[1]), formula(e.items[2])});
    }
    if (head == "not") {
      if (e.items.size() != 2) fail(e, "not needs one operand");
      return Formula::conn(Formula::ConnKind::Not, {formula(e.items[1])});
    }
    if (head == "forall" || head == "exists") {
      if (e.items.size() != 4 || !e.items[1].is_atom())
        fail(e, head + " needs a variable, a sort, and a body");
      sexpr::ReadContext ctx{&sig, nullptr};
      Type sort = sexpr::read_type(e.items[2], ctx);
      auto saved = scope;
      scope.insert_or_assign(e.items[1].atom, sort);
      Formula body = formula(e.items[3]);
      scope = std::move(saved);
      Formula::QuantKind k =
          head == "forall" ? Formula::QuantKind::Forall : Formula::QuantKind::Exists;
      return Formula::quant(k, e.items[1].atom, sort, std::move(body));
    }
    if (head == "lt" || head == "leq") {
      if (e.items.size() != 3) fail(e, head + " needs two terms");
      Formula::CmpKind k =
          head == "lt" ? Formula::CmpKind::Lt : Formula::CmpKind::Leq;
      return Formula::cmp(k, term(e.items[1]), term(e.items[2]));
    }
    if (head == "pred") {
      if (e.items.size() != 3 || !e.items[1].is_atom() || !e.items[2].is_list())
        fail(e, "pred needs a name and an argument list");
      std::vector<HolTerm> args;
      std::vector<Type> sig_sorts;
      for (const auto& item : e.items[2].items) {
        args.push_back(term(item));
        sig_sorts.push_back(sort_of(args.back()));
      }
      return Formula::pred(e.items[1].atom, std::move(sig_sorts), std::move(args));
    }
    fail(e, "unknown formula head " + head);
  }
};

}  // namespace

ReadingFormula parse_reading(std::string_view src, const kernel::Signature& sig) {
  SExpr e = sexpr::read_one(src);
  if (!e.headed("reading") || e.items.size() != 3 ||
      !e.items[1].headed("generics") || !e.items[2].headed("formula") ||
      e.items[2].items.size() != 2)
    throw HolError("expected (reading (generics ...) (formula F))");

  FormulaReader reader{sig, {}, {}};
  std::vector<GenericInfo> generics;
  for (std::size_t i = 1; i < e.items[1].items.size(); ++i) {
    const SExpr& g = e.items[1].items[i];
    if (!g.headed("generic") || g.items.size() < 3 || !g.items[1].is_atom())
      throw HolError("expected (generic name SORT ...), got " + g.str());
    sexpr::ReadContext ctx{&sig, nullptr};
    Type sort = sexpr::read_type(g.items[2], ctx);
    HolTerm::Origin origin = HolTerm::Origin::Bare;
    std::optional<Formula> restrictor;
    if (g.items.size() == 5 && g.items[3].is_atom() &&
        g.items[3].atom == ":restrictor") {
      origin = HolTerm::Origin::Restricted;
      // Self-references resolve through the table, so register first.
      reader.table.emplace(g.items[1].atom,
                           GenericInfo{g.items[1].atom, sort, origin, std::nullopt});
      restrictor = reader.formula(g.items[4]);
      reader.table.erase(g.items[1].atom);
    } else if (g.items.size() != 3) {
      throw HolError("malformed generic " + g.str());
    }
    GenericInfo info{g.items[1].atom, sort, origin, std::move(restrictor)};
    generics.push_back(info);
    reader.table.emplace(info.name, info);
  }
  Formula f = reader.formula(e.items[2].items[1]);
  return {std::move(f), std::move(generics)};
}

// ---------------------------------------------------------------------------
// Sort checking.

namespace {

struct SortChecker {
  const kernel::Signature& sig;
  std::vector<std::string> diags;
  std::map<std::string, Type> scope;

  bool is_meta_free_match(const Type& pattern, const Type& target,
                          std::map<int, Type>& sol, int next_meta) {
    // Matches a Pi-quantified declaration against a monomorphic expectation.
    (void)next_meta;
    if (pattern.is_bound_var()) {
      auto it = sol.find(pattern.index());
      if (it != sol.end()) return it->second == target;
      sol.emplace(pattern.index(), target);
      return true;
    }
    if (pattern.kind() != target.kind()) return false;
    switch (pattern.kind()) {
      case Type::Kind::Sort:
      case Type::Kind::FreeVar:
        return pattern.name() == target.name();
      case Type::Kind::Arrow:
        return is_meta_free_match(pattern.domain(), target.domain(), sol, 0) &&
               is_meta_free_match(pattern.codomain(), target.codomain(), sol, 0);
      default:
        return false;
    }
  }

  std::optional<Type> sort_of(const HolTerm& t) {
    switch (t.kind()) {
      case HolTerm::Kind::Individual: {
        auto it = scope.find(t.name());
        if (it != scope.end()) {
          if (it->second != t.sort())
            diags.push_back("bound variable " + t.name() + " used at sort " +
                            t.sort().str() + " but quantified at " +
                            it->second.str());
          return it->second;
        }
        if (sig.has_const(t.name())) {
          const Type& ty = sig.const_type(t.name());
          if (ty != t.sort())
            diags.push_back("individual " + t.name() + " carries sort " +
                            t.sort().str() + " but is declared at " + ty.str());
          return ty;
        }
        return t.sort();  // numerals and foreign names keep their annotation
      }
      case HolTerm::Kind::Generic:
        return t.sort();
      case HolTerm::Kind::FunApp: {
        auto inner = sort_of(t.arg());
        if (!sig.has_const(t.name())) {
          diags.push_back("unknown morphism " + t.name());
          return std::nullopt;
        }
        const Type& ty = sig.const_type(t.name());
        if (!ty.is_arrow()) {
          diags.push_back(t.name() + " is not a morphism");
          return std::nullopt;
        }
        if (inner && *inner != ty.domain())
          diags.push_back("morphism " + t.name() + " expects " +
                          ty.domain().str() + ", applied to " + inner->str());
        return ty.codomain();
      }
    }
    return std::nullopt;
  }

  void check(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Pred: {
        if (f.pred_signature().size() != f.pred_args().size()) {
          diags.push_back("predicate " + f.pred_name() +
                          " arity does not match its signature");
          return;
        }
        for (std::size_t i = 0; i < f.pred_args().size(); ++i) {
          auto s = sort_of(f.pred_args()[i]);
          if (s && *s != f.pred_signature()[i])
            diags.push_back("predicate " + f.pred_name() + " argument " +
                            std::to_string(i + 1) + " has sort " + s->str() +
                            ", expected " + f.pred_signature()[i].str());
        }
        if (!sig.has_const(f.pred_name())) {
          diags.push_back("unknown predicate " + f.pred_name());
          return;
        }
        Type expected = Type::prop();
        for (auto it = f.pred_signature().rbegin();
             it != f.pred_signature().rend(); ++it)
          expected = Type::arrow(*it, expected);
        Type declared = sig.const_type(f.pred_name());
        std::map<int, Type> sol;
        Type body = declared;
        int foralls = 0;
        while (body.is_forall()) {
          body = body.body();
          ++foralls;
        }
        if (!is_meta_free_match(body, expected, sol, foralls))
          diags.push_back("predicate " + f.pred_name() + " used at " +
                          expected.str() + " but declared at " + declared.str());
        return;
      }
      case Formula::Kind::Conn:
        for (const auto& op : f.operands()) check(op);
        return;
      case Formula::Kind::Quant: {
        auto saved = scope;
        scope.insert_or_assign(f.quant_var(), f.quant_sort());
        check(f.body());
        scope = std::move(saved);
        return;
      }
      case Formula::Kind::Cmp: {
        Type fl = Type::sort(builtin::kFloat);
        for (const HolTerm* side : {&f.left(), &f.right()}) {
          auto s = sort_of(*side);
          if (s && *s != fl)
            diags.push_back("comparison operand " + pretty(*side) +
                            " has sort " + s->str() + ", expected float");
        }
        return;
      }
    }
  }
};

}  // namespace

std::vector<std::string> check_sorts(const Formula& formula,
                                     const kernel::Signature& sig) {
  SortChecker checker{sig, {}, {}};
  checker.check(formula);
  return checker.diags;
}

}  // namespace sema::hol
