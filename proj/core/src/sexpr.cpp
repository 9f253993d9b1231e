#include "sema/sexpr.hpp"

#include <cctype>

namespace sema::sexpr {

bool SExpr::headed(std::string_view head) const {
  return is_list() && !items.empty() && items[0].is_atom() &&
         items[0].atom == head;
}

std::string SExpr::str() const {
  switch (kind) {
    case Kind::Atom:
      return atom;
    case Kind::Braced:
      return "{" + items[0].str() + "}";
    case Kind::List: {
      std::string out = "(";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i].str();
      }
      return out + ")";
    }
  }
  return "";
}

namespace {

struct Reader {
  std::string_view src;
  std::size_t pos = 0, line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != '{' && c != '}' && c != ';';
  }

  SExpr read() {
    skip_space();
    if (eof()) fail("unexpected end of input");
    SExpr e;
    e.line = line;
    e.col = col;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      while (true) {
        skip_space();
        if (eof()) fail("unclosed list");
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == '{') {
      advance();
      e.kind = SExpr::Kind::Braced;
      e.items.push_back(read());
      skip_space();
      if (eof() || peek() != '}') fail("unclosed type argument brace");
      advance();
      return e;
    }
    if (c == ')' || c == '}') fail(std::string("unexpected '") + c + "'");
    e.kind = SExpr::Kind::Atom;
    while (!eof() && atom_char(peek())) {
      e.atom += peek();
      advance();
    }
    if (e.atom.empty()) fail("empty atom");
    return e;
  }
};

}  // namespace

std::vector<SExpr> read_all(std::string_view src) {
  Reader r{src};
  std::vector<SExpr> out;
  while (true) {
    r.skip_space();
    if (r.eof()) break;
    out.push_back(r.read());
  }
  return out;
}

SExpr read_one(std::string_view src) {
  Reader r{src};
  SExpr e = r.read();
  r.skip_space();
  if (!r.eof()) r.fail("trailing input after expression");
  return e;
}

// ---------------------------------------------------------------------------
// Term and type resolution.

namespace {

using kernel::Term;
using kernel::Type;

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg) {
  throw ParseError(e.line, e.col, msg);
}

int scope_index(const std::vector<std::string>& scope, const std::string& name) {
  for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
    if (scope[static_cast<std::size_t>(i)] == name)
      return static_cast<int>(scope.size()) - 1 - i;
  return -1;
}

void check_name(const SExpr& e, const std::string& name) {
  if (name.empty() || name[0] == '?' || name[0] == '#')
    fail_at(e, "reserved identifier " + name);
}

struct TermReader {
  const ReadContext& ctx;
  std::vector<std::string> term_scope;
  std::vector<std::string> ty_scope;

  Type type(const SExpr& e) {
    if (e.is_atom()) {
      check_name(e, e.atom);
      int idx = scope_index(ty_scope, e.atom);
      if (idx >= 0) return Type::bound_var(idx);
      if (e.atom == "t") return Type::prop();
      if (ctx.signature && ctx.signature->has_sort(e.atom))
        return Type::sort(e.atom);
      if (!ctx.signature) return Type::sort(e.atom);
      fail_at(e, "unknown sort or type variable " + e.atom);
    }
    if (e.is_braced()) fail_at(e, "unexpected brace in type position");
    if (e.items.empty()) fail_at(e, "empty type form");
    if (e.headed("->")) {
      if (e.items.size() < 3) fail_at(e, "-> needs at least two types");
      // Right associative for n-ary convenience.
      Type acc = type(e.items.back());
      for (std::size_t i = e.items.size() - 1; i >= 2; --i)
        acc = Type::arrow(type(e.items[i - 1]), acc);
      return acc;
    }
    if (e.headed("pi")) {
      if (e.items.size() != 3 || !e.items[1].is_atom())
        fail_at(e, "pi needs a variable and a body");
      check_name(e.items[1], e.items[1].atom);
      ty_scope.push_back(e.items[1].atom);
      Type body = type(e.items[2]);
      ty_scope.pop_back();
      return Type::forall(e.items[1].atom, body);
    }
    fail_at(e, "unknown type form " + e.items[0].str());
  }

  Term atom_term(const SExpr& e) {
    const std::string& name = e.atom;
    check_name(e, name);
    int idx = scope_index(term_scope, name);
    if (idx >= 0) return Term::bound(idx);
    if (ctx.definitions) {
      auto it = ctx.definitions->find(name);
      if (it != ctx.definitions->end()) return it->second;
    }
    if (ctx.signature && ctx.signature->has_const(name))
      return Term::constant(name, ctx.signature->const_type(name));
    fail_at(e, "unbound name " + name);
  }

  Term term(const SExpr& e) {
    if (e.is_atom()) return atom_term(e);
    if (e.is_braced()) fail_at(e, "type argument outside an application");
    if (e.items.empty()) fail_at(e, "empty term form");
    if (e.headed("lam")) {
      if (e.items.size() != 4 || !e.items[1].is_atom())
        fail_at(e, "lam needs a variable, a type, and a body");
      check_name(e.items[1], e.items[1].atom);
      Type annot = type(e.items[2]);
      term_scope.push_back(e.items[1].atom);
      Term body = term(e.items[3]);
      term_scope.pop_back();
      return Term::abs(e.items[1].atom, annot, body);
    }
    if (e.headed("tlam")) {
      if (e.items.size() != 3 || !e.items[1].is_atom())
        fail_at(e, "tlam needs a variable and a body");
      check_name(e.items[1], e.items[1].atom);
      ty_scope.push_back(e.items[1].atom);
      Term body = term(e.items[2]);
      ty_scope.pop_back();
      return Term::tyabs(e.items[1].atom, body);
    }
    if (e.headed("app")) {
      if (e.items.size() != 3) fail_at(e, "app needs a functor and an argument");
      return Term::app(term(e.items[1]), term(e.items[2]));
    }
    if (e.headed("tapp")) {
      if (e.items.size() != 3) fail_at(e, "tapp needs a term and a type");
      return Term::tyapp(term(e.items[1]), type(e.items[2]));
    }
    if (e.headed("const")) {
      if (e.items.size() != 2 || !e.items[1].is_atom())
        fail_at(e, "const needs a name");
      const std::string& name = e.items[1].atom;
      if (!ctx.signature || !ctx.signature->has_const(name))
        fail_at(e.items[1], "unknown constant " + name);
      return Term::constant(name, ctx.signature->const_type(name));
    }
    // Application spine: (f a {A} b ...)
    Term acc = term(e.items[0]);
    if (e.items.size() == 1)
      fail_at(e, "application needs at least one argument");
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const SExpr& it = e.items[i];
      if (it.is_braced())
        acc = Term::tyapp(acc, type(it.items[0]));
      else
        acc = Term::app(acc, term(it));
    }
    return acc;
  }
};

}  // namespace

kernel::Type read_type(const SExpr& e, const ReadContext& ctx) {
  TermReader r{ctx, {}, {}};
  return r.type(e);
}

kernel::Term read_term(const SExpr& e, const ReadContext& ctx) {
  TermReader r{ctx, {}, {}};
  return r.term(e);
}

kernel::Type parse_type(std::string_view src, const ReadContext& ctx) {
  return read_type(read_one(src), ctx);
}

kernel::Term parse_term(std::string_view src, const ReadContext& ctx) {
  return read_term(read_one(src), ctx);
}

}  // namespace sema::sexpr
