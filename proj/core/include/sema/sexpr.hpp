#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sema/term.hpp"
#include "sema/typecheck.hpp"
#include "sema/type.hpp"

namespace sema::sexpr {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_, col_;
};

/// Atoms, parenthesised lists, and braced type arguments {A}.
/// `;` starts a comment running to the end of the line.
struct SExpr {
  enum class Kind { Atom, List, Braced };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<SExpr> items;  // List members, or the single Braced payload
  std::size_t line = 0, col = 0;

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }
  bool is_braced() const { return kind == Kind::Braced; }
  /// True for a list whose first element is the given atom.
  bool headed(std::string_view head) const;
  std::string str() const;
};

std::vector<SExpr> read_all(std::string_view src);
SExpr read_one(std::string_view src);

/// Name resolution context for reading terms: bare atoms resolve to
/// enclosing binders first, then to definitions, then to constants.
struct ReadContext {
  const kernel::Signature* signature = nullptr;
  const std::map<std::string, kernel::Term>* definitions = nullptr;
};

kernel::Type read_type(const SExpr& e, const ReadContext& ctx);
kernel::Term read_term(const SExpr& e, const ReadContext& ctx);

kernel::Type parse_type(std::string_view src, const ReadContext& ctx);
kernel::Term parse_term(std::string_view src, const ReadContext& ctx);

}  // namespace sema::sexpr
