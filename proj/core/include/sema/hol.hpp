#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sema/compose.hpp"
#include "sema/ontology.hpp"
#include "sema/term.hpp"
#include "sema/typecheck.hpp"

namespace sema::hol {

class HolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Formula;

/// First-order skeleton of the multisorted output language: named
/// individuals, generic elements, and morphism images.
class HolTerm {
 public:
  enum class Kind { Individual, Generic, FunApp };
  enum class Origin { Bare, Restricted };

  static HolTerm individual(std::string name, kernel::Type sort);
  /// Numeric literal of sort float.
  static HolTerm number(std::string literal);
  /// Reference to a generic element; its restrictor, if any, lives in the
  /// reading's generics table.
  static HolTerm generic(std::string name, kernel::Type sort, Origin origin);
  static HolTerm fun_app(std::string morphism, HolTerm arg);

  Kind kind() const;
  bool is_individual() const { return kind() == Kind::Individual; }
  bool is_generic() const { return kind() == Kind::Generic; }
  bool is_fun_app() const { return kind() == Kind::FunApp; }

  const std::string& name() const;      // Individual, Generic, FunApp morphism
  const kernel::Type& sort() const;     // Individual, Generic
  Origin origin() const;                // Generic
  const HolTerm& arg() const;           // FunApp

 private:
  struct Node;
  explicit HolTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend int compare(const HolTerm& a, const HolTerm& b);
};

int compare(const HolTerm& a, const HolTerm& b);
inline bool operator==(const HolTerm& a, const HolTerm& b) { return compare(a, b) == 0; }
inline bool operator!=(const HolTerm& a, const HolTerm& b) { return compare(a, b) != 0; }

class Formula {
 public:
  enum class Kind { Pred, Conn, Quant, Cmp };
  enum class ConnKind { And, Or, Implies, Not };
  enum class QuantKind { Forall, Exists };
  enum class CmpKind { Lt, Leq };

  static Formula pred(std::string name, std::vector<kernel::Type> signature,
                      std::vector<HolTerm> args);
  static Formula conn(ConnKind kind, std::vector<Formula> operands);
  static Formula quant(QuantKind kind, std::string var, kernel::Type sort,
                       Formula body);
  static Formula cmp(CmpKind kind, HolTerm left, HolTerm right);

  Kind kind() const;
  bool is_pred() const { return kind() == Kind::Pred; }
  bool is_conn() const { return kind() == Kind::Conn; }
  bool is_quant() const { return kind() == Kind::Quant; }
  bool is_cmp() const { return kind() == Kind::Cmp; }

  const std::string& pred_name() const;
  const std::vector<kernel::Type>& pred_signature() const;
  const std::vector<HolTerm>& pred_args() const;
  ConnKind conn_kind() const;
  const std::vector<Formula>& operands() const;
  QuantKind quant_kind() const;
  const std::string& quant_var() const;
  const kernel::Type& quant_sort() const;
  const Formula& body() const;
  CmpKind cmp_kind() const;
  const HolTerm& left() const;
  const HolTerm& right() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend int compare(const Formula& a, const Formula& b);
};

int compare(const Formula& a, const Formula& b);
inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }

/// Generics table entry: restricted generics carry the restrictor formula.
struct GenericInfo {
  std::string name;
  kernel::Type sort;
  HolTerm::Origin origin;
  std::optional<Formula> restrictor;
};

struct ReadingFormula {
  Formula formula;
  std::vector<GenericInfo> generics;
};

/// Extracts the multisorted formula of a reading. Specimen-of restrictors
/// are conjoined onto the matrix at top level. Generic names are assigned
/// s, s2, s3... in traversal order.
ReadingFormula to_formula(const compose::Reading& reading,
                          const kernel::Signature& sig);

struct PrettyOptions {
  bool elide_inclusions = false;
  std::set<std::string> inclusion_morphisms;  // hidden when eliding
};

std::string pretty(const HolTerm& term, const PrettyOptions& opts = {});
std::string pretty(const Formula& formula, const PrettyOptions& opts = {});

/// Structured s-expression rendering, re-parseable by parse_formula.
std::string to_sexpr(const Formula& formula);
std::string to_sexpr(const ReadingFormula& reading);

/// Re-reads the output of to_sexpr(ReadingFormula).
ReadingFormula parse_reading(std::string_view src, const kernel::Signature& sig);

/// Verifies predicates, comparisons, morphisms, and quantifier scopes
/// against the signature; returns human-readable sort clashes.
std::vector<std::string> check_sorts(const Formula& formula,
                                     const kernel::Signature& sig);

}  // namespace sema::hol
