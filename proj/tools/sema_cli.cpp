// Command-line front end: loads an ontology/lexicon, type-checks and
// normalizes terms, and prints the readings of application trees.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sema/builtins.hpp"
#include "sema/compose.hpp"
#include "sema/hol.hpp"
#include "sema/lexicon.hpp"
#include "sema/reduce.hpp"
#include "sema/sexpr.hpp"
#include "sema/typecheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternal = 2;

struct Options {
  std::string lexicon_path;
  std::string ontology_path;
  int max_coercion_depth = 3;
  long fuel = sema::kernel::kDefaultFuel;
  bool elide_inclusions = false;
  std::string format = "pretty";
  std::string file = "-";
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sema::lexicon::LoadResult load_context(const Options& opt) {
  std::vector<std::string> sources;
  if (!opt.ontology_path.empty()) sources.push_back(slurp(opt.ontology_path));
  if (!opt.lexicon_path.empty()) sources.push_back(slurp(opt.lexicon_path));
  return sema::lexicon::load_sources(sources);
}

int cmd_check(const Options& opt) {
  auto ctx = load_context(opt);
  sema::sexpr::ReadContext rctx{&ctx.signature, &sema::builtin::definitions()};
  sema::kernel::Term term = sema::sexpr::parse_term(slurp(opt.file), rctx);
  sema::kernel::Type ty = sema::kernel::type_of(term, ctx.signature);
  std::cout << ty.str() << "\n";
  return kExitOk;
}

int cmd_normalize(const Options& opt) {
  auto ctx = load_context(opt);
  sema::sexpr::ReadContext rctx{&ctx.signature, &sema::builtin::definitions()};
  sema::kernel::Term term = sema::sexpr::parse_term(slurp(opt.file), rctx);
  sema::kernel::type_of(term, ctx.signature);  // ill-typed input is a user error
  auto nf = sema::kernel::normalize(term, opt.fuel);
  std::cout << nf.term.str() << "\n";
  std::cout << "steps: " << nf.steps << "\n";
  return kExitOk;
}

std::string trace_line(const sema::compose::CoercionUse& use) {
  std::string out = use.name + " at " + sema::compose::path_str(use.at) + " (" +
                    use.anchor + ")";
  if (use.exclusive) out += " [exclusive]";
  return out;
}

int cmd_readings(const Options& opt) {
  if (opt.lexicon_path.empty() && opt.ontology_path.empty())
    throw std::runtime_error("readings needs --lexicon and/or --ontology");
  auto ctx = load_context(opt);
  sema::compose::SyntaxTree tree = sema::compose::parse_tree(slurp(opt.file));
  sema::compose::Config config{opt.max_coercion_depth, opt.fuel};
  auto all = sema::compose::readings(tree, ctx.lexicon, ctx.ontology,
                                     ctx.signature, config);

  sema::hol::PrettyOptions popts{opt.elide_inclusions,
                                 ctx.ontology.inclusion_morphisms()};
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& reading = all[i];
    sema::hol::ReadingFormula rf = sema::hol::to_formula(reading, ctx.signature);
    if (opt.format == "sexpr") {
      std::string out = "(reading " + std::to_string(i + 1);
      std::string inner = sema::hol::to_sexpr(rf);
      // splice the generics/formula payload of "(reading ...)"
      out += inner.substr(8, inner.size() - 9);
      out += " (trace";
      for (const auto& use : reading.trace) {
        out += " (coercion " + use.name + " " + sema::compose::path_str(use.at) +
               " " + use.anchor;
        if (use.exclusive) out += " :exclusive";
        out += ")";
      }
      out += ") (instantiations";
      for (const auto& [word, ty] : reading.instantiations)
        out += " (inst " + word + " " + ty.str() + ")";
      out += "))";
      std::cout << out << "\n";
    } else {
      std::cout << "reading " << i + 1 << ":\n";
      std::cout << "  formula: " << sema::hol::pretty(rf.formula, popts) << "\n";
      for (const auto& g : rf.generics) {
        if (g.origin == sema::hol::HolTerm::Origin::Restricted && g.restrictor)
          std::cout << "  generic: " << g.name << " : "
                    << (g.sort.is_sort() ? g.sort.name() : g.sort.str())
                    << " restricted by "
                    << sema::hol::pretty(*g.restrictor, popts) << "\n";
      }
      for (const auto& [word, ty] : reading.instantiations)
        std::cout << "  instantiation: " << word << " := " << ty.str() << "\n";
      for (const auto& use : reading.trace)
        std::cout << "  coercion: " << trace_line(use) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meaning assembly for many-sorted second-order semantics"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--lexicon", opt.lexicon_path, "lexicon directives file");
  app.add_option("--ontology", opt.ontology_path, "ontology directives file");
  app.add_option("--max-coercion-depth", opt.max_coercion_depth,
                 "inclusion chain search bound")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--fuel", opt.fuel, "normalization step budget")
      ->check(CLI::PositiveNumber);
  app.add_flag("--elide-inclusions", opt.elide_inclusions,
               "hide inclusion morphisms when printing formulas");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"pretty", "sexpr"}));

  auto* check = app.add_subcommand("check", "type-check a term");
  auto* normalize = app.add_subcommand("normalize", "reduce a term to normal form");
  auto* readings = app.add_subcommand("readings", "enumerate readings of a tree");
  for (auto* sub : {check, normalize, readings})
    sub->add_option("file", opt.file, "input file, - for stdin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt);
    if (normalize->parsed()) return cmd_normalize(opt);
    if (readings->parsed()) return cmd_readings(opt);
    return kExitUserError;
  } catch (const sema::kernel::FuelExhaustedError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const sema::sexpr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const sema::kernel::TypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const sema::compose::NoReadingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
