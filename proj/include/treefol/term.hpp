#ifndef TREEFOL_TERM_HPP
#define TREEFOL_TERM_HPP

#include <cassert>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "treefol/symbols.hpp"

namespace treefol {

// Nested term: a variable or an application f(t1,...,tn) with n = arity(f).
class Term {
 public:
  struct App {
    FunctionSymbol sym;
    std::vector<Term> args;
  };

  explicit Term(Variable v) : rep_(std::move(v)) {}
  Term(FunctionSymbol f, std::vector<Term> args) : rep_(App{std::move(f), std::move(args)}) {
    assert(std::get<App>(rep_).sym.arity() == std::get<App>(rep_).args.size());
  }

  bool is_var() const { return std::holds_alternative<Variable>(rep_); }
  bool is_app() const { return !is_var(); }
  const Variable& var() const { return std::get<Variable>(rep_); }
  const FunctionSymbol& sym() const { return std::get<App>(rep_).sym; }
  const std::vector<Term>& args() const { return std::get<App>(rep_).args; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var() == b.var();
    if (a.sym() != b.sym()) return false;
    return a.args() == b.args();
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  std::variant<Variable, App> rep_;
};

inline void collect_vars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.var());
  } else {
    for (const Term& a : t.args()) collect_vars(a, out);
  }
}

inline std::size_t term_size(const Term& t) {
  if (t.is_var()) return 1;
  std::size_t n = 1;
  for (const Term& a : t.args()) n += term_size(a);
  return n;
}

}  // namespace treefol

#endif
