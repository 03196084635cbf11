#ifndef TREEFOL_PRINTER_HPP
#define TREEFOL_PRINTER_HPP

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "treefol/basic.hpp"
#include "treefol/formula.hpp"

namespace treefol {

namespace detail {

inline bool is_keyword(const std::string& s) {
  return s == "true" || s == "false" || s == "finite" || s == "ex" || s == "all";
}

// Display names: free variables keep their names verbatim; bound variables
// are renamed apart from every free name, function name and other bound
// name, so the printed text re-parses to the same binding structure.
struct NameTable {
  std::map<Variable, std::string> display;
  std::set<std::string> reserved;

  void reserve_frees_and_symbols(const Formula& f) {
    for (const Variable& v : free_vars(f)) {
      reserved.insert(v.name());
      display.emplace(v, v.name());
    }
    collect_symbols(f);
  }

  void collect_symbols(const Formula& f) {
    switch (f.kind()) {
      case FKind::Eq:
        collect_term(f.lhs());
        collect_term(f.rhs());
        return;
      case FKind::Finite:
        collect_term(f.finite_arg());
        return;
      case FKind::Not:
        collect_symbols(f.child());
        return;
      case FKind::And:
      case FKind::Or:
      case FKind::Implies:
      case FKind::Iff:
        collect_symbols(f.child(0));
        collect_symbols(f.child(1));
        return;
      case FKind::Exists:
      case FKind::Forall:
        collect_symbols(f.child());
        return;
      default:
        return;
    }
  }
  void collect_term(const Term& t) {
    if (t.is_app()) {
      reserved.insert(t.sym().name());
      for (const Term& a : t.args()) collect_term(a);
    }
  }

  void bind(const Variable& v) {
    if (display.count(v)) return;
    std::string base = v.name().empty() ? "v" : v.name();
    std::string name = base;
    int i = 1;
    while (reserved.count(name) || is_keyword(name)) name = base + "_" + std::to_string(++i);
    reserved.insert(name);
    display.emplace(v, name);
  }

  const std::string& name_of(const Variable& v) {
    auto it = display.find(v);
    if (it != display.end()) return it->second;
    bind(v);
    return display.at(v);
  }
};

inline void print_term(std::ostringstream& os, const Term& t, NameTable& names) {
  if (t.is_var()) {
    os << names.name_of(t.var());
    return;
  }
  os << t.sym().name() << '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ", ";
    print_term(os, t.args()[i], names);
  }
  os << ')';
}

// Precedence levels, tighter binds higher: <-> 0, -> 1, | 2, & 3, ~ 4, atoms 5.
// Quantifier scope extends maximally right, so a quantifier prints at level 0.
inline void print_rec(std::ostringstream& os, const Formula& f, NameTable& names, int min_level) {
  auto paren = [&](int level, auto&& body) {
    if (level < min_level) {
      os << '(';
      body();
      os << ')';
    } else {
      body();
    }
  };
  switch (f.kind()) {
    case FKind::True:
      os << "true";
      return;
    case FKind::False:
      os << "false";
      return;
    case FKind::Eq:
      print_term(os, f.lhs(), names);
      os << " = ";
      print_term(os, f.rhs(), names);
      return;
    case FKind::Finite:
      os << "finite(";
      print_term(os, f.finite_arg(), names);
      os << ')';
      return;
    case FKind::Not:
      paren(4, [&] {
        os << '~';
        print_rec(os, f.child(), names, 5);
      });
      return;
    case FKind::And:
      paren(3, [&] {
        print_rec(os, f.child(0), names, 3);
        os << " & ";
        print_rec(os, f.child(1), names, 4);
      });
      return;
    case FKind::Or:
      paren(2, [&] {
        print_rec(os, f.child(0), names, 2);
        os << " | ";
        print_rec(os, f.child(1), names, 3);
      });
      return;
    case FKind::Implies:
      paren(1, [&] {
        print_rec(os, f.child(0), names, 2);
        os << " -> ";
        print_rec(os, f.child(1), names, 1);
      });
      return;
    case FKind::Iff:
      paren(0, [&] {
        print_rec(os, f.child(0), names, 1);
        os << " <-> ";
        print_rec(os, f.child(1), names, 0);
      });
      return;
    case FKind::Exists:
    case FKind::Forall:
      paren(0, [&] {
        os << (f.kind() == FKind::Exists ? "ex " : "all ");
        for (std::size_t i = 0; i < f.quant().size(); ++i) {
          if (i) os << ',';
          names.bind(f.quant()[i]);
          os << names.name_of(f.quant()[i]);
        }
        os << ". ";
        print_rec(os, f.child(), names, 0);
      });
      return;
  }
}

}  // namespace detail

inline std::string print(const Formula& f) {
  detail::NameTable names;
  names.reserve_frees_and_symbols(f);
  std::ostringstream os;
  detail::print_rec(os, f, names, 0);
  return os.str();
}

// Conjunction of the atoms in canonical order; the empty basic prints true.
inline Formula basic_to_formula(const BasicFormula& b) {
  std::vector<FlatAtom> atoms;
  for (const FlatAtom& a : b.atoms)
    if (!is_true_atom(a)) atoms.push_back(a);
  std::sort(atoms.begin(), atoms.end(), atom_less);
  std::vector<Formula> fs;
  fs.reserve(atoms.size());
  for (const FlatAtom& a : atoms) fs.push_back(atom_to_formula(a));
  return Formula::conj_all(fs);
}

inline std::string print(const BasicFormula& b) { return print(basic_to_formula(b)); }

}  // namespace treefol

#endif
