#ifndef TREEFOL_SYMBOLS_HPP
#define TREEFOL_SYMBOLS_HPP

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treefol/order_key.hpp"

namespace treefol {

// A variable is identified by its order key; the name is display-only.
// Handles share immutable payloads, so copies are cheap.
class Variable {
 public:
  Variable() = default;
  Variable(OrderKey key, std::string name)
      : d_(std::make_shared<const Data>(Data{std::move(key), std::move(name)})) {}

  const OrderKey& key() const { return d_->key; }
  const std::string& name() const { return d_->name; }
  bool valid() const { return d_ != nullptr; }

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.d_ == b.d_ || a.key() == b.key();
  }
  friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
  friend bool operator<(const Variable& a, const Variable& b) {
    return a.d_ != b.d_ && a.key() < b.key();
  }

 private:
  struct Data {
    OrderKey key;
    std::string name;
  };
  std::shared_ptr<const Data> d_;
};

using VarSet = std::set<Variable>;

// u ≻ v: the strict dense order on variables.
inline bool order_gt(const Variable& u, const Variable& v) { return u.key() > v.key(); }

// Mints a variable whose key lies strictly above every key in `context`.
// Successive calls return distinct variables even for identical contexts
// (a thread-local high-water mark supplies the distinctness).
inline Variable fresh_var_above(const VarSet& context, const std::string& name_hint) {
  thread_local OrderKey last(0);
  OrderKey top = last;
  for (const Variable& v : context)
    if (v.key() > top) top = v.key();
  OrderKey key = OrderKey::int_above(top);
  last = key;
  return Variable(key, name_hint.empty() ? "v" : name_hint);
}

class FunctionSymbol {
 public:
  FunctionSymbol() = default;
  FunctionSymbol(std::string name, std::size_t arity)
      : d_(std::make_shared<const Data>(Data{std::move(name), arity})) {}

  const std::string& name() const { return d_->name; }
  std::size_t arity() const { return d_->arity; }
  bool valid() const { return d_ != nullptr; }

  friend bool operator==(const FunctionSymbol& a, const FunctionSymbol& b) {
    return a.d_ == b.d_ || (a.name() == b.name() && a.arity() == b.arity());
  }
  friend bool operator!=(const FunctionSymbol& a, const FunctionSymbol& b) { return !(a == b); }
  friend bool operator<(const FunctionSymbol& a, const FunctionSymbol& b) {
    if (a.d_ == b.d_) return false;
    if (a.name() != b.name()) return a.name() < b.name();
    return a.arity() < b.arity();
  }

 private:
  struct Data {
    std::string name;
    std::size_t arity;
  };
  std::shared_ptr<const Data> d_;
};

// Per-solve source of fresh variables. Keys are monotone integers strictly
// above everything the context has seen, which keeps renamed quantifiers
// compatible with the variable-order discipline.
class FreshSource {
 public:
  FreshSource() : next_(1) {}

  void absorb(const OrderKey& k) {
    OrderKey above = OrderKey::int_above(k);
    if (above > next_) next_ = above;
  }
  void absorb(const Variable& v) { absorb(v.key()); }

  Variable fresh(const std::string& hint) {
    OrderKey key = next_;
    next_ = OrderKey::int_above(next_);
    ++count_;
    return Variable(key, hint + "_" + std::to_string(count_));
  }

 private:
  OrderKey next_;
  unsigned long count_ = 0;
};

}  // namespace treefol

#endif
