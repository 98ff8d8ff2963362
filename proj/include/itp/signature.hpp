#ifndef ITP_SIGNATURE_HPP
#define ITP_SIGNATURE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace itp {

enum class Sort { IntS, ArrayS };

struct FunDecl {
  std::vector<Sort> args;
  Sort ret = Sort::IntS;
};

struct PredDecl {
  std::vector<Sort> args;
};

// Declared vocabulary of one problem. Constants and variables share a
// namespace; generated names ("$k" constants, "?k" variables) are reserved.
struct Signature {
  std::map<std::string, Sort> consts;
  std::map<std::string, PredDecl> preds;
  std::map<std::string, FunDecl> funs;

  bool has_arrays = false;  // select/store registered

  void declare_const(const std::string& name, Sort s) { consts[name] = s; }
  void declare_pred(const std::string& name, PredDecl d) { preds[name] = std::move(d); }
  void declare_fun(const std::string& name, FunDecl d) { funs[name] = std::move(d); }

  void register_arrays() {
    if (has_arrays) return;
    has_arrays = true;
    funs["select"] = FunDecl{{Sort::ArrayS, Sort::IntS}, Sort::IntS};
    funs["store"] = FunDecl{{Sort::ArrayS, Sort::IntS, Sort::IntS}, Sort::ArrayS};
  }

  Sort sort_of_const(const std::string& name) const {
    auto it = consts.find(name);
    return it == consts.end() ? Sort::IntS : it->second;
  }
  bool is_fun(const std::string& name) const { return funs.count(name) != 0; }
};

// Deterministic per-problem fresh-symbol source. Constants "$k", variables
// "?k", strictly increasing k.
struct SymbolGen {
  std::uint64_t next = 1;
  std::string fresh_const() { return "$" + std::to_string(next++); }
  std::string fresh_var() { return "?" + std::to_string(next++); }
};

inline bool is_generated_sym(const std::string& s) {
  return !s.empty() && (s[0] == '$' || s[0] == '?');
}

}  // namespace itp

#endif
