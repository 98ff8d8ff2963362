#ifndef ITP_EVAL_HPP
#define ITP_EVAL_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "itp/formula.hpp"

namespace itp {

// Finite first-order structure over the integers. Predicate and graph tables
// list true tuples; function tables map argument tuples to values. Graph
// atoms f_p(t...,r) evaluate through `funs` when a table for f exists,
// otherwise through `graphs`.
struct Model {
  std::map<std::string, Int, SymLess> consts;
  std::map<std::string, std::set<std::vector<Int>>> preds;
  std::map<std::string, std::set<std::vector<Int>>> graphs;
  std::map<std::string, std::map<std::vector<Int>, Int>> funs;
};

struct EvalBudgetExceeded : std::runtime_error {
  EvalBudgetExceeded() : std::runtime_error("BudgetExceeded: bounded evaluation") {}
};

// Bounded-domain evaluator and model finder. Quantifiers are resolved
// exactly through guard systems where the bound variables are pinned by
// linear equality guards (Smith-based unique-solution check); remaining
// quantifiers range over [-bound, bound], which is an approximation and is
// tracked by approx_used(). Sound for refutation; a model report with
// approx_used() == false is exact.
class BoundedEval {
 public:
  explicit BoundedEval(Int bound = Int(6), long budget = 2000000)
      : bound_(std::move(bound)), budget_(budget) {}

  bool eval(const Formula& f, Model& m);
  Int eval_term(const LinTerm& t, Model& m);

  // Search for a bounded model; assigns free constants, predicate entries and
  // function entries lazily as evaluation reaches them.
  std::optional<Model> search(const Formula& f);
  std::optional<Model> search_from(const Formula& f, Model seed);

  // Bounded-domain equivalence: no discrepancy model within the bound.
  bool equivalent(const Formula& a, const Formula& b);

  bool approx_used() const { return approx_used_; }
  void reset_approx() { approx_used_ = false; }

 private:
  struct Pending {
    enum Kind { ConstV, PredE, GraphE, FunE } kind;
    std::string name;
    std::vector<Int> tuple;
  };
  struct NeedChoice {
    Pending p;
  };

  bool eval_rec(const Formula& f, Model& m);
  bool eval_quant(const Formula& f, Model& m);
  bool search_rec(const Formula& f, Model& m);
  void tick();

  Int bound_;
  long budget_;
  long used_ = 0;
  bool approx_used_ = false;
  bool searching_ = false;
};

}  // namespace itp

#endif
