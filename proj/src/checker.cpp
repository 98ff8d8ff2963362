#include "itp/checker.hpp"

#include "itp/guards.hpp"

namespace itp {

namespace {

CheckReport::Cond check_direction(const Formula& left, const Formula& right,
                                  const Signature& sig, const StrategyConfig& cfg,
                                  std::optional<Model>& refutation) {
  Signature s = sig;
  SymbolGen gen;
  gen.next = 1u << 22;  // clear of names generated while producing I
  Sequent root = init_sequent(left, right, s, gen);
  ProveResult r = prove(root, s, cfg, gen, f_and(left, right));
  switch (r.status) {
    case ProveResult::Status::Closed:
      return CheckReport::Cond::Proved;
    case ProveResult::Status::Satisfiable:
      refutation = r.witness;
      return CheckReport::Cond::Refuted;
    case ProveResult::Status::Unknown:
      break;
  }
  // bounded refutation attempt; approximate quantifier models are not trusted
  if (!sig.has_arrays) {
    BoundedEval ev(cfg.model_bound, cfg.model_budget);
    try {
      auto m = ev.search(f_and(left, right));
      if (m && !ev.approx_used()) {
        refutation = *m;
        return CheckReport::Cond::Refuted;
      }
    } catch (const EvalBudgetExceeded&) {
    }
  }
  return CheckReport::Cond::Unknown;
}

}  // namespace

CheckReport check_interpolant(const Formula& a, const Formula& b, const Formula& i,
                              const Signature& sig, const StrategyConfig& cfg) {
  CheckReport rep;

  Formula icore = has_div_terms(i) ? from_div_form(i) : i;

  // (iii) vocabulary
  SymbolSet fa = free_symbols(a), fb = free_symbols(b), fi = free_symbols(icore);
  rep.vocab_pass = true;
  auto check_set = [&](const auto& in_i, const auto& in_a, const auto& in_b) {
    for (const auto& x : in_i)
      if (!in_a.count(x) || !in_b.count(x)) {
        rep.vocab_pass = false;
        rep.vocab_offenders.push_back(x);
      }
  };
  check_set(fi.consts, fa.consts, fb.consts);
  check_set(fi.preds, fa.preds, fb.preds);
  check_set(fi.funs, fa.funs, fb.funs);

  rep.cond_left = check_direction(a, negate_nnf(icore), sig, cfg, rep.refutation);
  rep.cond_right = check_direction(icore, b, sig, cfg, rep.refutation);

  bool both = rep.cond_left == CheckReport::Cond::Proved &&
              rep.cond_right == CheckReport::Cond::Proved;
  bool refuted = rep.cond_left == CheckReport::Cond::Refuted ||
                 rep.cond_right == CheckReport::Cond::Refuted;
  if (both && rep.vocab_pass) {
    rep.verdict = CheckReport::Verdict::Verified;
  } else if (refuted || !rep.vocab_pass) {
    rep.verdict = CheckReport::Verdict::Rejected;
    if (!rep.vocab_pass) {
      rep.detail = "vocabulary:";
      for (const auto& x : rep.vocab_offenders) rep.detail += " " + x;
    }
  } else {
    rep.verdict = CheckReport::Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace itp
