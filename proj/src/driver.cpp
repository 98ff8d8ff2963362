#include "itp/driver.hpp"

#include <fstream>

#include "itp/guards.hpp"
#include "itp/printer.hpp"
#include "itp/theory.hpp"

namespace itp {

void apply_problem_options(const Problem& problem, Options& opt) {
  for (const auto& [k, v] : problem.options) {
    if (k == "fc-order") {
      opt.cfg.fc_order = v == "reverse" ? StrategyConfig::FcOrder::Reverse
                                        : StrategyConfig::FcOrder::Derivation;
    } else if (k == "strategy") {
      opt.cfg.restricted = v != "free";
    } else if (k == "budget") {
      opt.cfg.budget_nodes = std::stol(v);
    } else if (k == "bound") {
      opt.cfg.model_bound = Int(v);
    }
  }
}

RunOutput run_pipeline(const Problem& problem, Options opt) {
  RunOutput out;
  Signature sig = problem.sig;
  SymbolGen gen;

  Sequent root;
  try {
    root = init_sequent(problem.part_A, problem.part_B, sig, gen);
  } catch (const QuantifiedFunctionArgs& e) {
    out.exit_code = 3;
    out.text = std::string("error: ") + e.what() + "\n";
    return out;
  }

  ProveResult r =
      prove(root, sig, opt.cfg, gen, f_and(problem.part_A, problem.part_B));
  if (r.status == ProveResult::Status::Satisfiable) {
    out.exit_code = 1;
    out.text = "satisfiable\n";
    return out;
  }
  if (r.status == ProveResult::Status::Unknown) {
    out.exit_code = 2;
    out.text = "unknown: " + r.reason + "\n";
    return out;
  }

  Formula raw = extract_interpolant(*r.proof, gen);
  if (!opt.proof_path.empty()) {
    std::ofstream f(opt.proof_path);
    write_trace(*r.proof, f);
  }

  Formula itp = raw;
  if (!opt.relational) {
    bool collapsible = true;
    Formula bt = back_translate(itp, &collapsible);
    if (collapsible) itp = bt;
  }
  itp = normalize_guards(itp, gen);
  if (opt.div_form) itp = to_div_form(itp);

  out.interpolant = itp;
  out.text = print_formula(itp) + "\n";

  if (opt.verify) {
    CheckReport rep = check_interpolant(problem.part_A, problem.part_B, itp, sig, opt.cfg);
    switch (rep.verdict) {
      case CheckReport::Verdict::Verified:
        out.text += "verified\n";
        break;
      case CheckReport::Verdict::Rejected:
        out.text += "rejected" + (rep.detail.empty() ? "" : " (" + rep.detail + ")") + "\n";
        out.exit_code = 2;
        break;
      case CheckReport::Verdict::Inconclusive:
        out.text += "inconclusive\n";
        out.exit_code = 2;
        break;
    }
  }
  return out;
}

}  // namespace itp
