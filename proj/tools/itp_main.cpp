#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "itp/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interpolating prover for linear integer arithmetic with uninterpreted "
               "predicates, functions, and arrays"};

  std::string file;
  itp::Options opt;
  std::string fc_order = "derivation";
  std::string strategy = "restricted";
  long budget = 100000;
  long bound = 6;
  long timeout = 0;

  app.add_option("file", file, "problem file (s-expressions)")->required();
  app.add_flag("--verify", opt.verify, "verify the interpolant and print the report");
  app.add_option("--proof", opt.proof_path, "write the proof trace to this path");
  app.add_flag("--div-form", opt.div_form, "print the quantifier-free integer-division form");
  app.add_flag("--relational", opt.relational, "skip back-translation of graph predicates");
  app.add_option("--fc-order", fc_order, "axiom instantiation order")
      ->check(CLI::IsMember({"derivation", "reverse"}));
  app.add_option("--strategy", strategy, "instantiation strategy")
      ->check(CLI::IsMember({"restricted", "free"}));
  app.add_option("--budget", budget, "proof node budget");
  app.add_option("--bound", bound, "bounded-model search bound");
  app.add_option("--timeout", timeout, "timeout in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 3 : 0;
  }

  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot open " << file << "\n";
    return 3;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  itp::Problem problem;
  try {
    problem = itp::parse_problem(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  itp::apply_problem_options(problem, opt);
  opt.cfg.fc_order = fc_order == "reverse" ? itp::StrategyConfig::FcOrder::Reverse
                                           : itp::StrategyConfig::FcOrder::Derivation;
  opt.cfg.restricted = strategy != "free";
  opt.cfg.budget_nodes = budget;
  opt.cfg.model_bound = itp::Int(bound);
  opt.cfg.timeout_ms = timeout * 1000;

  try {
    itp::RunOutput out = itp::run_pipeline(problem, opt);
    std::cout << out.text;
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
