#ifndef ITP_DRIVER_HPP
#define ITP_DRIVER_HPP

#include <string>

#include "itp/checker.hpp"
#include "itp/parser.hpp"
#include "itp/prover.hpp"

namespace itp {

struct Options {
  bool verify = false;
  bool div_form = false;
  bool relational = false;
  std::string proof_path;
  StrategyConfig cfg;
};

struct RunOutput {
  int exit_code = 0;
  std::string text;     // stdout
  Formula interpolant;  // valid when exit_code == 0
};

// encode -> prove -> extract -> normalize -> translate -> verify
RunOutput run_pipeline(const Problem& problem, Options opt);

// applies (set-option ...) entries from the problem file onto opt defaults
void apply_problem_options(const Problem& problem, Options& opt);

}  // namespace itp

#endif
