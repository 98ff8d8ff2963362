#ifndef ITP_PARSER_HPP
#define ITP_PARSER_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "itp/formula.hpp"
#include "itp/signature.hpp"

namespace itp {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + msg),
        line(l),
        col(c) {}
};

struct SortError : std::runtime_error {
  explicit SortError(const std::string& msg) : std::runtime_error("sort error: " + msg) {}
};

struct Problem {
  Signature sig;
  Formula part_A;
  Formula part_B;
  std::map<std::string, std::string> options;
};

// S-expression problem files:
//   (declare-const y Int) (declare-const M (Array Int Int))
//   (declare-pred p (Int)) (declare-fun f (Int) Int)
//   (assert-A <formula>) (assert-B <formula>) (set-option :key value)
Problem parse_problem(const std::string& text);

// A single formula in the context of an existing problem signature
// (used to re-parse printed interpolants).
Formula parse_formula_text(const std::string& text, const Signature& sig);

}  // namespace itp

#endif
