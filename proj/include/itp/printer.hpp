#ifndef ITP_PRINTER_HPP
#define ITP_PRINTER_HPP

#include <string>

#include "itp/sequent.hpp"
#include "itp/signature.hpp"

namespace itp {

struct Problem;

std::string print_term(const LinTerm& t);
std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);
std::string print_problem(const Problem& p);

}  // namespace itp

#endif
