#include "itp/sequent.hpp"

namespace itp {

std::set<std::string, SymLess> Sequent::vocab(Label side) const {
  std::set<std::string, SymLess> out;
  auto add_formula = [&](const Formula& f) {
    collect_free_consts(f, out);
  };
  for (const auto& lf : ant)
    if (lf.lab == side) add_formula(lf.f);
  for (const auto& lf : suc)
    if (lf.lab == side) add_formula(lf.f);
  for (const auto& a : ant_atoms)
    if (a.lab == side)
      for (const auto& t : a.args) t.collect_symbols(out);
  for (const auto& a : suc_atoms)
    if (a.lab == side)
      for (const auto& t : a.args) t.collect_symbols(out);
  for (const auto* lits : {&eqs, &ineqs})
    for (const auto& l : *lits) {
      if (side == Label::L) {
        l.apart.collect_symbols(out);
      } else {
        (l.t - l.apart).collect_symbols(out);
      }
    }
  if (target) {
    if (side == Label::L) {
      target->apart.collect_symbols(out);
    } else {
      (target->s - target->apart).collect_symbols(out);
    }
  }
  return out;
}

}  // namespace itp
