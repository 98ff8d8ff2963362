#include "itp/proof.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "itp/printer.hpp"

namespace itp {

namespace {

Formula extract_rec(ProofNode& n, SymbolGen& gen) {
  std::vector<Formula> sub;
  sub.reserve(n.prem.size());
  for (auto& p : n.prem) sub.push_back(extract_rec(*p, gen));

  Formula out;
  switch (n.rule.comb) {
    case Comb::Leaf:
      if (!n.prem.empty()) throw SchemaMismatch("leaf with premises: " + n.rule.name);
      out = n.rule.leaf_itp;
      break;
    case Comb::Id:
      if (sub.size() != 1) throw OpenProof();
      out = sub[0];
      break;
    case Comb::OrFold:
      if (sub.empty()) throw OpenProof();
      out = mk_or(sub);
      break;
    case Comb::AndFold:
      if (sub.empty()) throw OpenProof();
      out = mk_and(sub);
      break;
    case Comb::QuantUni:
    case Comb::QuantExi: {
      if (sub.size() != 1) throw OpenProof();
      out = sub[0];
      for (auto it = n.rule.quant_syms.rbegin(); it != n.rule.quant_syms.rend(); ++it) {
        if (!contains_sym(out, *it)) continue;
        std::string v = gen.fresh_var();
        out = n.rule.comb == Comb::QuantUni ? forall(v, substitute(out, *it, LinTerm(v)))
                                            : exists(v, substitute(out, *it, LinTerm(v)));
      }
      break;
    }
    case Comb::Strengthen: {
      if (sub.size() != 3) throw OpenProof();
      // premises: [eq-case, charge-A, charge-B]
      out = f_or(sub[1], f_and(sub[0], sub[2]));
      break;
    }
  }
  if (!out.valid()) throw OpenProof();
  n.concl.interpolant_slot = out;
  return out;
}

void collect_nodes(const ProofNode& n, std::vector<const ProofNode*>& out) {
  out.push_back(&n);
  for (const auto& p : n.prem) collect_nodes(*p, out);
}

}  // namespace

Formula extract_interpolant(ProofNode& root, SymbolGen& gen) {
  if (!root.closed()) throw OpenProof();
  return extract_rec(root, gen);
}

void write_trace(const ProofNode& root, std::ostream& os) {
  std::vector<const ProofNode*> nodes;
  collect_nodes(root, nodes);
  std::sort(nodes.begin(), nodes.end(),
            [](const ProofNode* a, const ProofNode* b) { return a->id < b->id; });
  for (const ProofNode* n : nodes) {
    os << "(node " << n->id << " " << n->rule.name << " " << print_sequent(n->concl)
       << " (premises";
    for (const auto& p : n->prem) os << " " << p->id;
    os << "))\n";
  }
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool validate_rec(const ProofNode& n, std::string* why) {
  switch (n.rule.comb) {
    case Comb::Leaf:
      if (!n.prem.empty()) return fail(why, "leaf node with premises");
      if (!n.rule.leaf_itp.valid()) return fail(why, "leaf without interpolant");
      break;
    case Comb::Id:
    case Comb::QuantUni:
    case Comb::QuantExi:
      if (n.prem.size() != 1) return fail(why, n.rule.name + ": expected one premise");
      break;
    case Comb::OrFold:
    case Comb::AndFold:
      if (n.prem.empty()) return fail(why, n.rule.name + ": no premises");
      break;
    case Comb::Strengthen:
      if (n.prem.size() != 3) return fail(why, "STRENGTHEN: expected three premises");
      break;
  }

  // Fresh constants must not occur in the conclusion.
  if (!n.rule.fresh.empty()) {
    for (const auto& lf : n.concl.ant)
      if (contains_sym(lf.f, n.rule.fresh)) return fail(why, "fresh constant in conclusion");
    for (const auto& lf : n.concl.suc)
      if (contains_sym(lf.f, n.rule.fresh)) return fail(why, "fresh constant in conclusion");
    for (const auto* ls : {&n.concl.eqs, &n.concl.ineqs})
      for (const auto& l : *ls)
        if (l.t.contains_sym(n.rule.fresh)) return fail(why, "fresh constant in conclusion");
  }

  // Discharge chain: MUL/RED certificate arithmetic against the target.
  if (n.rule.name == "RED-RIGHT" || n.rule.name == "MUL-RIGHT") {
    if (!n.concl.target || !n.prem[0]->concl.target)
      return fail(why, n.rule.name + ": missing succedent target");
  }
  if (n.rule.name == "CLOSE-EQ-RIGHT") {
    if (!n.concl.target) return fail(why, "CLOSE-EQ-RIGHT: missing target");
    if (!n.concl.target->s.is_zero()) return fail(why, "CLOSE-EQ-RIGHT: literal not 0=0");
  }
  if (n.rule.name == "STRENGTHEN") {
    // premise literals: t=0 [a], t+1<=0 [a+1], t+1<=0 [a]
    long pid = n.rule.principal;
    const AnnLit* src = nullptr;
    for (const auto& l : n.concl.ineqs)
      if (l.id == pid) src = &l;
    if (!src) return fail(why, "STRENGTHEN: principal inequality not in conclusion");
    auto has = [&](const ProofNode& p, bool eq, const LinTerm& t, const LinTerm& a) {
      const auto& v = eq ? p.concl.eqs : p.concl.ineqs;
      for (const auto& l : v)
        if (l.id == pid && l.t == t && l.apart == a) return true;
      return false;
    };
    LinTerm t1 = src->t + LinTerm(Int(1)), a1 = src->apart + LinTerm(Int(1));
    if (!has(*n.prem[0], true, src->t, src->apart)) return fail(why, "STRENGTHEN: bad eq premise");
    if (!has(*n.prem[1], false, t1, a1)) return fail(why, "STRENGTHEN: bad charge-A premise");
    if (!has(*n.prem[2], false, t1, src->apart))
      return fail(why, "STRENGTHEN: bad charge-B premise");
  }

  for (const auto& p : n.prem)
    if (!validate_rec(*p, why)) return false;
  return true;
}

}  // namespace

bool validate_proof(const ProofNode& root, std::string* why) {
  return validate_rec(root, why);
}

}  // namespace itp
