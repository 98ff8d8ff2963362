#include "itp/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <vector>

namespace itp {

namespace {

struct Tok {
  enum Kind { LPar, RPar, Atom, End } kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  Tok next() {
    for (;;) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
      if (pos < src.size() && src[pos] == ';') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    if (pos >= src.size()) return {Tok::End, "", line, col};
    int l = line, c = col;
    char ch = src[pos];
    if (ch == '(') {
      advance();
      return {Tok::LPar, "(", l, c};
    }
    if (ch == ')') {
      advance();
      return {Tok::RPar, ")", l, c};
    }
    std::string text;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != ';') {
      text += src[pos];
      advance();
    }
    return {Tok::Atom, text, l, c};
  }
};

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> kids;
  int line = 0, col = 0;

  const SExpr& at(size_t i, const char* what) const {
    if (is_atom || i >= kids.size())
      throw ParseError(line, col, std::string("expected ") + what);
    return kids[i];
  }
  const std::string& head() const {
    static const std::string empty;
    if (is_atom) return atom;
    if (kids.empty() || !kids[0].is_atom) return empty;
    return kids[0].atom;
  }
};

SExpr read_sexpr(Lexer& lx, Tok first) {
  if (first.kind == Tok::Atom) {
    SExpr s;
    s.is_atom = true;
    s.atom = first.text;
    s.line = first.line;
    s.col = first.col;
    return s;
  }
  if (first.kind != Tok::LPar) throw ParseError(first.line, first.col, "expected '('");
  SExpr s;
  s.line = first.line;
  s.col = first.col;
  for (;;) {
    Tok t = lx.next();
    if (t.kind == Tok::RPar) return s;
    if (t.kind == Tok::End) throw ParseError(t.line, t.col, "unexpected end of input");
    s.kids.push_back(read_sexpr(lx, t));
  }
}

bool is_integer(const std::string& s) {
  size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

const std::set<std::string> kReserved = {
    "and", "or",  "not",    "=>",     "forall", "exists", "=",    "<=",  "<",
    ">=",  ">",   "divides", "div",   "true",   "false",  "Int",  "Array",
    "select", "store", "assert-A", "assert-B", "declare-const", "declare-pred",
    "declare-fun", "set-option"};

struct FormulaParser {
  const Signature& sig;
  std::vector<std::pair<std::string, Sort>> bound;

  std::optional<Sort> bound_sort(const std::string& name) const {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (it->first == name) return it->second;
    return std::nullopt;
  }

  struct TypedTerm {
    LinTerm t;
    Sort sort;
  };

  [[noreturn]] void err(const SExpr& s, const std::string& msg) const {
    throw ParseError(s.line, s.col, msg);
  }

  TypedTerm parse_term(const SExpr& s) {
    if (s.is_atom) {
      if (is_integer(s.atom)) return {LinTerm(Int(s.atom)), Sort::IntS};
      if (auto bs = bound_sort(s.atom)) return {LinTerm(s.atom), *bs};
      auto it = sig.consts.find(s.atom);
      if (it == sig.consts.end()) throw SortError("undeclared symbol " + s.atom);
      return {LinTerm(s.atom), it->second};
    }
    const std::string& h = s.head();
    if (h.empty()) err(s, "expected term");
    if (h == "+") {
      LinTerm acc;
      for (size_t i = 1; i < s.kids.size(); ++i) acc += int_term(s.kids[i]);
      return {acc, Sort::IntS};
    }
    if (h == "-") {
      if (s.kids.size() == 2) return {-int_term(s.kids[1]), Sort::IntS};
      if (s.kids.size() < 2) err(s, "'-' needs arguments");
      LinTerm acc = int_term(s.kids[1]);
      for (size_t i = 2; i < s.kids.size(); ++i) acc -= int_term(s.kids[i]);
      return {acc, Sort::IntS};
    }
    if (h == "*") {
      Int k(1);
      std::optional<LinTerm> var;
      for (size_t i = 1; i < s.kids.size(); ++i) {
        const SExpr& a = s.kids[i];
        if (a.is_atom && is_integer(a.atom)) {
          k *= Int(a.atom);
        } else {
          if (var) err(s, "nonlinear product");
          var = int_term(a);
        }
      }
      return {var ? *var * k : LinTerm(k), Sort::IntS};
    }
    if (h == "div") {
      if (s.kids.size() != 3) err(s, "div expects (div t k)");
      LinTerm num = int_term(s.kids[1]);
      const SExpr& d = s.kids[2];
      if (!d.is_atom || !is_integer(d.atom)) err(s, "div expects a literal divisor");
      Int den(d.atom);
      if (den <= 0) err(s, "ZeroDivisor: div expects a positive divisor");
      if (den == 1) return {num, Sort::IntS};
      return {LinTerm(FunApp::div(num, den)), Sort::IntS};
    }
    auto fit = sig.funs.find(h);
    if (fit == sig.funs.end()) throw SortError("undeclared function " + h);
    const FunDecl& fd = fit->second;
    if (s.kids.size() - 1 != fd.args.size())
      err(s, h + " expects " + std::to_string(fd.args.size()) + " arguments");
    FunApp app;
    app.fun = h;
    for (size_t i = 0; i < fd.args.size(); ++i) {
      TypedTerm a = parse_term(s.kids[i + 1]);
      if (a.sort != fd.args[i]) throw SortError("argument " + std::to_string(i + 1) + " of " + h);
      app.args.push_back(a.t);
    }
    return {LinTerm(std::move(app)), fd.ret};
  }

  LinTerm int_term(const SExpr& s) {
    TypedTerm t = parse_term(s);
    if (t.sort != Sort::IntS) throw SortError("integer term expected");
    return t.t;
  }

  Formula parse(const SExpr& s) {
    if (s.is_atom) {
      if (s.atom == "true") return f_true();
      if (s.atom == "false") return f_false();
      auto pit = sig.preds.find(s.atom);
      if (pit != sig.preds.end() && pit->second.args.empty()) return pred_app(s.atom, {});
      throw SortError("expected formula, got " + s.atom);
    }
    const std::string& h = s.head();
    if (h == "not") {
      if (s.kids.size() != 2) err(s, "not expects one argument");
      return f_not(parse(s.kids[1]));
    }
    if (h == "and" || h == "or") {
      std::vector<Formula> fs;
      for (size_t i = 1; i < s.kids.size(); ++i) fs.push_back(parse(s.kids[i]));
      if (fs.empty()) return h == "and" ? f_true() : f_false();
      return h == "and" ? mk_and(fs) : mk_or(fs);
    }
    if (h == "=>") {
      if (s.kids.size() != 3) err(s, "=> expects two arguments");
      return f_or(f_not(parse(s.kids[1])), parse(s.kids[2]));
    }
    if (h == "=") {
      if (s.kids.size() != 3) err(s, "= expects two arguments");
      TypedTerm a = parse_term(s.kids[1]);
      TypedTerm b = parse_term(s.kids[2]);
      if (a.sort != b.sort) throw SortError("equality between different sorts");
      return eq0(a.t - b.t);
    }
    if (h == "<=" || h == "<" || h == ">=" || h == ">") {
      if (s.kids.size() != 3) err(s, h + " expects two arguments");
      LinTerm a = int_term(s.kids[1]);
      LinTerm b = int_term(s.kids[2]);
      if (h == "<=") return leq0(a - b);
      if (h == "<") return leq0(a - b + LinTerm(Int(1)));
      if (h == ">=") return leq0(b - a);
      return leq0(b - a + LinTerm(Int(1)));
    }
    if (h == "divides") {
      if (s.kids.size() != 3) err(s, "divides expects (divides k t)");
      const SExpr& k = s.kids[1];
      if (!k.is_atom || !is_integer(k.atom)) err(s, "divides expects a literal modulus");
      Int m(k.atom);
      if (m <= 0) err(s, "divides expects a positive modulus");
      return divides(m, int_term(s.kids[2]));
    }
    if (h == "forall" || h == "exists") {
      if (s.kids.size() != 3) err(s, h + " expects bindings and a body");
      const SExpr& binds = s.at(1, "binding list");
      size_t pushed = 0;
      for (const auto& b : binds.kids) {
        if (b.is_atom || b.kids.size() != 2 || !b.kids[0].is_atom)
          err(binds, "binding (name sort)");
        const std::string& name = b.kids[0].atom;
        if (is_generated_sym(name)) err(b, "reserved variable name " + name);
        if (sig.consts.count(name) || sig.preds.count(name) || sig.funs.count(name))
          throw SortError("bound variable " + name + " shadows a declared symbol");
        Sort so = Sort::IntS;
        if (!b.kids[1].is_atom) {
          if (b.kids[1].head() != "Array") err(b, "unknown sort");
          so = Sort::ArrayS;
        } else if (b.kids[1].atom != "Int") {
          err(b, "unknown sort " + b.kids[1].atom);
        }
        bound.emplace_back(name, so);
        pushed++;
      }
      Formula body = parse(s.kids[2]);
      for (auto it = binds.kids.rbegin(); it != binds.kids.rend(); ++it) {
        const std::string& name = it->kids[0].atom;
        body = h == "forall" ? forall(name, body) : exists(name, body);
      }
      bound.resize(bound.size() - pushed);
      return body;
    }
    // predicate or graph atom
    auto pit = sig.preds.find(h);
    if (pit != sig.preds.end()) {
      if (s.kids.size() - 1 != pit->second.args.size())
        err(s, h + " expects " + std::to_string(pit->second.args.size()) + " arguments");
      std::vector<LinTerm> args;
      for (size_t i = 1; i < s.kids.size(); ++i) args.push_back(int_term(s.kids[i]));
      return pred_app(h, std::move(args));
    }
    if (h.size() > 2 && h.substr(h.size() - 2) == "_p") {
      std::string fun = h.substr(0, h.size() - 2);
      auto fit = sig.funs.find(fun);
      if (fit != sig.funs.end()) {
        const FunDecl& fd = fit->second;
        if (s.kids.size() - 1 != fd.args.size() + 1)
          err(s, h + " expects " + std::to_string(fd.args.size() + 1) + " arguments");
        std::vector<LinTerm> args;
        for (size_t i = 0; i < fd.args.size(); ++i) {
          TypedTerm a = parse_term(s.kids[i + 1]);
          if (a.sort != fd.args[i]) throw SortError("argument of " + h);
          args.push_back(a.t);
        }
        TypedTerm res = parse_term(s.kids.back());
        if (res.sort != fd.ret) throw SortError("result argument of " + h);
        args.push_back(res.t);
        return pred_app(fun, std::move(args), true);
      }
    }
    throw SortError("undeclared symbol " + h);
  }
};

void check_declarable(const SExpr& where, const std::string& name, const Signature& sig) {
  if (name.empty() || is_integer(name))
    throw ParseError(where.line, where.col, "bad symbol name " + name);
  if (is_generated_sym(name))
    throw ParseError(where.line, where.col, "reserved symbol name " + name);
  if (kReserved.count(name))
    throw ParseError(where.line, where.col, "reserved word " + name);
  if (name.size() > 2 && name.substr(name.size() - 2) == "_p")
    throw ParseError(where.line, where.col, "names ending in _p are reserved " + name);
  if (sig.consts.count(name) || sig.preds.count(name) || sig.funs.count(name))
    throw SortError("duplicate declaration of " + name);
}

Sort parse_sort(const SExpr& s, Signature& sig) {
  if (s.is_atom) {
    if (s.atom == "Int") return Sort::IntS;
    throw ParseError(s.line, s.col, "unknown sort " + s.atom);
  }
  if (s.head() == "Array" && s.kids.size() == 3) {
    sig.register_arrays();
    return Sort::ArrayS;
  }
  throw ParseError(s.line, s.col, "unknown sort");
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Lexer lx(text);
  std::vector<SExpr> forms;
  for (;;) {
    Tok t = lx.next();
    if (t.kind == Tok::End) break;
    forms.push_back(read_sexpr(lx, t));
  }
  Problem p;
  std::vector<Formula> as, bs;
  for (const SExpr& f : forms) {
    const std::string& h = f.head();
    if (h == "declare-const") {
      if (f.kids.size() != 3 || !f.kids[1].is_atom)
        throw ParseError(f.line, f.col, "declare-const expects (declare-const name sort)");
      check_declarable(f, f.kids[1].atom, p.sig);
      p.sig.declare_const(f.kids[1].atom, parse_sort(f.kids[2], p.sig));
    } else if (h == "declare-pred") {
      if (f.kids.size() != 3 || !f.kids[1].is_atom || f.kids[2].is_atom)
        throw ParseError(f.line, f.col, "declare-pred expects (declare-pred name (sorts))");
      check_declarable(f, f.kids[1].atom, p.sig);
      PredDecl d;
      for (const auto& a : f.kids[2].kids) {
        Sort so = parse_sort(a, p.sig);
        if (so != Sort::IntS) throw SortError("predicate arguments must be Int");
        d.args.push_back(so);
      }
      p.sig.declare_pred(f.kids[1].atom, std::move(d));
    } else if (h == "declare-fun") {
      if (f.kids.size() != 4 || !f.kids[1].is_atom || f.kids[2].is_atom)
        throw ParseError(f.line, f.col, "declare-fun expects (declare-fun name (sorts) sort)");
      check_declarable(f, f.kids[1].atom, p.sig);
      FunDecl d;
      for (const auto& a : f.kids[2].kids) d.args.push_back(parse_sort(a, p.sig));
      d.ret = parse_sort(f.kids[3], p.sig);
      p.sig.declare_fun(f.kids[1].atom, std::move(d));
    } else if (h == "assert-A" || h == "assert-B") {
      if (f.kids.size() != 2) throw ParseError(f.line, f.col, h + " expects one formula");
      FormulaParser fp{p.sig, {}};
      (h == "assert-A" ? as : bs).push_back(fp.parse(f.kids[1]));
    } else if (h == "set-option") {
      if (f.kids.size() != 3 || !f.kids[1].is_atom || !f.kids[2].is_atom)
        throw ParseError(f.line, f.col, "set-option expects (set-option :key value)");
      std::string key = f.kids[1].atom;
      if (!key.empty() && key[0] == ':') key = key.substr(1);
      p.options[key] = f.kids[2].atom;
    } else {
      throw ParseError(f.line, f.col, "unknown form " + h);
    }
  }
  p.part_A = mk_and(as);
  p.part_B = mk_and(bs);
  return p;
}

Formula parse_formula_text(const std::string& text, const Signature& sig) {
  Lexer lx(text);
  Tok t = lx.next();
  SExpr s = read_sexpr(lx, t);
  FormulaParser fp{sig, {}};
  return fp.parse(s);
}

}  // namespace itp
