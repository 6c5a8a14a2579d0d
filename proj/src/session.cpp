#include "valx/session.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace valx {

// ---- lexing ----

namespace {

struct Token {
  enum class T { Ident, Number, Sym, End };
  T t = T::End;
  std::string text;
  int col = 0;
};

[[noreturn]] void parse_error(int line, int col, const std::string& what) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

std::vector<Token> lex(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    int col = static_cast<int>(i) + 1;
    if (std::isspace(ch)) {
      ++i;
    } else if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::T::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::T::Number, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::string_view("+-*/^(),:@=").find(static_cast<char>(ch)) != std::string_view::npos) {
      out.push_back({Token::T::Sym, std::string(1, static_cast<char>(ch)), col});
      ++i;
    } else {
      parse_error(line, col, std::string("unexpected character '") + static_cast<char>(ch) + "'");
    }
  }
  out.push_back({Token::T::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

class Cursor {
 public:
  Cursor(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[i_]; }
  const Token& next() {
    const Token& t = toks_[i_];
    if (t.t != Token::T::End) ++i_;
    return t;
  }
  bool at_end() const { return peek().t == Token::T::End; }
  bool is_sym(const char* s) const { return peek().t == Token::T::Sym && peek().text == s; }
  bool is_word(const char* w) const { return peek().t == Token::T::Ident && peek().text == w; }
  int line() const { return line_; }

  [[noreturn]] void error(const std::string& what) const { parse_error(line_, peek().col, what); }

  void expect_sym(const char* s) {
    if (!is_sym(s)) error(std::string("expected '") + s + "'" + found());
    next();
  }
  std::string ident(const char* what) {
    if (peek().t != Token::T::Ident) error(std::string("expected ") + what + found());
    return next().text;
  }
  long integer(const char* what) {
    bool neg = false;
    if (is_sym("-")) {
      next();
      neg = true;
    }
    if (peek().t != Token::T::Number) error(std::string("expected ") + what + found());
    const std::string& txt = next().text;
    if (txt.size() > 15) error("integer too large");
    long v = std::stol(txt);
    return neg ? -v : v;
  }
  void expect_end() {
    if (!at_end()) error("unexpected '" + peek().text + "'");
  }
  std::string found() const { return at_end() ? ", found end of line" : ", found '" + peek().text + "'"; }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int line_;
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr l, ExprPtr r) {
  Expr e;
  e.kind = k;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return make(std::move(e));
}

ExprPtr parse_sum(Cursor& c);

ExprPtr parse_atom(Cursor& c) {
  const Token& t = c.peek();
  if (t.t == Token::T::Number) {
    Expr e;
    e.kind = Expr::Kind::Number;
    e.number = Int(c.next().text);
    return make(std::move(e));
  }
  if (t.t == Token::T::Ident) {
    if (t.text == "with") c.error("expected an expression, found 'with'");
    Expr e;
    e.kind = Expr::Kind::Name;
    e.name = c.next().text;
    return make(std::move(e));
  }
  if (c.is_sym("(")) {
    c.next();
    ExprPtr inner = parse_sum(c);
    c.expect_sym(")");
    return inner;
  }
  c.error("expected an expression" + c.found());
}

ExprPtr parse_power(Cursor& c) {
  ExprPtr base = parse_atom(c);
  if (c.is_sym("^")) {
    c.next();
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.lhs = base;
    e.exponent = c.integer("an integer exponent");
    return make(std::move(e));
  }
  return base;
}

ExprPtr parse_unary(Cursor& c) {
  if (c.is_sym("-")) {
    c.next();
    Expr e;
    e.kind = Expr::Kind::Neg;
    e.lhs = parse_unary(c);
    return make(std::move(e));
  }
  return parse_power(c);
}

ExprPtr parse_product(Cursor& c) {
  ExprPtr lhs = parse_unary(c);
  while (c.is_sym("*") || c.is_sym("/")) {
    Expr::Kind k = c.next().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
    lhs = binary(k, lhs, parse_unary(c));
  }
  return lhs;
}

ExprPtr parse_sum(Cursor& c) {
  ExprPtr lhs = parse_product(c);
  while (c.is_sym("+") || c.is_sym("-")) {
    Expr::Kind k = c.next().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
    lhs = binary(k, lhs, parse_product(c));
  }
  return lhs;
}

// "q", "-q", "n/d" or "(q1,...,qr)"
RatVec parse_value_literal(Cursor& c) {
  std::string text;
  int col = c.peek().col;
  if (c.is_sym("(")) {
    c.next();
    while (!c.at_end() && !c.is_sym(")")) text += c.next().text;
    c.expect_sym(")");
    text = "(" + text + ")";
  } else {
    if (c.is_sym("-")) text += c.next().text;
    if (c.peek().t != Token::T::Number) c.error("expected a value" + c.found());
    text += c.next().text;
    if (c.is_sym("/")) {
      text += c.next().text;
      if (c.peek().t != Token::T::Number) c.error("expected a denominator" + c.found());
      text += c.next().text;
    }
  }
  try {
    return parse_rat_vec(text);
  } catch (const Error& e) {
    parse_error(c.line(), col, e.what());
  }
}

Rat parse_rat_literal(Cursor& c) {
  RatVec v = parse_value_literal(c);
  if (v.size() != 1) c.error("expected a rational number");
  return v[0];
}

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap_if(const ExprPtr& e, bool cond) { return cond ? "(" + print_expr(e) + ")" : print_expr(e); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_values(const std::vector<GroupValue>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.to_string());
  return join(s, ", ");
}

const char* boolstr(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number: return e->number.get_str();
    case Expr::Kind::Name: return e->name;
    case Expr::Kind::Neg: return "-" + wrap_if(e->lhs, precedence(e->lhs) < 3);
    case Expr::Kind::Pow: return wrap_if(e->lhs, precedence(e->lhs) < 5) + "^" + std::to_string(e->exponent);
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      const char* op = e->kind == Expr::Kind::Add ? " + " : " - ";
      return wrap_if(e->lhs, precedence(e->lhs) < 1) + op + wrap_if(e->rhs, precedence(e->rhs) <= 1);
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const char* op = e->kind == Expr::Kind::Mul ? "*" : "/";
      return wrap_if(e->lhs, precedence(e->lhs) < 2) + op + wrap_if(e->rhs, precedence(e->rhs) <= 2);
    }
  }
  return "";
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number: return a->number == b->number;
    case Expr::Kind::Name: return a->name == b->name;
    case Expr::Kind::Neg: return same_expr(a->lhs, b->lhs);
    case Expr::Kind::Pow: return a->exponent == b->exponent && same_expr(a->lhs, b->lhs);
    default: return same_expr(a->lhs, b->lhs) && same_expr(a->rhs, b->rhs);
  }
}

// ---- statements ----

std::string Statement::print() const {
  switch (kind) {
    case Kind::Base:
      if (base_kind == "padic") return "base padic " + std::to_string(prime);
      return "base ratfun " + (prime == 0 ? std::string("Q") : "F" + std::to_string(prime)) + " " + join(vars, " ");
    case Kind::Henselian: return "henselian";
    case Kind::Ext: return "ext " + name + " : " + print_expr(expr) + " @ " + to_string(value);
    case Kind::Gamma: return "gamma " + gamma->to_string();
    case Kind::Pair: {
      std::string s = "pair " + name;
      if (assert_minimal) s += " minimal";
      if (gamma) s += " gamma=" + to_string(std::get<RationalPoint>(gamma->variant()).point);
      return s;
    }
    case Kind::PolyDef: return "poly " + name + " = " + print_expr(expr);
    case Kind::Seq:
    case Kind::Chain: {
      std::vector<std::string> parts;
      for (const auto& e : items) parts.push_back(print_expr(e));
      return std::string(kind == Kind::Seq ? "seq " : "chain ") + name + " = " + join(parts, ", ");
    }
    case Kind::Command: {
      std::string s = command;
      if (!sub.empty()) s += " " + sub;
      if (!target.empty()) s += " " + target;
      for (long n : numbers) s += " " + std::to_string(n);
      if (!items.empty()) {
        s += " " + print_expr(items[0]);
        if (items.size() > 1) {
          std::vector<std::string> rest;
          for (std::size_t i = 1; i < items.size(); ++i) rest.push_back(print_expr(items[i]));
          s += " with " + join(rest, ", ");
        }
      }
      return s;
    }
  }
  return "";
}

std::string Session::print() const {
  std::string out;
  for (const auto& s : statements) out += s.print() + "\n";
  return out;
}

void Parser::declare(const std::string& name, Sym kind, int line, int col) {
  if (name == "x" || name == "with" || name == "gamma")
    parse_error(line, col, "'" + name + "' is reserved");
  if (names_.count(name)) parse_error(line, col, "'" + name + "' is already declared");
  names_[name] = kind;
}

void Parser::require_names(const ExprPtr& e, int line) {
  if (!e) return;
  if (e->kind == Expr::Kind::Name) {
    if (e->name == "x") return;
    auto it = names_.find(e->name);
    if (it == names_.end())
      fail(ErrorKind::UseBeforeDecl, "line " + std::to_string(line) + ": '" + e->name + "' is not declared");
    if (it->second == Sym::Seq || it->second == Sym::Chain)
      fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": '" + e->name + "' is a sequence, not a value");
    return;
  }
  require_names(e->lhs, line);
  require_names(e->rhs, line);
}

namespace {

const std::set<std::string> kNoArg = {"ic", "report", "purity", "jcount", "tame", "bound", "omegaq"};
const std::set<std::string> kOneExpr = {"eval", "value", "residue", "delta", "newton", "minpoly",
                                        "nuq", "equiv", "coincide", "invariants", "artin"};
const std::set<std::string> kOptExpr = {"kras", "conj"};
const std::set<std::string> kNeedsPair = {"eval", "delta", "ic", "report", "purity", "jcount", "tame", "bound",
                                          "omegaq", "nuq", "equiv", "coincide", "invariants"};

}  // namespace

std::optional<Statement> Parser::parse_line(std::string_view text, int line) {
  std::string_view body = text.substr(0, text.find('#'));
  Cursor c(lex(body, line), line);
  if (c.at_end()) return std::nullopt;
  Statement s;
  s.line = line;
  const int col0 = c.peek().col;
  const std::string head = c.ident("a directive or command");
  auto use_error = [&](const std::string& what) {
    fail(ErrorKind::UseBeforeDecl, "line " + std::to_string(line) + ": " + what);
  };
  auto need_base = [&] {
    if (!has_base_) use_error("'" + head + "' before 'base'");
  };
  auto read_expr = [&]() {
    ExprPtr e = parse_sum(c);
    require_names(e, line);
    return e;
  };

  if (head == "base") {
    if (has_base_) parse_error(line, col0, "a session has a single base");
    s.kind = Statement::Kind::Base;
    s.base_kind = c.ident("'padic' or 'ratfun'");
    if (s.base_kind == "padic") {
      s.prime = static_cast<unsigned long>(c.integer("a prime"));
    } else if (s.base_kind == "ratfun") {
      int col = c.peek().col;
      std::string field = c.ident("a coefficient field such as F3 or Q");
      if (field == "Q") {
        s.prime = 0;
      } else if (field.size() > 1 && field[0] == 'F' &&
                 std::all_of(field.begin() + 1, field.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        s.prime = std::stoul(field.substr(1));
      } else {
        parse_error(line, col, "unknown coefficient field '" + field + "'");
      }
      while (!c.at_end()) {
        int vc = c.peek().col;
        std::string v = c.ident("a variable name");
        declare(v, Sym::Var, line, vc);
        s.vars.push_back(v);
      }
      if (s.vars.empty()) c.error("expected at least one variable");
    } else {
      parse_error(line, col0, "unknown base kind '" + s.base_kind + "'");
    }
    c.expect_end();
    has_base_ = true;
    return s;
  }
  if (head == "henselian") {
    need_base();
    if (has_ext_) parse_error(line, col0, "'henselian' must precede every 'ext'");
    s.kind = Statement::Kind::Henselian;
    c.expect_end();
    return s;
  }
  if (head == "ext") {
    need_base();
    s.kind = Statement::Kind::Ext;
    int nc = c.peek().col;
    s.name = c.ident("a generator name");
    c.expect_sym(":");
    s.expr = read_expr();
    c.expect_sym("@");
    s.value = parse_value_literal(c);
    c.expect_end();
    declare(s.name, Sym::Generator, line, nc);
    has_ext_ = true;
    return s;
  }
  if (head == "gamma") {
    need_base();
    s.kind = Statement::Kind::Gamma;
    std::string kind = c.ident("'rational', 'quadirr' or 'aboveall'");
    try {
      if (kind == "rational") {
        s.gamma = GammaSpec::rational(parse_value_literal(c));
      } else if (kind == "quadirr") {
        RatVec q0 = parse_value_literal(c);
        Rat q1 = parse_rat_literal(c);
        long d = c.integer("a positive integer d");
        s.gamma = GammaSpec::quadratic(q0, q1, Int(d));
      } else if (kind == "aboveall") {
        s.gamma = GammaSpec::above_all(1);
      } else {
        parse_error(line, col0, "unknown gamma kind '" + kind + "'");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      parse_error(line, col0, e.what());
    }
    c.expect_end();
    has_gamma_ = true;
    return s;
  }
  if (head == "pair") {
    need_base();
    s.kind = Statement::Kind::Pair;
    int nc = c.peek().col;
    s.name = c.ident("an element name");
    auto it = names_.find(s.name);
    if (it == names_.end()) use_error("'" + s.name + "' is not declared");
    if (it->second != Sym::Generator && it->second != Sym::Poly)
      parse_error(line, nc, "'" + s.name + "' is not an element");
    if (c.is_word("minimal")) {
      c.next();
      s.assert_minimal = true;
    }
    if (c.is_word("gamma")) {
      c.next();
      c.expect_sym("=");
      s.gamma = GammaSpec::rational(parse_value_literal(c));
      has_gamma_ = true;
    }
    c.expect_end();
    if (!has_gamma_) use_error("'pair' before 'gamma'");
    has_pair_ = true;
    return s;
  }
  if (head == "poly" || head == "seq" || head == "chain") {
    need_base();
    s.kind = head == "poly" ? Statement::Kind::PolyDef : (head == "seq" ? Statement::Kind::Seq : Statement::Kind::Chain);
    int nc = c.peek().col;
    s.name = c.ident("a name");
    c.expect_sym("=");
    if (s.kind == Statement::Kind::PolyDef) {
      s.expr = read_expr();
    } else {
      s.items.push_back(read_expr());
      while (c.is_sym(",")) {
        c.next();
        s.items.push_back(read_expr());
      }
    }
    c.expect_end();
    declare(s.name, s.kind == Statement::Kind::PolyDef ? Sym::Poly : (s.kind == Statement::Kind::Seq ? Sym::Seq : Sym::Chain),
            line, nc);
    return s;
  }

  // commands
  s.kind = Statement::Kind::Command;
  s.command = head;
  auto need_kind = [&](const std::string& name, Sym kind, const char* what) {
    auto it = names_.find(name);
    if (it == names_.end()) use_error("'" + name + "' is not declared");
    if (it->second != kind) parse_error(line, col0, "'" + name + "' is not a " + what);
  };
  if (head == "ostrowski") {
    for (int i = 0; i < 4; ++i) s.numbers.push_back(c.integer("an integer"));
    c.expect_end();
    return s;
  }
  need_base();
  if (kNoArg.count(head)) {
    c.expect_end();
  } else if (kOneExpr.count(head)) {
    s.items.push_back(read_expr());
    c.expect_end();
  } else if (kOptExpr.count(head)) {
    if (!c.at_end()) s.items.push_back(read_expr());
    c.expect_end();
    if (s.items.empty() && !has_pair_) use_error("'" + head + "' without an argument needs a 'pair'");
  } else if (head == "minpair") {
    if (!c.at_end()) {
      s.target = c.ident("a chain name");
      need_kind(s.target, Sym::Chain, "chain");
      if (!has_gamma_) use_error("'minpair' before 'gamma'");
      has_pair_ = true;
    } else if (!has_pair_) {
      use_error("'minpair' before 'pair'");
    }
    c.expect_end();
  } else if (head == "verify") {
    s.target = c.ident("a chain name");
    need_kind(s.target, Sym::Chain, "chain");
    c.expect_end();
  } else if (head == "pcs") {
    int sc = c.peek().col;
    s.sub = c.ident("a pcs subcommand");
    s.target = c.ident("a sequence name");
    need_kind(s.target, Sym::Seq, "sequence");
    if (s.sub == "verify") {
    } else if (s.sub == "limit" || s.sub == "track") {
      s.items.push_back(read_expr());
    } else if (s.sub == "pair") {
      if (!has_pair_) use_error("'pcs pair' before 'pair'");
    } else if (s.sub == "root") {
      s.items.push_back(read_expr());
      if (!c.is_word("with")) c.error("expected 'with'" + c.found());
      c.next();
      s.items.push_back(read_expr());
      while (c.is_sym(",")) {
        c.next();
        s.items.push_back(read_expr());
      }
    } else {
      parse_error(line, sc, "unknown pcs subcommand '" + s.sub + "'");
    }
    c.expect_end();
  } else {
    parse_error(line, col0, "unknown command '" + head + "'");
  }
  if (kNeedsPair.count(head) && !has_pair_) use_error("'" + head + "' before 'pair'");
  return s;
}

Session Parser::parse(std::string_view text) {
  Session session;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view l = text.substr(pos, end - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (auto s = parse_line(l, line)) session.statements.push_back(std::move(*s));
    pos = end + 1;
  }
  return session;
}

Session parse_session(std::string_view text) { return Parser().parse(text); }

// ---- workspace ----

namespace {

bool is_unit_poly(const Poly& p) { return p.degree() == 0 && p.coeffs()[0].is_one(); }

}  // namespace

Workspace::Ratio Workspace::eval(const ExprPtr& e) const {
  if (!base_) fail(ErrorKind::UseBeforeDecl, "no base field declared");
  const Poly one = Poly::constant(FieldElement::one(base_));
  auto normalize = [&](Ratio r) {
    if (r.den.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in " + print_expr(e));
    if (r.den.degree() == 0 && !is_unit_poly(r.den)) {
      r.num = r.num.scaled(r.den.coeffs()[0].inverse());
      r.den = Poly::constant(FieldElement::one(r.den.level()));
    }
    return r;
  };
  switch (e->kind) {
    case Expr::Kind::Number: return {Poly::constant(FieldElement::rational(base_, Rat(e->number))), one};
    case Expr::Kind::Name: {
      if (e->name == "x") return {Poly::monomial(base_, 1), one};
      const auto& vars = base_->field().vars;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == e->name) return {Poly::constant(base_->variable(i)), one};
      if (auto it = generators_.find(e->name); it != generators_.end())
        return {Poly::constant(it->second->generator()), one};
      if (auto it = polys_.find(e->name); it != polys_.end()) return it->second;
      fail(ErrorKind::UseBeforeDecl, "'" + e->name + "' is not declared");
    }
    case Expr::Kind::Neg: {
      Ratio r = eval(e->lhs);
      return {-r.num, r.den};
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      Ratio a = eval(e->lhs), b = eval(e->rhs);
      if (e->kind == Expr::Kind::Sub) b.num = -b.num;
      if (is_unit_poly(a.den) && is_unit_poly(b.den)) return {a.num + b.num, a.den * b.den};
      return normalize({a.num * b.den + b.num * a.den, a.den * b.den});
    }
    case Expr::Kind::Mul: {
      Ratio a = eval(e->lhs), b = eval(e->rhs);
      return normalize({a.num * b.num, a.den * b.den});
    }
    case Expr::Kind::Div: {
      Ratio a = eval(e->lhs), b = eval(e->rhs);
      if (b.num.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in " + print_expr(e));
      return normalize({a.num * b.den, a.den * b.num});
    }
    case Expr::Kind::Pow: {
      Ratio a = eval(e->lhs);
      long k = e->exponent;
      if (k < 0) {
        if (a.num.is_zero()) fail(ErrorKind::DivisionByZero, "negative power of zero in " + print_expr(e));
        std::swap(a.num, a.den);
        k = -k;
      }
      if (k > 4096) fail(ErrorKind::Unsupported, "exponent too large");
      return normalize({a.num.pow(static_cast<int>(k)), a.den.pow(static_cast<int>(k))});
    }
  }
  fail(ErrorKind::InvariantBreach, "unknown expression node");
}

FieldElement Workspace::to_element(const Ratio& r) const {
  if (r.num.degree() > 0 || r.den.degree() > 0)
    fail(ErrorKind::Unsupported, "expected a field element, found a function of x");
  FieldElement n = r.num.is_zero() ? FieldElement::zero(r.num.level()) : r.num.coeffs()[0];
  return n / r.den.coeffs()[0];
}

Poly Workspace::to_poly(const Ratio& r) const {
  if (r.den.degree() > 0) fail(ErrorKind::Unsupported, "expected a polynomial in x, found a quotient");
  return r.num.scaled(r.den.coeffs()[0].inverse());
}

PairOfDefinition Workspace::pair() const {
  if (!pair_elem_) fail(ErrorKind::UseBeforeDecl, "no pair declared");
  if (!gamma_) fail(ErrorKind::UseBeforeDecl, "no gamma declared");
  PairOfDefinition pd(*pair_elem_, *gamma_, pair_name_, pair_cert_);
  if (pd.minimal == MinimalityCert::None && is_minimal_pair_by_value_order(pd)) pd.minimal = MinimalityCert::ValueOrder;
  return pd;
}

PairOfDefinition Workspace::other_pair(const FieldElement& b, const std::string& name) const {
  PairOfDefinition pd(b, *gamma_, name);
  if (is_minimal_pair_by_value_order(pd)) pd.minimal = MinimalityCert::ValueOrder;
  return pd;
}

void Workspace::declare_base(const Statement& s) {
  BaseField f = s.base_kind == "padic" ? BaseField::padic(s.prime) : BaseField::rational_functions(s.prime, s.vars);
  f.henselian = henselian_;
  base_ = top_ = Level::base(std::move(f));
}

CommandOutput Workspace::execute(const Statement& s) {
  CommandOutput out;
  out.command = s.print();
  switch (s.kind) {
    case Statement::Kind::Base:
      if (base_) fail(ErrorKind::ParseError, "a session has a single base");
      declare_base(s);
      break;
    case Statement::Kind::Henselian: {
      if (!base_) fail(ErrorKind::UseBeforeDecl, "'henselian' before 'base'");
      if (top_ != base_ || !polys_.empty())
        fail(ErrorKind::Unsupported, "'henselian' must precede extensions and definitions");
      BaseField f = base_->field();
      f.henselian = henselian_ = true;
      base_ = top_ = Level::base(std::move(f));
      break;
    }
    case Statement::Kind::Ext: {
      Poly f = poly_of(s.expr);
      LevelPtr l = construct_extension(top_, s.name, f.lifted(common_level(f.level(), top_)).coeffs(), GroupValue(s.value));
      top_ = l;
      generators_[s.name] = l;
      break;
    }
    case Statement::Kind::Gamma:
      if (s.gamma->is_above_all()) {
        gamma_ = GammaSpec::above_all(base_->field().rank());
        break;
      }
      if (s.gamma->rank() != base_->field().rank())
        fail(ErrorKind::RankMismatch, "gamma has rank " + std::to_string(s.gamma->rank()) + ", the base has rank " +
                                          std::to_string(base_->field().rank()));
      gamma_ = s.gamma;
      break;
    case Statement::Kind::Pair: {
      if (s.gamma) {
        if (s.gamma->rank() != base_->field().rank()) fail(ErrorKind::RankMismatch, "gamma rank does not match the base");
        gamma_ = s.gamma;
      }
      Expr e;
      e.kind = Expr::Kind::Name;
      e.name = s.name;
      pair_elem_ = element_of(std::make_shared<const Expr>(e));
      pair_name_ = s.name;
      pair_cert_ = s.assert_minimal ? MinimalityCert::Asserted : MinimalityCert::None;
      break;
    }
    case Statement::Kind::PolyDef: polys_[s.name] = eval(s.expr); break;
    case Statement::Kind::Seq: {
      std::vector<FieldElement> z;
      for (const auto& e : s.items) z.push_back(element_of(e));
      seqs_[s.name] = std::move(z);
      break;
    }
    case Statement::Kind::Chain: {
      std::vector<FieldElement> z;
      std::vector<std::string> names;
      for (const auto& e : s.items) {
        z.push_back(element_of(e));
        names.push_back(print_expr(e));
      }
      chains_[s.name] = {std::move(z), std::move(names)};
      break;
    }
    case Statement::Kind::Command: out.lines = run_command(s); break;
  }
  return out;
}

std::vector<CommandOutput> Workspace::feed(std::string_view text) {
  std::vector<CommandOutput> outs;
  Session session = parser_.parse(text);
  for (const auto& s : session.statements) {
    CommandOutput o = execute(s);
    if (s.kind == Statement::Kind::Command) outs.push_back(std::move(o));
  }
  return outs;
}

FieldElement Workspace::element(const std::string& source) {
  Cursor c(lex(source, 0), 0);
  ExprPtr e = parse_sum(c);
  c.expect_end();
  return element_of(e);
}

Poly Workspace::polynomial(const std::string& source) {
  Cursor c(lex(source, 0), 0);
  ExprPtr e = parse_sum(c);
  c.expect_end();
  return poly_of(e);
}

std::vector<OutputLine> Workspace::run_command(const Statement& s) {
  std::vector<OutputLine> out;
  const std::string& cmd = s.command;
  auto arg = [&](std::size_t i = 0) { return print_expr(s.items[i]); };

  if (cmd == "ostrowski") {
    out.push_back({"defect", std::to_string(ostrowski_defect(s.numbers[0], s.numbers[1], s.numbers[2], s.numbers[3]))});
  } else if (cmd == "eval") {
    Ratio r = eval(s.items[0]);
    out.push_back({"omega(" + arg() + ")", nu_a_gamma(r.num, r.den, pair()).to_string()});
  } else if (cmd == "value") {
    out.push_back({"value(" + arg() + ")", element_of(s.items[0]).value().to_string()});
  } else if (cmd == "residue") {
    out.push_back({"residue(" + arg() + ")", element_of(s.items[0]).residue().to_string()});
  } else if (cmd == "delta") {
    out.push_back({"delta(" + arg() + ")", delta(poly_of(s.items[0]), pair()).to_string()});
  } else if (cmd == "newton") {
    NewtonPolygon np = newton_polygon(poly_of(s.items[0]));
    for (const auto& seg : np.segments) out.push_back({"newton", seg.slope.to_string() + " " + std::to_string(seg.multiplicity)});
    if (np.ord0 > 0) out.push_back({"newton.ord0", std::to_string(np.ord0)});
  } else if (cmd == "minpoly") {
    out.push_back({"minpoly(" + arg() + ")", minimal_polynomial(element_of(s.items[0]), base_).to_string()});
  } else if (cmd == "kras" || cmd == "conj") {
    FieldElement a = s.items.empty() ? pair().a : element_of(s.items[0]);
    std::string key = s.items.empty() ? cmd : cmd + "(" + arg() + ")";
    if (cmd == "kras") out.push_back({key, kras(a).to_string()});
    else out.push_back({key, join_values(conjugate_differences(a).values)});
  } else if (cmd == "artin") {
    out.push_back({"artin(" + arg() + ")", artin_schreier_root_value(element_of(s.items[0])).to_string()});
  } else if (cmd == "minpair") {
    if (s.target.empty()) {
      out.push_back({"minpair.criterion", boolstr(is_minimal_pair_by_value_order(pair()))});
    } else {
      const auto& [elems, names] = chains_.at(s.target);
      DistinguishedChain chain{elems, true};
      std::size_t i = minimal_pair_index(chain, *gamma_);
      pair_elem_ = elems[i];
      pair_name_ = names[i];
      pair_cert_ = MinimalityCert::Chain;
      out.push_back({"minpair.index", std::to_string(i)});
      out.push_back({"minpair.element", names[i]});
    }
  } else if (cmd == "verify") {
    const auto& [elems, names] = chains_.at(s.target);
    DistinguishedChain chain{elems, true};
    bool ok = verify_chain(chain);
    out.push_back({"chain.verified", boolstr(ok)});
    out.push_back({"chain.deltas", join_values(chain.deltas())});
  } else if (cmd == "ic") {
    ICReport r = ic_classify(pair());
    out.push_back({"ic.verdict", to_string(r.verdict)});
    if (r.verdict == ICVerdict::Exact) {
      out.push_back({"ic.field", r.field});
      out.push_back({"ic.degree", std::to_string(r.degree)});
    }
    out.push_back({"ic.j", r.j ? std::to_string(*r.j) : "n/a"});
    out.push_back({"ic.lower", r.lower});
    out.push_back({"ic.upper", r.upper});
    out.push_back({"ic.rule", r.rule});
    if (r.disjunct_undecided) out.push_back({"ic.alternative", "undecided"});
  } else if (cmd == "report") {
    StructureReport r = structure_report(pair());
    out.push_back({"kind", to_string(r.kind)});
    out.push_back({"omegaQ", r.omega_q.to_string()});
    out.push_back({"valuegroup", r.value_group_text});
    out.push_back({"residuefield", r.residue_field});
    out.push_back({"index", r.index_e ? r.index_e->get_str() : "n/a"});
  } else if (cmd == "purity") {
    PurityVerdict v = classify_purity(pair());
    out.push_back({"purity", v.to_string()});
    out.push_back({"purity.e", v.e ? v.e->get_str() : "n/a"});
  } else if (cmd == "jcount") {
    out.push_back({"j", std::to_string(j_count(pair()))});
  } else if (cmd == "tame") {
    PairOfDefinition pd = pair();
    out.push_back({"tame", std::to_string(tame_degree(degree(pd), base_->field().residue_char_exponent()))});
  } else if (cmd == "bound") {
    out.push_back({"bound", std::to_string(simultaneous_extension_bound(pair()))});
  } else if (cmd == "omegaq") {
    out.push_back({"omegaQ", omega_Q(pair()).to_string()});
  } else if (cmd == "nuq") {
    PairOfDefinition pd = pair();
    out.push_back({"nuQ(" + arg() + ")", nu_Q(poly_of(s.items[0]), min_poly(pd), omega_Q(pd), pd).to_string()});
  } else if (cmd == "equiv") {
    PairOfDefinition pd = pair();
    out.push_back({"equiv(" + arg() + ")", boolstr(pairs_equivalent(pd, other_pair(element_of(s.items[0]), arg())))});
  } else if (cmd == "coincide") {
    PairOfDefinition pd = pair();
    out.push_back({"coincide(" + arg() + ")", boolstr(coincidence_test(pd, other_pair(element_of(s.items[0]), arg())))});
  } else if (cmd == "invariants") {
    PairOfDefinition pd = pair();
    out.push_back({"invariants(" + arg() + ")",
                   boolstr(minimal_field_invariants_check(pd, other_pair(element_of(s.items[0]), arg())))});
  } else if (cmd == "pcs") {
    return run_pcs(s);
  } else {
    fail(ErrorKind::ParseError, "unknown command '" + cmd + "'");
  }
  return out;
}

std::vector<OutputLine> Workspace::run_pcs(const Statement& s) {
  std::vector<OutputLine> out;
  PcsPrefix p{seqs_.at(s.target)};
  auto arg = [&](std::size_t i) { return print_expr(s.items[i]); };
  if (s.sub == "verify") {
    out.push_back({"pcs.verify", boolstr(verify_prefix(p))});
    out.push_back({"pcs.gaps", join_values(p.gaps())});
  } else if (s.sub == "limit") {
    out.push_back({"pcs.limit(" + arg(0) + ")", boolstr(is_limit_at_prefix(element_of(s.items[0]), p))});
  } else if (s.sub == "track") {
    Track t = poly_track(poly_of(s.items[0]), p);
    out.push_back({"pcs.track", to_string(t.kind)});
    out.push_back({"pcs.values", join_values(t.values)});
    out.push_back({"pcs.tail", std::to_string(t.tail_start)});
  } else if (s.sub == "pair") {
    PairLimitReport r = pair_limit_check(pair(), p);
    out.push_back({"pcs.gamma_above_gaps", boolstr(r.gamma_above_gaps)});
    out.push_back({"pcs.a_is_limit", boolstr(r.a_is_limit)});
    out.push_back({"pcs.first_mismatch", r.first_mismatch ? std::to_string(*r.first_mismatch) : "none"});
    out.push_back({"pcs.consistent", boolstr(r.consistent)});
    out.push_back({"pcs.contradiction", boolstr(r.contradiction)});
    out.push_back({"pcs.gap_sup", r.gap_sup.to_string()});
  } else if (s.sub == "root") {
    std::vector<FieldElement> roots;
    for (std::size_t i = 1; i < s.items.size(); ++i) roots.push_back(element_of(s.items[i]));
    auto w = limit_root_witness(poly_of(s.items[0]), p, roots);
    out.push_back({"pcs.root", w ? w->to_string() : "unknown"});
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UseBeforeDecl: return 2;
    case ErrorKind::InvariantBreach: return 4;
    default: return 3;
  }
}

RunResult run_session(std::string_view text, bool json) {
  RunResult r;
  std::ostringstream out;
  Session session;
  try {
    session = parse_session(text);
  } catch (const Error& e) {
    r.exit_code = exit_code(e.kind());
    r.err = "error: " + std::string(to_string(e.kind())) + ": " + e.what() + "\n";
    return r;
  }
  Workspace ws;
  for (const auto& s : session.statements) {
    try {
      CommandOutput o = ws.execute(s);
      if (s.kind != Statement::Kind::Command) continue;
      if (json) {
        nlohmann::ordered_json results = nlohmann::ordered_json::object();
        for (const auto& l : o.lines) {
          if (!results.contains(l.key)) {
            results[l.key] = l.value;
          } else {
            if (!results[l.key].is_array()) results[l.key] = nlohmann::ordered_json::array({results[l.key]});
            results[l.key].push_back(l.value);
          }
        }
        nlohmann::ordered_json obj = {{"line", s.line}, {"command", o.command}, {"results", results}};
        out << obj.dump() << "\n";
      } else {
        for (const auto& l : o.lines) out << l.key << " = " << l.value << "\n";
      }
    } catch (const Error& e) {
      r.exit_code = exit_code(e.kind());
      r.err = "error: line " + std::to_string(s.line) + ": " + std::string(to_string(e.kind())) + ": " + e.what() + "\n";
      break;
    } catch (const std::exception& e) {
      r.exit_code = 4;
      r.err = "error: line " + std::to_string(s.line) + ": InvariantBreach: " + e.what() + "\n";
      break;
    }
  }
  r.out = out.str();
  return r;
}

}  // namespace valx
