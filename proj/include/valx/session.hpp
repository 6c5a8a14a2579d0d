#pragma once

// Session files: a line-oriented language declaring a tower, a pair of
// definition and named objects, followed by commands whose results print as
// "key = value" lines.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "valx/pcs.hpp"
#include "valx/structure.hpp"

namespace valx {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Name, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  Int number;
  std::string name;
  long exponent = 0;
  ExprPtr lhs, rhs;
};

std::string print_expr(const ExprPtr& e);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

struct Statement {
  enum class Kind { Base, Henselian, Ext, Gamma, Pair, PolyDef, Seq, Chain, Command };
  Kind kind = Kind::Command;
  int line = 0;

  // base
  std::string base_kind;  // "padic" | "ratfun"
  unsigned long prime = 0;
  std::vector<std::string> vars;
  // ext / pair / poly / seq / chain: declared or referenced name
  std::string name;
  ExprPtr expr;
  RatVec value;
  std::optional<GammaSpec> gamma;
  bool assert_minimal = false;
  std::vector<ExprPtr> items;
  // commands
  std::string command;
  std::string sub;          // pcs subcommand
  std::string target;       // seq or chain name
  std::vector<long> numbers;  // ostrowski arguments

  std::string print() const;
};

struct Session {
  std::vector<Statement> statements;
  std::string print() const;
};

/// Names and declarations visible so far; drives UseBeforeDecl checks.
class Parser {
 public:
  /// Parses one line (comments and blank lines yield nullopt).
  std::optional<Statement> parse_line(std::string_view text, int line);
  Session parse(std::string_view text);

 private:
  enum class Sym { Var, Generator, Poly, Seq, Chain };
  std::map<std::string, Sym> names_;
  bool has_base_ = false;
  bool has_ext_ = false;
  bool has_gamma_ = false;
  bool has_pair_ = false;

  void declare(const std::string& name, Sym kind, int line, int col);
  void require_names(const ExprPtr& e, int line);
};

Session parse_session(std::string_view text);

struct OutputLine {
  std::string key;
  std::string value;
};

struct CommandOutput {
  std::string command;
  std::vector<OutputLine> lines;
};

/// Live state built from declarations; executes commands.
class Workspace {
 public:
  /// Applies a declaration or runs a command.
  CommandOutput execute(const Statement& s);
  /// Parses and executes each line of text, returning the command outputs.
  std::vector<CommandOutput> feed(std::string_view text);

  const LevelPtr& top() const { return top_; }
  bool has_base() const { return base_ != nullptr; }
  FieldElement element(const std::string& source);
  Poly polynomial(const std::string& source);
  PairOfDefinition pair() const;

 private:
  struct Ratio {
    Poly num, den;
  };
  Ratio eval(const ExprPtr& e) const;
  FieldElement to_element(const Ratio& r) const;
  Poly to_poly(const Ratio& r) const;
  FieldElement element_of(const ExprPtr& e) const { return to_element(eval(e)); }
  Poly poly_of(const ExprPtr& e) const { return to_poly(eval(e)); }
  void declare_base(const Statement& s);
  std::vector<OutputLine> run_command(const Statement& s);
  std::vector<OutputLine> run_pcs(const Statement& s);
  PairOfDefinition other_pair(const FieldElement& b, const std::string& name) const;

  Parser parser_;
  LevelPtr base_, top_;
  bool henselian_ = false;
  std::map<std::string, LevelPtr> generators_;
  std::map<std::string, Ratio> polys_;
  std::map<std::string, std::vector<FieldElement>> seqs_;
  std::map<std::string, std::pair<std::vector<FieldElement>, std::vector<std::string>>> chains_;
  std::optional<GammaSpec> gamma_;
  std::optional<FieldElement> pair_elem_;
  std::string pair_name_;
  MinimalityCert pair_cert_ = MinimalityCert::None;
};

int exit_code(ErrorKind kind);

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Parses and runs a whole session. Output stops at the first error.
RunResult run_session(std::string_view text, bool json = false);

}  // namespace valx
