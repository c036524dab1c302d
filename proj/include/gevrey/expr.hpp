#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gevrey/factorial_sum.hpp"
#include "gevrey/qcalc.hpp"
#include "gevrey/rational.hpp"
#include "gevrey/weyl.hpp"

namespace gevrey {

// Source position of a token, 1-based.
struct SourcePos {
    int line = 1;
    int column = 1;
};

class ExprError : public std::runtime_error {
  public:
    ExprError(const std::string& what, SourcePos pos);
    SourcePos pos() const { return pos_; }

  private:
    SourcePos pos_;
};

class LexicalError : public ExprError {
  public:
    using ExprError::ExprError;
};

class SyntaxError : public ExprError {
  public:
    using ExprError::ExprError;
};

class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExprKind {
    Integer,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
    Factorial,
    QFactorial,  // qfac(e)
    Sigma,       // S{ratio}
    Delta,       // d{ratio}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    Int value;                  // Integer
    std::string name;           // Var
    std::vector<ExprPtr> args;  // operands
    SourcePos pos;

    static ExprPtr integer(Int v);
    static ExprPtr var(std::string name);
    static ExprPtr node(ExprKind k, std::vector<ExprPtr> args);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Grammar, LL(1) over INT IDENT ! ^ * + - / ( ) { }:
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | postfix
//   postfix := atom ['!'] ['^' unary]
//   atom    := INT | IDENT | 'qfac' '(' expr ')' | ('S'|'d') '{' expr '}' | '(' expr ')'
ExprPtr parse_expr(const std::string& text);

// Canonical fully-parenthesized form; parse_expr(pretty(e)) structurally
// equals e.
std::string pretty(const ExprPtr& e);

// scalar evaluation; vars are looked up in env, qfac needs ctx
Rat eval_rational(const ExprPtr& e, const std::map<std::string, Rat>& env,
                  const QContext* ctx = nullptr);

// reads the expression as a summand P(n) * (n+c_1)! ... (n+c_s)! and
// normalizes the shifts into P(n) * (n!)^s
FactorialSeriesSpec extract_factorial_spec(const ExprPtr& e);

// differential operator in z and D, with scalar substitutions from env
DiffOp eval_diffop(const ExprPtr& e, const std::map<std::string, Rat>& env);

// q-difference operator; q and xi are available as scalars, S{r}/d{r}
// introduce the dilation (all dilations must share one ratio)
QDiffOp eval_qdiffop(const ExprPtr& e, const Rat& q, const Rat& xi);

}  // namespace gevrey
