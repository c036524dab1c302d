#include "gevrey/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gevrey {

namespace {

std::string at(SourcePos p) {
    return " at " + std::to_string(p.line) + ":" + std::to_string(p.column);
}

}  // namespace

ExprError::ExprError(const std::string& what, SourcePos pos)
    : std::runtime_error(what + at(pos)), pos_(pos) {}

ExprPtr Expr::integer(Int v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Integer;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::node(ExprKind k, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Integer: return a->value == b->value;
        case ExprKind::Var: return a->name == b->name;
        default: break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!expr_equal(a->args[i], b->args[i])) return false;
    return true;
}

namespace {

enum class Tok { Int, Ident, Bang, Caret, Star, Slash, Plus, Minus, LParen, RParen, LBrace, RBrace, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) bump();
        SourcePos pos{line_, col_};
        if (i_ >= text_.size()) {
            tok_ = {Tok::End, "", pos};
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
                digits.push_back(text_[i_]);
                bump();
            }
            tok_ = {Tok::Int, digits, pos};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
                name.push_back(text_[i_]);
                bump();
            }
            tok_ = {Tok::Ident, name, pos};
            return;
        }
        Tok k;
        switch (c) {
            case '!': k = Tok::Bang; break;
            case '^': k = Tok::Caret; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            default:
                throw LexicalError(std::string("unexpected character '") + c + "'", pos);
        }
        bump();
        tok_ = {k, std::string(1, c), pos};
    }

    void bump() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    const std::string& text_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (lex_.peek().kind != Tok::End)
            throw SyntaxError("trailing input '" + lex_.peek().text + "'", lex_.peek().pos);
        return e;
    }

  private:
    ExprPtr expr() {
        ExprPtr e = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Token op = lex_.take();
            ExprPtr rhs = term();
            e = Expr::node(op.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub, {e, rhs});
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Token op = lex_.take();
            ExprPtr rhs = unary();
            e = Expr::node(op.kind == Tok::Star ? ExprKind::Mul : ExprKind::Div, {e, rhs});
        }
        return e;
    }

    ExprPtr unary() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return Expr::node(ExprKind::Neg, {unary()});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = atom();
        if (lex_.peek().kind == Tok::Bang) {
            lex_.take();
            e = Expr::node(ExprKind::Factorial, {e});
            if (lex_.peek().kind == Tok::Bang)
                throw SyntaxError("repeated factorial", lex_.peek().pos);
        }
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            ExprPtr exp = unary();
            e = Expr::node(ExprKind::Pow, {e, exp});
        }
        return e;
    }

    ExprPtr atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Int: {
                auto e = Expr::integer(Int(t.text));
                return e;
            }
            case Tok::Ident: {
                if (t.text == "qfac") {
                    expect(Tok::LParen, "'('");
                    ExprPtr arg = expr();
                    expect(Tok::RParen, "')'");
                    return Expr::node(ExprKind::QFactorial, {arg});
                }
                if ((t.text == "S" || t.text == "d") && lex_.peek().kind == Tok::LBrace) {
                    lex_.take();
                    ExprPtr ratio = expr();
                    expect(Tok::RBrace, "'}'");
                    return Expr::node(t.text == "S" ? ExprKind::Sigma : ExprKind::Delta, {ratio});
                }
                return Expr::var(t.text);
            }
            case Tok::LParen: {
                ExprPtr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw SyntaxError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    void expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k)
            throw SyntaxError("expected " + what + ", found '" + lex_.peek().text + "'",
                              lex_.peek().pos);
        lex_.take();
    }

    Lexer lex_;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string pretty(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Integer: return e->value.get_str();
        case ExprKind::Var: return e->name;
        case ExprKind::Add: return "(" + pretty(e->args[0]) + " + " + pretty(e->args[1]) + ")";
        case ExprKind::Sub: return "(" + pretty(e->args[0]) + " - " + pretty(e->args[1]) + ")";
        case ExprKind::Mul: return "(" + pretty(e->args[0]) + "*" + pretty(e->args[1]) + ")";
        case ExprKind::Div: return "(" + pretty(e->args[0]) + "/" + pretty(e->args[1]) + ")";
        case ExprKind::Neg: return "(-" + pretty(e->args[0]) + ")";
        case ExprKind::Pow: return "(" + pretty(e->args[0]) + "^" + pretty(e->args[1]) + ")";
        case ExprKind::Factorial: return "(" + pretty(e->args[0]) + ")!";
        case ExprKind::QFactorial: return "qfac(" + pretty(e->args[0]) + ")";
        case ExprKind::Sigma: return "S{" + pretty(e->args[0]) + "}";
        case ExprKind::Delta: return "d{" + pretty(e->args[0]) + "}";
    }
    throw std::logic_error("pretty: unreachable");
}

namespace {

long to_long_exponent(const Rat& r) {
    if (r.get_den() != 1) throw EvalError("exponent is not an integer");
    if (!r.get_num().fits_slong_p()) throw EvalError("exponent out of range");
    return r.get_num().get_si();
}

std::size_t to_index(const Rat& r, const char* what) {
    if (r.get_den() != 1 || r < 0) throw EvalError(std::string(what) + " must be a nonnegative integer");
    if (!r.get_num().fits_ulong_p()) throw EvalError(std::string(what) + " out of range");
    return static_cast<std::size_t>(r.get_num().get_ui());
}

}  // namespace

Rat eval_rational(const ExprPtr& e, const std::map<std::string, Rat>& env, const QContext* ctx) {
    switch (e->kind) {
        case ExprKind::Integer: return Rat(e->value);
        case ExprKind::Var: {
            auto it = env.find(e->name);
            if (it == env.end()) throw EvalError("unbound symbol '" + e->name + "'");
            return it->second;
        }
        case ExprKind::Add: return eval_rational(e->args[0], env, ctx) + eval_rational(e->args[1], env, ctx);
        case ExprKind::Sub: return eval_rational(e->args[0], env, ctx) - eval_rational(e->args[1], env, ctx);
        case ExprKind::Mul: return eval_rational(e->args[0], env, ctx) * eval_rational(e->args[1], env, ctx);
        case ExprKind::Div: {
            Rat d = eval_rational(e->args[1], env, ctx);
            if (d == 0) throw EvalError("division by zero");
            return eval_rational(e->args[0], env, ctx) / d;
        }
        case ExprKind::Neg: return -eval_rational(e->args[0], env, ctx);
        case ExprKind::Pow: {
            Rat base = eval_rational(e->args[0], env, ctx);
            long ex = to_long_exponent(eval_rational(e->args[1], env, ctx));
            return rat_pow(base, ex);
        }
        case ExprKind::Factorial: {
            std::size_t n = to_index(eval_rational(e->args[0], env, ctx), "factorial argument");
            return Rat(factorial(n));
        }
        case ExprKind::QFactorial: {
            if (!ctx) throw EvalError("qfac needs a q context");
            std::size_t n = to_index(eval_rational(e->args[0], env, ctx), "qfac argument");
            return ctx->q_factorial(n);
        }
        case ExprKind::Sigma:
        case ExprKind::Delta:
            throw EvalError("dilation symbol in a scalar expression");
    }
    throw std::logic_error("eval_rational: unreachable");
}

namespace {

// value in the ring Q[n] * product of (n + c_i)!
struct FactTerm {
    Poly poly;
    std::vector<long> shifts;  // sorted

    bool same_shifts(const FactTerm& o) const { return shifts == o.shifts; }
};

FactTerm fact_eval(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Integer: return {Poly(Rat(e->value)), {}};
        case ExprKind::Var:
            if (e->name == "n") return {Poly::variable(), {}};
            throw EvalError("only the symbol n may appear in a summand, found '" + e->name + "'");
        case ExprKind::Add:
        case ExprKind::Sub: {
            FactTerm a = fact_eval(e->args[0]);
            FactTerm b = fact_eval(e->args[1]);
            if (!a.same_shifts(b))
                throw EvalError("cannot add terms with different factorial weights");
            return {e->kind == ExprKind::Add ? a.poly + b.poly : a.poly - b.poly, a.shifts};
        }
        case ExprKind::Mul: {
            FactTerm a = fact_eval(e->args[0]);
            FactTerm b = fact_eval(e->args[1]);
            FactTerm r{a.poly * b.poly, a.shifts};
            r.shifts.insert(r.shifts.end(), b.shifts.begin(), b.shifts.end());
            std::sort(r.shifts.begin(), r.shifts.end());
            return r;
        }
        case ExprKind::Div: {
            FactTerm a = fact_eval(e->args[0]);
            FactTerm b = fact_eval(e->args[1]);
            if (!b.shifts.empty() || b.poly.degree() != 0)
                throw EvalError("division only by constants in a summand");
            return {a.poly / b.poly.coeff(0), a.shifts};
        }
        case ExprKind::Neg: {
            FactTerm a = fact_eval(e->args[0]);
            return {-a.poly, a.shifts};
        }
        case ExprKind::Pow: {
            long ex = to_long_exponent(eval_rational(e->args[1], {}));
            if (ex < 0) throw EvalError("negative power in a summand");
            FactTerm a = fact_eval(e->args[0]);
            FactTerm r{Poly(Rat(1)), {}};
            for (long i = 0; i < ex; ++i) {
                r.poly = r.poly * a.poly;
                r.shifts.insert(r.shifts.end(), a.shifts.begin(), a.shifts.end());
            }
            std::sort(r.shifts.begin(), r.shifts.end());
            return r;
        }
        case ExprKind::Factorial: {
            FactTerm a = fact_eval(e->args[0]);
            if (!a.shifts.empty()) throw EvalError("factorial of a factorial is unsupported");
            if (a.poly.degree() == 0) {
                std::size_t v = to_index(a.poly.coeff(0), "factorial argument");
                return {Poly(Rat(factorial(v))), {}};
            }
            if (a.poly.degree() != 1 || a.poly.coeff(1) != 1)
                throw EvalError("factorial argument must be n + constant");
            Rat c = a.poly.coeff(0);
            if (c.get_den() != 1 || c < 0)
                throw EvalError("factorial argument must be n + nonnegative integer");
            return {Poly(Rat(1)), {c.get_num().get_si()}};
        }
        default:
            throw EvalError("unsupported construct in a summand");
    }
}

}  // namespace

FactorialSeriesSpec extract_factorial_spec(const ExprPtr& e) {
    FactTerm t = fact_eval(e);
    if (t.shifts.empty()) throw EvalError("summand carries no factorial weight");
    FactorialSeriesSpec spec;
    spec.weight_exponent = static_cast<long>(t.shifts.size());
    Poly x = Poly::variable();
    Poly P = t.poly;
    // (n+c)! = n! * (n+1)...(n+c)
    for (long c : t.shifts)
        for (long j = 1; j <= c; ++j) P = P * (x + Poly(Rat(j)));
    spec.P = P;
    return spec;
}

DiffOp eval_diffop(const ExprPtr& e, const std::map<std::string, Rat>& env) {
    switch (e->kind) {
        case ExprKind::Integer: return DiffOp::monomial(0, 0, Rat(e->value));
        case ExprKind::Var: {
            if (e->name == "z") return DiffOp::z();
            if (e->name == "D") return DiffOp::d();
            auto it = env.find(e->name);
            if (it == env.end()) throw EvalError("unbound symbol '" + e->name + "'");
            return DiffOp::monomial(0, 0, it->second);
        }
        case ExprKind::Add: return eval_diffop(e->args[0], env) + eval_diffop(e->args[1], env);
        case ExprKind::Sub: return eval_diffop(e->args[0], env) - eval_diffop(e->args[1], env);
        case ExprKind::Mul:
            return weyl_multiply(eval_diffop(e->args[0], env), eval_diffop(e->args[1], env));
        case ExprKind::Div: {
            DiffOp d = eval_diffop(e->args[1], env);
            if (d.order() != 0 || d.degree() != 0)
                throw EvalError("division only by scalars in an operator");
            if (d.is_zero()) throw EvalError("division by zero");
            Rat c = d.terms().begin()->second;
            return eval_diffop(e->args[0], env) * (1 / c);
        }
        case ExprKind::Neg: return -eval_diffop(e->args[0], env);
        case ExprKind::Pow: {
            long ex = to_long_exponent(eval_rational(e->args[1], env));
            if (ex < 0) throw EvalError("negative operator power");
            DiffOp base = eval_diffop(e->args[0], env);
            DiffOp r = DiffOp::identity();
            for (long i = 0; i < ex; ++i) r = weyl_multiply(r, base);
            return r;
        }
        case ExprKind::Factorial: {
            std::size_t v = to_index(eval_rational(e->args[0], env), "factorial argument");
            return DiffOp::monomial(0, 0, Rat(factorial(v)));
        }
        case ExprKind::QFactorial:
        case ExprKind::Sigma:
        case ExprKind::Delta:
            throw EvalError("q-difference symbol in a differential operator");
    }
    throw std::logic_error("eval_diffop: unreachable");
}

namespace {

// scalar-or-operator value for q-difference expressions
struct QVal {
    bool is_op = false;
    RationalFunction scalar;
    std::optional<QDiffOp> op;
};

QVal qval_scalar(RationalFunction f) { return {false, std::move(f), std::nullopt}; }
QVal qval_op(QDiffOp a) { return {true, RationalFunction(), std::move(a)}; }

QDiffOp as_op(const QVal& v, const Rat& fallback_ratio) {
    if (v.is_op) return *v.op;
    return QDiffOp::shift(fallback_ratio, 0).scaled(v.scalar);
}

QVal qval_eval(const ExprPtr& e, const Rat& q, const Rat& xi);

QVal qval_binary(const ExprPtr& e, const Rat& q, const Rat& xi) {
    QVal a = qval_eval(e->args[0], q, xi);
    QVal b = qval_eval(e->args[1], q, xi);
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: {
            if (!a.is_op && !b.is_op)
                return qval_scalar(e->kind == ExprKind::Add ? a.scalar + b.scalar
                                                            : a.scalar - b.scalar);
            Rat ratio = a.is_op ? a.op->ratio() : b.op->ratio();
            QDiffOp x = as_op(a, ratio), y = as_op(b, ratio);
            return qval_op(e->kind == ExprKind::Add ? x + y : x - y);
        }
        case ExprKind::Mul: {
            if (!a.is_op && !b.is_op) return qval_scalar(a.scalar * b.scalar);
            if (!a.is_op) return qval_op(b.op->scaled(a.scalar));
            if (!b.is_op) return qval_op(a.op->compose(as_op(b, a.op->ratio())));
            return qval_op(a.op->compose(*b.op));
        }
        case ExprKind::Div: {
            if (b.is_op) throw EvalError("division by an operator");
            if (b.scalar.is_zero()) throw EvalError("division by zero");
            if (!a.is_op) return qval_scalar(a.scalar / b.scalar);
            return qval_op(a.op->scaled(RationalFunction(Rat(1)) / b.scalar));
        }
        default: throw std::logic_error("qval_binary: unreachable");
    }
}

QVal qval_eval(const ExprPtr& e, const Rat& q, const Rat& xi) {
    switch (e->kind) {
        case ExprKind::Integer: return qval_scalar(RationalFunction(Rat(e->value)));
        case ExprKind::Var: {
            if (e->name == "z") return qval_scalar(RationalFunction(Poly::variable()));
            if (e->name == "q") return qval_scalar(RationalFunction(q));
            if (e->name == "xi") return qval_scalar(RationalFunction(xi));
            throw EvalError("unbound symbol '" + e->name + "'");
        }
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
            return qval_binary(e, q, xi);
        case ExprKind::Neg: {
            QVal a = qval_eval(e->args[0], q, xi);
            if (a.is_op) return qval_op(a.op->scaled(RationalFunction(Rat(-1))));
            return qval_scalar(-a.scalar);
        }
        case ExprKind::Pow: {
            long ex = to_long_exponent(eval_rational(e->args[1], {{"q", q}, {"xi", xi}}));
            QVal a = qval_eval(e->args[0], q, xi);
            if (!a.is_op) {
                if (a.scalar.is_zero() && ex < 0) throw EvalError("division by zero");
                RationalFunction r(Rat(1));
                for (long i = 0; i < (ex < 0 ? -ex : ex); ++i) r = r * a.scalar;
                if (ex < 0) r = RationalFunction(Rat(1)) / r;
                return qval_scalar(r);
            }
            if (ex < 0) throw EvalError("negative operator power");
            QDiffOp r = QDiffOp::shift(a.op->ratio(), 0);
            for (long i = 0; i < ex; ++i) r = r.compose(*a.op);
            return qval_op(r);
        }
        case ExprKind::Factorial: {
            std::size_t v =
                to_index(eval_rational(e->args[0], {{"q", q}, {"xi", xi}}), "factorial argument");
            return qval_scalar(RationalFunction(Rat(factorial(v))));
        }
        case ExprKind::QFactorial: {
            QContext ctx(q);
            std::size_t v =
                to_index(eval_rational(e->args[0], {{"q", q}, {"xi", xi}}), "qfac argument");
            return qval_scalar(RationalFunction(ctx.q_factorial(v)));
        }
        case ExprKind::Sigma: {
            Rat ratio = eval_rational(e->args[0], {{"q", q}, {"xi", xi}});
            return qval_op(QDiffOp::shift(ratio, 1));
        }
        case ExprKind::Delta: {
            Rat ratio = eval_rational(e->args[0], {{"q", q}, {"xi", xi}});
            if (ratio == 1) throw EvalError("delta ratio must differ from 1");
            // (sigma_r - 1)/((r-1) z)
            RationalFunction prefactor(Poly(Rat(1)), Poly::monomial(1, ratio - 1));
            QDiffOp a = QDiffOp::shift(ratio, 1) - QDiffOp::shift(ratio, 0);
            return qval_op(a.scaled(prefactor));
        }
    }
    throw std::logic_error("qval_eval: unreachable");
}

}  // namespace

QDiffOp eval_qdiffop(const ExprPtr& e, const Rat& q, const Rat& xi) {
    QVal v = qval_eval(e, q, xi);
    return as_op(v, q);
}

}  // namespace gevrey
