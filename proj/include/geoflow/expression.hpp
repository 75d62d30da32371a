#pragma once

#include <cctype>
#include <cstdio>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoflow/jet.hpp"

namespace geoflow {

// Error carrying the 1-based column where parsing failed.
struct ParseError : std::runtime_error {
  int column;
  ParseError(const std::string& msg, int col)
      : std::runtime_error(msg + " at column " + std::to_string(col)), column(col) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar expression over named variables with +,-,*,/,^, sqrt, sin, cos, ln.
// Evaluation is generic over the scalar type so jets give derivatives.
class Expression {
 public:
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Sin, Cos, Ln };

  struct Node {
    Kind kind;
    double number = 0.0;
    int var = -1;
    std::unique_ptr<Node> lhs, rhs;
  };

  Expression() = default;

  static Expression parse(const std::string& text, const std::vector<std::string>& variables) {
    Expression e;
    e.vars_ = variables;
    Parser p{text, 0, &e};
    e.root_ = p.parse_expr(0);
    p.skip_ws();
    if (p.pos != text.size())
      throw ParseError("unexpected trailing input", static_cast<int>(p.pos) + 1);
    return e;
  }

  template <class T>
  T eval(const std::vector<T>& values) const {
    if (!root_) throw EvalError("empty expression");
    return eval_node<T>(*root_, values);
  }

  double operator()(const std::vector<double>& values) const { return eval(values); }

  const std::vector<std::string>& variables() const { return vars_; }

  std::string print() const { return root_ ? print_node(*root_, 0) : std::string(); }

 private:
  std::unique_ptr<Node> root_;
  std::vector<std::string> vars_;

  static std::unique_ptr<Node> make(Kind k) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    return n;
  }

  struct Parser {
    const std::string& s;
    size_t pos;
    Expression* owner;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) { ++pos; return true; }
      return false;
    }
    char peek() {
      skip_ws();
      return pos < s.size() ? s[pos] : '\0';
    }

    // Precedence-climbing: 0 add, 1 mul, 2 unary, 3 pow (right assoc).
    std::unique_ptr<Node> parse_expr(int min_prec) {
      auto lhs = parse_unary();
      for (;;) {
        skip_ws();
        if (pos >= s.size()) break;
        char op = s[pos];
        int prec;
        if (op == '+' || op == '-') prec = 0;
        else if (op == '*' || op == '/') prec = 1;
        else if (op == '^') prec = 3;
        else break;
        if (prec < min_prec) break;
        ++pos;
        auto rhs = parse_expr(op == '^' ? prec : prec + 1);
        auto n = make(op == '+' ? Kind::Add : op == '-' ? Kind::Sub
                      : op == '*' ? Kind::Mul : op == '/' ? Kind::Div : Kind::Pow);
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        lhs = std::move(n);
      }
      return lhs;
    }

    std::unique_ptr<Node> parse_unary() {
      skip_ws();
      if (pos >= s.size()) throw ParseError("unexpected end of expression", static_cast<int>(pos) + 1);
      if (s[pos] == '-') {
        ++pos;
        auto n = make(Kind::Neg);
        n->lhs = parse_expr(2);
        return n;
      }
      if (s[pos] == '+') { ++pos; return parse_expr(2); }
      return parse_atom();
    }

    std::unique_ptr<Node> parse_atom() {
      skip_ws();
      if (pos >= s.size()) throw ParseError("unexpected end of expression", static_cast<int>(pos) + 1);
      const size_t start = pos;
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        size_t end;
        double v;
        try {
          v = std::stod(s.substr(pos), &end);
        } catch (const std::exception&) {
          throw ParseError("bad numeric literal", static_cast<int>(pos) + 1);
        }
        pos += end;
        auto n = make(Kind::Number);
        n->number = v;
        return n;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t p = pos;
        while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
        std::string name = s.substr(pos, p - pos);
        pos = p;
        if (eat('(')) {
          Kind k;
          if (name == "sqrt") k = Kind::Sqrt;
          else if (name == "sin") k = Kind::Sin;
          else if (name == "cos") k = Kind::Cos;
          else if (name == "ln" || name == "log") k = Kind::Ln;
          else throw ParseError("unknown function '" + name + "'", static_cast<int>(start) + 1);
          auto n = make(k);
          n->lhs = parse_expr(0);
          if (!eat(')')) throw ParseError("expected ')'", static_cast<int>(pos) + 1);
          return n;
        }
        if (name == "pi") {
          auto n = make(Kind::Number);
          n->number = M_PI;
          return n;
        }
        for (size_t i = 0; i < owner->vars_.size(); ++i) {
          if (owner->vars_[i] == name) {
            auto n = make(Kind::Variable);
            n->var = static_cast<int>(i);
            return n;
          }
        }
        throw ParseError("unknown identifier '" + name + "'", static_cast<int>(start) + 1);
      }
      if (c == '(') {
        ++pos;
        auto n = parse_expr(0);
        if (!eat(')')) throw ParseError("expected ')'", static_cast<int>(pos) + 1);
        return n;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", static_cast<int>(pos) + 1);
    }
  };

  template <class T>
  static T eval_node(const Node& n, const std::vector<T>& vals) {
    switch (n.kind) {
      case Kind::Number: return make_constant<T>(n.number);
      case Kind::Variable:
        if (n.var < 0 || static_cast<size_t>(n.var) >= vals.size())
          throw EvalError("variable index out of range");
        return vals[static_cast<size_t>(n.var)];
      case Kind::Add: return eval_node(*n.lhs, vals) + eval_node(*n.rhs, vals);
      case Kind::Sub: return eval_node(*n.lhs, vals) - eval_node(*n.rhs, vals);
      case Kind::Mul: return eval_node(*n.lhs, vals) * eval_node(*n.rhs, vals);
      case Kind::Div: return eval_node(*n.lhs, vals) / eval_node(*n.rhs, vals);
      case Kind::Pow: {
        // Constant integer-ish exponents keep the derivative chain exact at 0.
        if (n.rhs->kind == Kind::Number) return pow(eval_node(*n.lhs, vals), n.rhs->number);
        return pow(eval_node(*n.lhs, vals), eval_node(*n.rhs, vals));
      }
      case Kind::Neg: return -eval_node(*n.lhs, vals);
      case Kind::Sqrt: return sqrt(eval_node(*n.lhs, vals));
      case Kind::Sin: return sin(eval_node(*n.lhs, vals));
      case Kind::Cos: return cos(eval_node(*n.lhs, vals));
      case Kind::Ln: return log(eval_node(*n.lhs, vals));
    }
    throw EvalError("corrupt expression node");
  }

  std::string print_node(const Node& n, int parent_prec) const {
    auto paren = [&](const std::string& inner, int prec) {
      return prec < parent_prec ? "(" + inner + ")" : inner;
    };
    switch (n.kind) {
      case Kind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        return std::string(buf);
      }
      case Kind::Variable: return vars_[static_cast<size_t>(n.var)];
      case Kind::Add: return paren(print_node(*n.lhs, 0) + "+" + print_node(*n.rhs, 1), 0);
      case Kind::Sub: return paren(print_node(*n.lhs, 0) + "-" + print_node(*n.rhs, 1), 0);
      case Kind::Mul: return paren(print_node(*n.lhs, 1) + "*" + print_node(*n.rhs, 2), 1);
      case Kind::Div: return paren(print_node(*n.lhs, 1) + "/" + print_node(*n.rhs, 2), 1);
      case Kind::Pow: return paren(print_node(*n.lhs, 4) + "^" + print_node(*n.rhs, 3), 3);
      case Kind::Neg: return paren("-" + print_node(*n.lhs, 2), 2);
      case Kind::Sqrt: return "sqrt(" + print_node(*n.lhs, 0) + ")";
      case Kind::Sin: return "sin(" + print_node(*n.lhs, 0) + ")";
      case Kind::Cos: return "cos(" + print_node(*n.lhs, 0) + ")";
      case Kind::Ln: return "ln(" + print_node(*n.lhs, 0) + ")";
    }
    return {};
  }
};

}  // namespace geoflow
