#include "symdual/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace symdual {

enum class NodeKind { number, variable, add, sub, mul, div, neg, pow, log, exp, sqrt };

struct Expr::Node {
  NodeKind kind;
  double number = 0.0;
  int var = 0;  // 0-based variable index
  std::shared_ptr<const Node> lhs, rhs;

  Node(NodeKind k) : kind(k) {}

  std::string str() const {
    std::ostringstream os;
    switch (kind) {
      case NodeKind::number: {
        os << number;
        break;
      }
      case NodeKind::variable:
        if (var == 0) os << "x";
        else os << "x" << (var + 1);
        break;
      case NodeKind::add: os << "(" << lhs->str() << " + " << rhs->str() << ")"; break;
      case NodeKind::sub: os << "(" << lhs->str() << " - " << rhs->str() << ")"; break;
      case NodeKind::mul: os << "(" << lhs->str() << " * " << rhs->str() << ")"; break;
      case NodeKind::div: os << "(" << lhs->str() << " / " << rhs->str() << ")"; break;
      case NodeKind::pow: os << "(" << lhs->str() << " ^ " << rhs->str() << ")"; break;
      case NodeKind::neg: os << "(-" << lhs->str() << ")"; break;
      case NodeKind::log: os << "log(" << lhs->str() << ")"; break;
      case NodeKind::exp: os << "exp(" << lhs->str() << ")"; break;
      case NodeKind::sqrt: os << "sqrt(" << lhs->str() << ")"; break;
    }
    return os.str();
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

NodePtr make(NodeKind k, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Node>(k);
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("parse error at position " + std::to_string(pos_) + ": " + msg + " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      if (eat('+')) e = make(NodeKind::add, e, term());
      else if (eat('-')) e = make(NodeKind::sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (eat('*')) e = make(NodeKind::mul, e, factor());
      else if (eat('/')) e = make(NodeKind::div, e, factor());
      else return e;
    }
  }

  // factor handles unary minus; '^' is right-associative and binds tighter.
  NodePtr factor() {
    if (eat('-')) return make(NodeKind::neg, factor());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(NodeKind::pow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<size_t>(end - begin);
    auto n = std::make_shared<Node>(NodeKind::number);
    n->number = v;
    return n;
  }

  NodePtr ident() {
    size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "log" || name == "exp" || name == "sqrt") {
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr arg = expression();
      if (!eat(')')) fail("expected ')' closing " + name);
      NodeKind k = name == "log" ? NodeKind::log : name == "exp" ? NodeKind::exp : NodeKind::sqrt;
      return make(k, arg);
    }
    if (name == "x") {
      auto n = std::make_shared<Node>(NodeKind::variable);
      n->var = 0;
      return n;
    }
    if (name.size() > 1 && name.size() <= 3 && name[0] == 'x') {
      const std::string digits = name.substr(1);
      if (digits.find_first_not_of("0123456789") == std::string::npos && digits[0] != '0') {
        auto n = std::make_shared<Node>(NodeKind::variable);
        n->var = std::stoi(digits) - 1;
        return n;
      }
    }
    fail("unknown identifier '" + name + "' (variables are x or x1..xn)");
  }
};

// Scalar adapters shared by the generic evaluator.  The double overloads
// carry the same domain checks as the jet versions so that finite-difference
// paths fail loudly instead of propagating NaN.
double se_log(double a) {
  if (!(a > 0)) throw domain_error("log of non-positive value " + std::to_string(a));
  return std::log(a);
}
double se_exp(double a) { return std::exp(a); }
double se_sqrt(double a) {
  if (!(a > 0)) throw domain_error("sqrt of non-positive value " + std::to_string(a));
  return std::sqrt(a);
}
double se_div(double a, double b) {
  if (b == 0) throw domain_error("division by zero");
  return a / b;
}
double se_pow_int(double a, long p) {
  if (p < 0 && a == 0) throw domain_error("division by zero");
  return std::pow(a, double(p));
}
bool se_is_const(double) { return true; }
double se_value(double a) { return a; }

Jet1d se_log(const Jet1d& a) { return log(a); }
Jet1d se_exp(const Jet1d& a) { return exp(a); }
Jet1d se_sqrt(const Jet1d& a) { return sqrt(a); }
Jet1d se_div(const Jet1d& a, const Jet1d& b) { return a / b; }
Jet1d se_pow_int(const Jet1d& a, long p) { return pow(a, double(p)); }
bool se_is_const(const Jet1d& a) { return a.d1 == 0 && a.d2 == 0 && a.d3 == 0 && a.d4 == 0; }
double se_value(const Jet1d& a) { return a.f; }

JetNd se_log(const JetNd& a) { return log(a); }
JetNd se_exp(const JetNd& a) { return exp(a); }
JetNd se_sqrt(const JetNd& a) { return sqrt(a); }
JetNd se_div(const JetNd& a, const JetNd& b) { return a / b; }
JetNd se_pow_int(const JetNd& a, long p) { return pow(a, double(p)); }
bool se_is_const(const JetNd& a) { return a.grad.isZero(0.0) && a.hess.isZero(0.0); }
double se_value(const JetNd& a) { return a.f; }

template <typename T>
T eval_node(const Node& n, const std::vector<T>& vars, const T& one) {
  auto lift = [&](double c) {
    T v = one;
    v = v * c;  // scalar multiply keeps derivative slots zero: one has value 1
    return v;
  };
  try {
    switch (n.kind) {
      case NodeKind::number: return lift(n.number);
      case NodeKind::variable:
        if (n.var >= static_cast<int>(vars.size()))
          throw domain_error("expression uses variable x" + std::to_string(n.var + 1) + " but only " +
                             std::to_string(vars.size()) + " value(s) were supplied");
        return vars[static_cast<size_t>(n.var)];
      case NodeKind::add: return eval_node(*n.lhs, vars, one) + eval_node(*n.rhs, vars, one);
      case NodeKind::sub: return eval_node(*n.lhs, vars, one) - eval_node(*n.rhs, vars, one);
      case NodeKind::mul: return eval_node(*n.lhs, vars, one) * eval_node(*n.rhs, vars, one);
      case NodeKind::neg: return -eval_node(*n.lhs, vars, one);
      case NodeKind::div: return se_div(eval_node(*n.lhs, vars, one), eval_node(*n.rhs, vars, one));
      case NodeKind::log: return se_log(eval_node(*n.lhs, vars, one));
      case NodeKind::exp: return se_exp(eval_node(*n.lhs, vars, one));
      case NodeKind::sqrt: return se_sqrt(eval_node(*n.lhs, vars, one));
      case NodeKind::pow: {
        T base = eval_node(*n.lhs, vars, one);
        T expo = eval_node(*n.rhs, vars, one);
        if (se_is_const(expo)) {
          const double p = se_value(expo);
          const long ip = std::lround(p);
          if (double(ip) == p && std::abs(ip) <= 64) return se_pow_int(base, ip);
          return se_exp(expo * se_log(base));
        }
        return se_exp(expo * se_log(base));
      }
    }
  } catch (const domain_error& e) {
    const std::string what = e.what();
    if (what.find("in sub-expression") == std::string::npos)
      throw domain_error(what + " in sub-expression '" + n.str() + "'");
    throw;
  }
  throw std::logic_error("unreachable expression node");
}

int node_arity(const Node& n) {
  int a = 0;
  if (n.kind == NodeKind::variable) a = n.var + 1;
  if (n.lhs) a = std::max(a, node_arity(*n.lhs));
  if (n.rhs) a = std::max(a, node_arity(*n.rhs));
  return a;
}

}  // namespace

Expr Expr::parse(const std::string& src) {
  return Expr(Parser(src).run());
}

int Expr::arity() const {
  if (!root_) return 0;
  return node_arity(*root_);
}

std::string Expr::str() const {
  return root_ ? root_->str() : std::string();
}

double Expr::value(const std::vector<double>& at) const {
  if (!root_) throw std::logic_error("evaluating empty expression");
  return eval_node<double>(*root_, at, 1.0);
}

Jet1<double> Expr::jet1(double at) const {
  if (!root_) throw std::logic_error("evaluating empty expression");
  if (arity() > 1) throw domain_error("jet1 evaluation of a multivariate expression");
  std::vector<Jet1d> vars{Jet1d::variable(at)};
  return eval_node<Jet1d>(*root_, vars, Jet1d::constant(1.0));
}

JetN<double> Expr::jetn(const Eigen::VectorXd& at) const {
  if (!root_) throw std::logic_error("evaluating empty expression");
  const Eigen::Index n = at.size();
  std::vector<JetNd> vars;
  vars.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) vars.push_back(JetNd::variable(at(i), i, n));
  return eval_node<JetNd>(*root_, vars, JetNd::constant(1.0, n));
}

Jet1<double> jet1_compose(const Expr& e, double at) { return e.jet1(at); }

JetN<double> jetn_eval(const Expr& e, const Eigen::VectorXd& at) { return e.jetn(at); }

double fd_check(const Expr& e, double at, double h) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, std::abs(at));
  const Jet1d j = e.jet1(at);
  const double fd = (e.value(at + h) - e.value(at - h)) / (2.0 * h);
  return std::abs(j.d1 - fd);
}

}  // namespace symdual
