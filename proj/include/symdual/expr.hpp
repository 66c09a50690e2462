#pragma once

// Tiny arithmetic-expression grammar: numbers, variables (x, or x1..xn),
// + - * / ^, parentheses, log, exp, sqrt.  Parsed once into an immutable AST
// and evaluable over plain doubles or jets, with domain violations reported
// against the offending sub-expression.

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "symdual/jet.hpp"
#include "symdual/jetn.hpp"

namespace symdual {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Expr {
 public:
  struct Node;

  Expr() = default;

  static Expr parse(const std::string& src);

  // 0 for a constant expression, otherwise 1 + highest variable index used.
  int arity() const;

  double value(const std::vector<double>& at) const;
  double value(double at) const { return value(std::vector<double>{at}); }

  Jet1<double> jet1(double at) const;
  JetN<double> jetn(const Eigen::VectorXd& at) const;

  std::string str() const;
  bool empty() const { return root_ == nullptr; }

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Value and first three derivatives of a univariate expression at a point.
Jet1<double> jet1_compose(const Expr& e, double at);

// Value, gradient and symmetric Hessian of an n-variable expression.
JetN<double> jetn_eval(const Expr& e, const Eigen::VectorXd& at);

// |jet first derivative - central difference|; h <= 0 selects the default
// step 1e-6 * max(1, |at|).
double fd_check(const Expr& e, double at, double h = 0.0);

}  // namespace symdual
