#pragma once

#include <memory>
#include <string>
#include <vector>

namespace reeb::expr {

// Small arithmetic expressions over phase-space variables, for CLI-supplied
// Hamiltonians: numbers, + - * / ^, parentheses, sin/cos/exp/sqrt, t,
// q1..qn / p1..pn, and the norms |p|, |q|.
class Expression {
  public:
    static Expression parse(const std::string& text);
    double eval(double t, const std::vector<double>& q, const std::vector<double>& p) const;

    struct Node;

  private:
    std::shared_ptr<const Node> root_;
};

}  // namespace reeb::expr
