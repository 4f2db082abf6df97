#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mf {

// One comparison inside a property check: two routes to the same quantity.
struct CheckCase {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string check;
  std::vector<CheckCase> cases;

  void add(std::string name, double lhs, double rhs, double tolerance);
  bool all_pass() const {
    return std::all_of(cases.begin(), cases.end(), [](const CheckCase& c) { return c.pass; });
  }
  const CheckCase* first_failure() const {
    for (const auto& c : cases)
      if (!c.pass) return &c;
    return nullptr;
  }
  double max_abs_diff() const;
};

inline void CheckReport::add(std::string name, double lhs, double rhs, double tolerance) {
  const double diff = lhs > rhs ? lhs - rhs : rhs - lhs;
  cases.push_back({std::move(name), lhs, rhs, tolerance, diff <= tolerance});
}

inline double CheckReport::max_abs_diff() const {
  double m = 0.0;
  for (const auto& c : cases) m = std::max(m, c.lhs > c.rhs ? c.lhs - c.rhs : c.rhs - c.lhs);
  return m;
}

}  // namespace mf
