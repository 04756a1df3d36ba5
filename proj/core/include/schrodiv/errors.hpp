// Error types shared across the library. Configuration problems are
// reported as std::invalid_argument; CostGuardError signals that a
// requested computation exceeds a hard operation-count budget and was
// refused rather than attempted.
#pragma once

#include <stdexcept>
#include <string>

namespace schrodiv {

class CostGuardError : public std::runtime_error {
 public:
  CostGuardError(const std::string& what, double estimated, double budget)
      : std::runtime_error(what + " (estimated " + std::to_string(estimated) +
                           " ops, budget " + std::to_string(budget) + ")"),
        estimated_ops(estimated),
        budget_ops(budget) {}
  double estimated_ops;
  double budget_ops;
};

inline void cost_guard(const std::string& site, double estimated, double budget) {
  if (estimated > budget) throw CostGuardError(site, estimated, budget);
}

}  // namespace schrodiv
