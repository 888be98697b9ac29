#pragma once

#include <stdexcept>
#include <string>

namespace kp {

/// Linear solve hit a zero pivot. Carries the pivot index so grid sweeps can
/// report which node of the truncated system collapsed.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(int pivot_index, const std::string& context)
      : std::runtime_error("singular matrix (pivot " +
                           std::to_string(pivot_index) + ")" +
                           (context.empty() ? "" : ": " + context)),
        pivot_index_(pivot_index) {}

  int pivot_index() const { return pivot_index_; }

 private:
  int pivot_index_;
};

/// Time stepper produced a non-finite coefficient. Carries the step index at
/// which the blow-up was detected.
class StepError : public std::runtime_error {
 public:
  StepError(long step_index, const std::string& what)
      : std::runtime_error("step " + std::to_string(step_index) + ": " + what),
        step_index_(step_index) {}

  long step_index() const { return step_index_; }

 private:
  long step_index_;
};

}  // namespace kp
