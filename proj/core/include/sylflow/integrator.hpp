#pragma once

// Fixed-step classical Runge-Kutta integration.

#include <functional>

#include "sylflow/flows.hpp"

namespace sylflow {

using RhsFunction = std::function<void(const FlowState&, FlowState&)>;

/// One RK4 step of size dt. Throws ContractViolation for dt <= 0 and
/// NumericError if any stage derivative is non-finite.
FlowState rk4_step(const RhsFunction& rhs, const FlowState& s, double dt);
FlowState rk4_step(const Flow& flow, const FlowState& s, double dt);

/// Reusable stage buffers for long runs.
class Rk4Integrator {
 public:
  explicit Rk4Integrator(const Flow& flow);

  /// Advances `s` in place by dt.
  void step(FlowState& s, double dt);

 private:
  const Flow& flow_;
  FlowState k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace sylflow
