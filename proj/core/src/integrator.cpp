#include "sylflow/integrator.hpp"

#include <string>

#include "sylflow/errors.hpp"

namespace sylflow {

namespace {

void require_positive_dt(double dt) {
  if (!(dt > 0.0)) throw ContractViolation("rk4 step size must be positive, got " + std::to_string(dt));
}

void check_stage(const FlowState& k, int stage, double t) {
  if (!k.all_finite()) {
    throw NumericError("non-finite derivative in RK4 stage " + std::to_string(stage) +
                       " at t = " + std::to_string(t));
  }
}

FlowState like(const FlowState& s) {
  FlowState out = FlowState::zeros(s.node_count, s.node_dim, s.aux_dim);
  out.t = s.t;
  return out;
}

// tmp = s + h k
void offset_state(const FlowState& s, const FlowState& k, double h, FlowState& tmp) {
  tmp.t = s.t + h;
  tmp.x = s.x + h * k.x;
  if (s.has_aux()) tmp.z = s.z + h * k.z;
}

void rk4_core(const RhsFunction& rhs, FlowState& s, double dt, FlowState& k1, FlowState& k2,
              FlowState& k3, FlowState& k4, FlowState& tmp) {
  rhs(s, k1);
  check_stage(k1, 1, s.t);
  offset_state(s, k1, 0.5 * dt, tmp);
  rhs(tmp, k2);
  check_stage(k2, 2, s.t);
  offset_state(s, k2, 0.5 * dt, tmp);
  rhs(tmp, k3);
  check_stage(k3, 3, s.t);
  offset_state(s, k3, dt, tmp);
  rhs(tmp, k4);
  check_stage(k4, 4, s.t);
  const double w = dt / 6.0;
  s.x += w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  if (s.has_aux()) s.z += w * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
  s.t += dt;
}

}  // namespace

FlowState rk4_step(const RhsFunction& rhs, const FlowState& s, double dt) {
  require_positive_dt(dt);
  FlowState out = s;
  FlowState k1 = like(s), k2 = like(s), k3 = like(s), k4 = like(s), tmp = like(s);
  rk4_core(rhs, out, dt, k1, k2, k3, k4, tmp);
  return out;
}

FlowState rk4_step(const Flow& flow, const FlowState& s, double dt) {
  return rk4_step([&flow](const FlowState& a, FlowState& b) { flow.derivative(a, b); }, s, dt);
}

Rk4Integrator::Rk4Integrator(const Flow& flow)
    : flow_(flow),
      k1_(flow.zero_state()),
      k2_(flow.zero_state()),
      k3_(flow.zero_state()),
      k4_(flow.zero_state()),
      tmp_(flow.zero_state()) {}

void Rk4Integrator::step(FlowState& s, double dt) {
  require_positive_dt(dt);
  const RhsFunction rhs = [this](const FlowState& a, FlowState& b) { flow_.derivative(a, b); };
  rk4_core(rhs, s, dt, k1_, k2_, k3_, k4_, tmp_);
}

}  // namespace sylflow
