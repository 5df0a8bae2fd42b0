#include "nsalpha/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

void Trajectory::record(const SimState& state) {
  t.push_back(state.t);
  u.push_back(state.u);
  u_alpha.push_back(state.u_alpha.u_alpha);
}

Trajectory Trajectory::prefix(double horizon) const {
  Trajectory out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > horizon + 1e-9 * std::max(1.0, std::abs(horizon))) break;
    out.t.push_back(t[i]);
    out.u.push_back(u[i]);
    out.u_alpha.push_back(u_alpha[i]);
  }
  return out;
}

double SpaceTimeNorms::l2_h1() const { return std::hypot(l2_l2, l2_hdot1); }

double SpaceTimeNorms::energy_norm(double nu) const {
  return linf_l2 + std::sqrt(nu) * l2_hdot1;
}

namespace {

const SolenoidalField& pick(const Trajectory& a, TrajectoryField f, std::size_t i) {
  return f == TrajectoryField::velocity ? a.u[i] : a.u_alpha[i];
}

template <class Sample>
SpaceTimeNorms accumulate(const std::vector<double>& t, Sample&& sample) {
  SpaceTimeNorms out;
  double l2 = 0.0;
  double h1 = 0.0;
  double prev_l2 = 0.0;
  double prev_h1 = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const SpectralField d = sample(i);
    const double a = std::pow(l2_norm(d), 2);
    const double b = std::pow(sobolev_norm(d, 1.0, SobolevKind::homogeneous), 2);
    out.linf_l2 = std::max(out.linf_l2, std::sqrt(a));
    if (i > 0) {
      const double dt = t[i] - t[i - 1];
      l2 += 0.5 * dt * (a + prev_l2);
      h1 += 0.5 * dt * (b + prev_h1);
    }
    prev_l2 = a;
    prev_h1 = b;
  }
  out.l2_l2 = std::sqrt(l2);
  out.l2_hdot1 = std::sqrt(h1);
  return out;
}

}  // namespace

SpaceTimeNorms difference_norms(const Trajectory& a, TrajectoryField fa, const Trajectory& b,
                                TrajectoryField fb) {
  if (a.size() != b.size()) throw std::invalid_argument("difference_norms: sample counts differ");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.t[i] - b.t[i]) > 1e-12 * std::max(1.0, std::abs(a.t[i])))
      throw std::invalid_argument("difference_norms: sample times differ");
  return accumulate(a.t, [&](std::size_t i) {
    return pick(a, fa, i).field() - pick(b, fb, i).field();
  });
}

SpaceTimeNorms norms(const Trajectory& a, TrajectoryField field) {
  return accumulate(a.t, [&](std::size_t i) { return pick(a, field, i).field(); });
}

RunResult integrate(SimState state, const StepConfig& config, const ForcingSpec& forcing,
                    const AdvectionModel& model, double t_end, bool record,
                    const StepObserver& observer) {
  config.validate();
  if (t_end < state.t) throw std::invalid_argument("integrate: t_end precedes the state time");
  Trajectory traj;
  if (record) traj.record(state);
  if (observer) observer(state);
  // Step count fixed up front so that times are reproducible across runs.
  const long steps = std::max(0L, std::lround(std::ceil((t_end - state.t) / config.dt - 1e-9)));
  const double t0 = state.t;
  for (long n = 0; n < steps; ++n) {
    StepConfig local = config;
    const double target = n + 1 == steps ? t_end : t0 + double(n + 1) * config.dt;
    local.dt = target - state.t;
    state = step(state, local, forcing, model);
    state.t = target;
    if (record) traj.record(state);
    if (observer) observer(state);
  }
  return {std::move(state), std::move(traj)};
}

}  // namespace nsalpha
