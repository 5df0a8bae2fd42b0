#pragma once

#include <functional>
#include <vector>

#include "nsalpha/evolution.hpp"

namespace nsalpha {

/// Sampled solution (u, u_alpha) at the step times of a run.
struct Trajectory {
  std::vector<double> t;
  std::vector<SolenoidalField> u;
  std::vector<SolenoidalField> u_alpha;

  std::size_t size() const { return t.size(); }
  void record(const SimState& state);
  /// The leading samples with t <= horizon (plus a small tolerance).
  Trajectory prefix(double horizon) const;
};

enum class TrajectoryField { velocity, filtered };

/// Space-time norms of a sampled field, time integrals by the trapezoid rule.
struct SpaceTimeNorms {
  double linf_l2 = 0.0;
  double l2_l2 = 0.0;
  double l2_hdot1 = 0.0;
  double l2_h1() const;
  /// sup_t ||.||_{L^2} + sqrt(nu) ||.||_{L^2 H^1 hom}
  double energy_norm(double nu) const;
};

/// Norms of a(fa) - b(fb); both trajectories must share their time samples.
SpaceTimeNorms difference_norms(const Trajectory& a, TrajectoryField fa, const Trajectory& b,
                                TrajectoryField fb);
SpaceTimeNorms norms(const Trajectory& a, TrajectoryField field);

using StepObserver = std::function<void(const SimState&)>;

struct RunResult {
  SimState final_state;
  Trajectory trajectory;
};

/// Integrates until t_end with steps of config.dt (the last one shortened to
/// land on t_end). Records every state when `record` is set; `observer` sees
/// every accepted state including the initial one.
RunResult integrate(SimState state, const StepConfig& config, const ForcingSpec& forcing,
                    const AdvectionModel& model, double t_end, bool record = true,
                    const StepObserver& observer = {});

}  // namespace nsalpha
