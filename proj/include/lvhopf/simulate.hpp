#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvhopf/errors.hpp"
#include "lvhopf/kernels.hpp"
#include "lvhopf/model.hpp"
#include "lvhopf/types.hpp"

namespace lvhopf {

enum class SimMethod { Chain, Convolution };
enum class HistoryKind { ConstantAtEquilibrium, Perturbed };

struct SimConfig {
    double t_end = 200.0;
    double dt = 1e-3;
    SimMethod method = SimMethod::Convolution;
    HistoryKind history = HistoryKind::Perturbed;
    double perturbation = 1e-3; ///< relative bump applied to x3 at t = 0
    double truncation_epsilon = 1e-10;
    double transient_fraction = 0.5;
};

/// Uniformly sampled solution; times[i] = i * dt.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Vec3> states;
};

struct CycleMetrics {
    Vec3 amplitude{0.0, 0.0, 0.0}; ///< (max - min)/2 per component, post-transient
    std::optional<double> period;
    bool decaying = false;
    double period_rel_err_bound = 0.0; ///< max deviation of peak spacing from mean
};

/// Simulation left the admissible region (|x| > 1e6 or a population hit
/// zero). Carries the trajectory up to the failing step.
class BlowUp : public Error {
public:
    BlowUp(const std::string& msg, Trajectory partial)
        : Error(msg), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// Erlang kernels only: exact reduction of the convolution to two cascades
/// of shape-many linear stages, integrated as a plain ODE system by classic
/// fixed-step 4th-order steps.
Trajectory simulate_chain(const ModelParams& params, const DelayKernel& kernel,
                          const SimConfig& config);

/// Any kernel: the convolutions are evaluated by quadrature over the stored
/// history (Dirac by direct interpolated lookup at lag E; E = 0 collapses
/// to the no-delay system).
Trajectory simulate_convolution(const ModelParams& params,
                                const DelayKernel& kernel,
                                const SimConfig& config);

/// Dispatch on config.method.
Trajectory simulate(const ModelParams& params, const DelayKernel& kernel,
                    const SimConfig& config);

/// Post-transient oscillation metrics: peak detection on x3 with parabolic
/// refinement; period only when >= 4 peaks agree on spacing within 5%.
CycleMetrics limit_cycle_metrics(const Trajectory& traj, const Equilibrium& eq,
                                 const SimConfig& config);

} // namespace lvhopf
