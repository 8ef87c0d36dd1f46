#ifndef LSLAB_CONTROL_HPP
#define LSLAB_CONTROL_HPP

#include <vector>

#include "lslab/spectral.hpp"

namespace lslab {

/// Dyadic stage layout: cutoffs grow as base * 16^k (doubling in the mu^{1/4}
/// scale) and stage lengths shrink as 2^{-k}. Cutoffs are capped at the
/// largest value whose window Gram matrix stays well conditioned; modes above
/// the cap are never steered and rely on their own decay.
struct LRScheduleParams {
  double base = 2.0;             // first cutoff
  int max_stages = 8;
  double control_fraction = 0.5;  // of each stage, remainder is free decay
  int steps_per_stage = 64;       // tabulation resolution for stored controls
  double gram_floor = 1e-6;       // lambda_min(G)/lambda_max(G) below this is singular
  double tail_fraction = 0.3;     // trailing part of (0,T) left as pure decay
};

struct LRStage {
  double t_start = 0.0;
  double t_control = 0.0;
  double t_decay = 0.0;
  double cutoff = 0.0;
  int dim = 0;  // modes steered in this stage
};

struct LRSchedule {
  double T = 0.0;
  std::vector<LRStage> stages;
  double mu_cap = 0.0;  // largest certifiable cutoff
};

/// Tabulated low-mode control on one stage: w(t) has one column per steered
/// mode, sampled on a uniform grid over the control interval along with its
/// exact time derivative (for high-order reconstruction).
struct StoredControl {
  double t_start = 0.0;
  double duration = 0.0;
  int dim = 0;
  Eigen::MatrixXd w;     // (steps+1) x dim
  Eigen::MatrixXd wdot;  // (steps+1) x dim
};

struct StageRecord {
  double cutoff = 0.0;
  double stage_cost = 0.0;       // L^2((stage) x Omega) norm of v
  double post_stage_norm = 0.0;  // ||y|| after control (before the decay half)
  double post_low_norm = 0.0;    // steered block after control, should be ~0
};

struct ControlResult {
  double final_norm = 0.0;
  double cost = 0.0;  // L^2((0,T) x Omega) norm of v
  std::vector<StageRecord> per_stage;
  std::vector<StoredControl> controls;
  Eigen::MatrixXd trajectory_samples;  // columns: t, ||y(t)||, ||v(t)||
  Eigen::VectorXd y_final;             // eigencoordinates at t = T
  LRSchedule schedule;
};

/// Exact free decay in eigencoordinates: y_j <- e^{-mu_j dt} y_j.
Eigen::VectorXd simulate_free(const EigenDecomposition& eig, const Eigen::VectorXd& y_coeffs,
                              double dt);

struct LowModeControl {
  StoredControl stored;
  Eigen::VectorXd post_state;     // all modes, after the control interval
  Eigen::MatrixXd state_samples;  // (steps+1) x n, trajectory on the tabulation grid
  double cost = 0.0;              // L^2 norm of v over the interval
};

/// Minimal-norm control v(t,x) = 1_omega(x) sum_k w_k(t) phi_k(x) steering
/// the modes with mu_j <= cutoff exactly to zero at t = duration, through the
/// controllability Gramian in closed form. High-mode excitation by v is
/// propagated exactly. Throws on a singular window Gram matrix.
LowModeControl low_mode_control(const EigenDecomposition& eig, const ObservationWindow& omega,
                                const Eigen::VectorXd& y_coeffs, double cutoff, double duration,
                                int steps = 64, double gram_floor = 1e-8);

/// Largest eigenvalue cutoff whose window Gram matrix has
/// lambda_min / lambda_max >= gram_floor. Returns 0 if even one mode fails.
double largest_certifiable_cutoff(const EigenDecomposition& eig, const ObservationWindow& omega,
                                  double gram_floor = 1e-8);

LRSchedule build_schedule(const EigenDecomposition& eig, const ObservationWindow& omega,
                          double T, const LRScheduleParams& params);

/// Full Lebeau-Robbiano run: alternate exact low-mode steering and free
/// decay over the dyadic stages.
ControlResult run_lr(const EigenDecomposition& eig, const ObservationWindow& omega,
                     const Eigen::VectorXd& y0_coeffs, double T, const LRScheduleParams& params);

/// Independent check: re-integrates the coupled system with an exponential
/// integrator at `refinement` times the stored control resolution, using
/// cubic Hermite reconstruction of w(t). Returns ||y(T)||.
double verify_by_resimulation(const EigenDecomposition& eig, const ObservationWindow& omega,
                              const std::vector<StoredControl>& controls,
                              const Eigen::VectorXd& y0_coeffs, double T, int refinement);

}  // namespace lslab

#endif
