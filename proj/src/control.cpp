#include "lslab/control.hpp"

#include <algorithm>
#include <cmath>

namespace lslab {

namespace {

// (1 - e^{-(a+b) dur}) / (a + b), stable as a + b -> 0.
double decay_kernel(double a, double b, double dur) {
  const double s = a + b;
  if (s * dur < 1e-12) return dur;
  return -std::expm1(-s * dur) / s;
}

// B_{jk} = <phi_j, 1_omega phi_k>_h over all modes j and steered modes k.
Eigen::MatrixXd window_operator(const EigenDecomposition& eig, const ObservationWindow& omega,
                                int dim) {
  const int n = static_cast<int>(eig.phi.rows());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, dim);
  for (int i = 0; i < n; ++i) {
    if (!omega.mask[static_cast<size_t>(i)]) continue;
    b.noalias() += eig.h * eig.phi.row(i).transpose() * eig.phi.row(i).head(dim);
  }
  return b;
}

int modes_below(const EigenDecomposition& eig, double cutoff) {
  int dim = 0;
  while (dim < eig.mu.size() && eig.mu(dim) <= cutoff) ++dim;
  return dim;
}

// I_m = int_0^delta e^{-mu (delta - t)} t^m dt for m = 0..3. The recurrence
// I_m = (delta^m - m I_{m-1}) / mu cancels badly for small mu delta, where the
// series I_m = delta^{m+1} sum_p (-z)^p m! / (m + p + 1)! takes over.
void forcing_weights(double mu, double delta, double out[4]) {
  const double z = mu * delta;
  if (z < 0.1) {
    for (int m = 0; m <= 3; ++m) {
      double acc = 0.0;
      double term = 1.0 / (m + 1);  // p = 0 term m! / (m+1)!
      for (int p = 0; p <= 12; ++p) {
        acc += term;
        term *= -z / (m + p + 2);
      }
      out[m] = std::pow(delta, m + 1) * acc;
    }
    return;
  }
  out[0] = -std::expm1(-z) / mu;
  for (int m = 1; m <= 3; ++m)
    out[m] = (std::pow(delta, m) - m * out[m - 1]) / mu;
}

}  // namespace

Eigen::VectorXd simulate_free(const EigenDecomposition& eig, const Eigen::VectorXd& y_coeffs,
                              double dt) {
  if (dt < 0.0) throw std::invalid_argument("simulate_free: dt must be nonnegative");
  if (y_coeffs.size() != eig.mu.size())
    throw std::invalid_argument("simulate_free: coefficient size mismatch");
  return (-dt * eig.mu.array()).exp() * y_coeffs.array();
}

double largest_certifiable_cutoff(const EigenDecomposition& eig, const ObservationWindow& omega,
                                  double gram_floor) {
  omega.validate(static_cast<int>(eig.phi.rows()));
  const int n = static_cast<int>(eig.mu.size());
  double best = 0.0;
  for (int dim = 1; dim <= n; ++dim) {
    const Eigen::MatrixXd g = window_operator(eig, omega, dim).topRows(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < gram_floor * es.eigenvalues()(dim - 1)) break;
    best = eig.mu(dim - 1);
  }
  return best;
}

LowModeControl low_mode_control(const EigenDecomposition& eig, const ObservationWindow& omega,
                                const Eigen::VectorXd& y_coeffs, double cutoff, double duration,
                                int steps, double gram_floor) {
  if (!(duration > 0.0)) throw std::invalid_argument("low_mode_control: duration must be positive");
  if (steps < 64) throw std::invalid_argument("low_mode_control: need >= 64 tabulation steps");
  omega.validate(static_cast<int>(eig.phi.rows()));
  const int n = static_cast<int>(eig.mu.size());
  if (y_coeffs.size() != n) throw std::invalid_argument("low_mode_control: state size mismatch");
  const int dim = modes_below(eig, cutoff);
  if (dim == 0) throw std::invalid_argument("low_mode_control: no mode below the cutoff");

  const Eigen::MatrixXd b = window_operator(eig, omega, dim);  // n x dim
  const Eigen::MatrixXd g = b.topRows(dim);                    // symmetric window Gram
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(g, Eigen::EigenvaluesOnly);
  if (ges.eigenvalues()(0) < gram_floor * ges.eigenvalues()(dim - 1))
    throw std::runtime_error(
        "low_mode_control: window Gram matrix is numerically singular at this cutoff "
        "(observability constant too large)");

  const Eigen::VectorXd mu = eig.mu.head(dim);
  const Eigen::MatrixXd g2 = g * g;
  Eigen::MatrixXd gram = Eigen::MatrixXd(dim, dim);  // controllability Gramian
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k)
      gram(j, k) = g2(j, k) * decay_kernel(mu(j), mu(k), duration);

  const Eigen::VectorXd target = (-duration * mu.array()).exp() * y_coeffs.head(dim).array();
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  Eigen::VectorXd eta = -solver.solve(target);
  // Refine the steering equation gram * eta = -target until the predicted
  // terminal low-mode block is at roundoff.
  for (int pass = 0; pass < 40; ++pass) {
    const Eigen::VectorXd residual = target + gram * eta;
    if (residual.norm() <= 1e-14 * std::max(target.norm(), 1e-30)) break;
    eta -= solver.solve(residual);
  }

  LowModeControl out;
  out.stored.duration = duration;
  out.stored.dim = dim;

  // Terminal state of every mode under the coupled dynamics, in closed form.
  const Eigen::MatrixXd bg = b * g;  // n x dim
  out.post_state.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = std::exp(-eig.mu(j) * duration) * y_coeffs(j);
    for (int l = 0; l < dim; ++l)
      v += bg(j, l) * eta(l) * decay_kernel(eig.mu(j), mu(l), duration);
    out.post_state(j) = v;
  }

  // cost^2 = int w^T G w dt with w(t) = G e^{-D (duration - t)} eta.
  const Eigen::MatrixXd g3 = g2 * g;
  double cost2 = 0.0;
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k)
      cost2 += eta(j) * g3(j, k) * decay_kernel(mu(j), mu(k), duration) * eta(k);
  out.cost = std::sqrt(std::max(0.0, cost2));

  out.stored.w.resize(steps + 1, dim);
  out.stored.wdot.resize(steps + 1, dim);
  out.state_samples.resize(steps + 1, n);
  for (int i = 0; i <= steps; ++i) {
    const double t = duration * i / steps;
    const Eigen::VectorXd decayed = (-(duration - t) * mu.array()).exp() * eta.array();
    out.stored.w.row(i) = (g * decayed).transpose();
    out.stored.wdot.row(i) = (g * (mu.array() * decayed.array()).matrix()).transpose();
    for (int j = 0; j < n; ++j) {
      double v = std::exp(-eig.mu(j) * t) * y_coeffs(j);
      for (int l = 0; l < dim; ++l)
        v += bg(j, l) * eta(l) * std::exp(-mu(l) * (duration - t)) *
             decay_kernel(eig.mu(j), mu(l), t);
      out.state_samples(i, j) = v;
    }
  }
  return out;
}

LRSchedule build_schedule(const EigenDecomposition& eig, const ObservationWindow& omega,
                          double T, const LRScheduleParams& params) {
  if (!(T > 0.0)) throw std::invalid_argument("build_schedule: T must be positive");
  if (params.max_stages < 1 || !(params.base > 0.0) ||
      !(params.control_fraction > 0.0 && params.control_fraction < 1.0))
    throw std::invalid_argument("build_schedule: bad parameters");
  LRSchedule sched;
  sched.T = T;
  sched.mu_cap = largest_certifiable_cutoff(eig, omega, params.gram_floor);
  if (sched.mu_cap <= 0.0)
    throw std::runtime_error("build_schedule: no certifiable cutoff for this window");

  std::vector<double> cutoffs;
  double c = params.base;
  while (static_cast<int>(cutoffs.size()) < params.max_stages - 1 && c < sched.mu_cap) {
    if (modes_below(eig, c) > 0) cutoffs.push_back(c);
    c *= 16.0;  // one dyadic step in the mu^{1/4} scale
  }
  cutoffs.push_back(sched.mu_cap);

  // Stage lengths halve down the sequence; the tail fraction of the horizon
  // is pure decay so that modes above the cap die out on their own.
  const double active = (1.0 - params.tail_fraction) * T;
  double wsum = 0.0;
  for (size_t k = 0; k < cutoffs.size(); ++k) wsum += std::pow(0.5, static_cast<double>(k));
  double t = 0.0;
  for (size_t k = 0; k < cutoffs.size(); ++k) {
    const double d = active * std::pow(0.5, static_cast<double>(k)) / wsum;
    LRStage st;
    st.t_start = t;
    st.t_control = params.control_fraction * d;
    st.t_decay = d - st.t_control;
    st.cutoff = cutoffs[k];
    st.dim = modes_below(eig, cutoffs[k]);
    sched.stages.push_back(st);
    t += d;
  }
  // Fold the tail into the last stage's decay.
  sched.stages.back().t_decay += T - t;
  return sched;
}

ControlResult run_lr(const EigenDecomposition& eig, const ObservationWindow& omega,
                     const Eigen::VectorXd& y0_coeffs, double T,
                     const LRScheduleParams& params) {
  ControlResult res;
  res.schedule = build_schedule(eig, omega, T, params);
  Eigen::VectorXd y = y0_coeffs;
  double cost2 = 0.0;
  std::vector<Eigen::Vector3d> samples;
  samples.emplace_back(0.0, y.norm(), 0.0);

  for (const LRStage& st : res.schedule.stages) {
    LowModeControl lmc = low_mode_control(eig, omega, y, st.cutoff, st.t_control,
                                          params.steps_per_stage, params.gram_floor);
    lmc.stored.t_start = st.t_start;

    // ||v(t)||_h = sqrt(w^T G w) since the restricted modes have Gram G.
    const Eigen::MatrixXd g =
        window_operator(eig, omega, lmc.stored.dim).topRows(lmc.stored.dim);
    for (int i = 1; i <= params.steps_per_stage; ++i) {
      const Eigen::VectorXd w = lmc.stored.w.row(i).transpose();
      samples.emplace_back(st.t_start + st.t_control * i / params.steps_per_stage,
                           lmc.state_samples.row(i).norm(),
                           std::sqrt(std::max(0.0, w.dot(g * w))));
    }

    y = lmc.post_state;
    StageRecord rec;
    rec.cutoff = st.cutoff;
    rec.stage_cost = lmc.cost;
    rec.post_stage_norm = y.norm();
    rec.post_low_norm = y.head(lmc.stored.dim).norm();
    res.per_stage.push_back(rec);
    cost2 += lmc.cost * lmc.cost;
    res.controls.push_back(std::move(lmc.stored));

    y = simulate_free(eig, y, st.t_decay);
    samples.emplace_back(st.t_start + st.t_control + st.t_decay, y.norm(), 0.0);
  }

  res.y_final = y;
  res.final_norm = y.norm();
  res.cost = std::sqrt(cost2);
  res.trajectory_samples.resize(static_cast<int>(samples.size()), 3);
  for (size_t i = 0; i < samples.size(); ++i)
    res.trajectory_samples.row(static_cast<int>(i)) = samples[i].transpose();
  return res;
}

double verify_by_resimulation(const EigenDecomposition& eig, const ObservationWindow& omega,
                              const std::vector<StoredControl>& controls,
                              const Eigen::VectorXd& y0_coeffs, double T, int refinement) {
  if (refinement < 1) throw std::invalid_argument("verify_by_resimulation: refinement >= 1");
  const int n = static_cast<int>(eig.mu.size());
  if (y0_coeffs.size() != n)
    throw std::invalid_argument("verify_by_resimulation: state size mismatch");
  std::vector<const StoredControl*> ordered;
  for (const auto& c : controls) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const StoredControl* a, const StoredControl* b) { return a->t_start < b->t_start; });

  Eigen::VectorXd y = y0_coeffs;
  double t = 0.0;
  for (const StoredControl* c : ordered) {
    if (c->t_start < t - 1e-12) throw std::invalid_argument("overlapping control intervals");
    y = simulate_free(eig, y, std::max(0.0, c->t_start - t));
    t = c->t_start;

    const Eigen::MatrixXd b = window_operator(eig, omega, c->dim);
    const int segs = static_cast<int>(c->w.rows()) - 1;
    const double seg = c->duration / segs;
    const double delta = seg / refinement;
    for (int i = 0; i < segs; ++i) {
      // Hermite cubic reconstruction of w on this tabulation segment,
      // converted to eigencoordinate forcing polynomials through B.
      const Eigen::VectorXd w0 = c->w.row(i).transpose();
      const Eigen::VectorXd w1 = c->w.row(i + 1).transpose();
      const Eigen::VectorXd d0 = c->wdot.row(i).transpose() * seg;
      const Eigen::VectorXd d1 = c->wdot.row(i + 1).transpose() * seg;
      // w(u) = a0 + a1 u + a2 u^2 + a3 u^3, u in [0,1]
      const Eigen::VectorXd a0 = w0;
      const Eigen::VectorXd a1 = d0;
      const Eigen::VectorXd a2 = 3.0 * (w1 - w0) - 2.0 * d0 - d1;
      const Eigen::VectorXd a3 = 2.0 * (w0 - w1) + d0 + d1;
      const Eigen::MatrixXd f0 = b * a0, f1 = b * a1, f2 = b * a2, f3 = b * a3;
      for (int r = 0; r < refinement; ++r) {
        const double u0 = static_cast<double>(r) / refinement;
        for (int j = 0; j < n; ++j) {
          double iw[4];
          forcing_weights(eig.mu(j), delta, iw);
          // forcing g_j(u0 + tau/seg) as a cubic in tau (time within the step)
          const double p0 = f0(j) + u0 * (f1(j) + u0 * (f2(j) + u0 * f3(j)));
          const double p1 = (f1(j) + u0 * (2.0 * f2(j) + 3.0 * u0 * f3(j))) / seg;
          const double p2 = (f2(j) + 3.0 * u0 * f3(j)) / (seg * seg);
          const double p3 = f3(j) / (seg * seg * seg);
          y(j) = std::exp(-eig.mu(j) * delta) * y(j) + p0 * iw[0] + p1 * iw[1] +
                 p2 * iw[2] + p3 * iw[3];
        }
      }
    }
    t += c->duration;
  }
  y = simulate_free(eig, y, std::max(0.0, T - t));
  return y.norm();
}

}  // namespace lslab
