#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "otcut/graph.hpp"
#include "otcut/partition.hpp"
#include "otcut/transport.hpp"

namespace otcut {

enum class Variant { NCut, RCut, Custom };

struct SolverConfig {
  // Step size. The concave weight is always lambda = 1 / (2 alpha); there is
  // deliberately no separate lambda knob.
  double alpha = 0.5;
  int max_iter = 20;
  // Relative objective-change threshold; 0 disables early stopping.
  double tol = 0.0;
  Variant variant = Variant::NCut;
  // Variant::Custom only. An empty source means uniform.
  std::vector<double> source;
  std::vector<double> target;
  std::uint64_t seed = 0;
  LaplacianKind laplacian_kind = LaplacianKind::SymNormalized;
  int restarts = 1;
  // Clamp alpha to 0.99 / s~ where s~ over-estimates the gradient's
  // Lipschitz constant; inside that range the objective never increases.
  bool safe_step = false;
  int power_iters = 500;
  // Skip the random draw and start from this assignment.
  std::optional<Partition> initial;
  SimplexOptions simplex;

  double lambda() const { return 1.0 / (2.0 * alpha); }
};

enum class StopReason { MaxIter, Tolerance };

struct SolveTrace {
  // F(X^(t)) for t = 0..iterations_run.
  std::vector<double> objectives;
  std::vector<double> per_iter_seconds;
  int iterations_run = 0;
  StopReason stop_reason = StopReason::MaxIter;
};

struct SolveResult {
  TransportPlan plan;
  Partition partition;
  SolveTrace trace;
  double alpha = 0.0;       // step size actually used
  double smoothness = 0.0;  // s~ from estimate_smoothness
  int restart = 0;          // index of the winning restart
};

// Called once per iteration with X^(t+1), Z^(t+1), V^(t+1).
using IterationObserver = std::function<void(int iteration, const TransportPlan& x,
                                             const TransportPlan& z, const TransportPlan& v)>;

// Tr(X^T L X) - lambda ||X||_F^2.
double objective(const Laplacian& lap, const Eigen::MatrixXd& x, double lambda);
double objective(const Laplacian& lap, const TransportPlan& x, double lambda);

// Gradient of Tr(X^T L X): 2 L X.
Eigen::MatrixXd gradient(const Laplacian& lap, const Eigen::MatrixXd& x);

// 2 * 1.01 * (power-iteration estimate of lambda_max(L)); deterministic in seed.
double estimate_smoothness(const Laplacian& lap, int iters = 500, std::uint64_t seed = 0);

// argmin_{Z in Pi} <Z, (2 alpha L - I) Y>, the proximal step at Y when
// lambda = 1 / (2 alpha). Y may lie outside the polytope.
TransportPlan prox_step(const Laplacian& lap, const Eigen::MatrixXd& y, double alpha,
                        const SizeConstraints& c, const SimplexOptions& options = {});

// Source/target marginals implied by the variant.
SizeConstraints make_constraints(const SparseGraph& g, int k, const SolverConfig& cfg);

// Monitored accelerated proximal gradient on the OT-cut objective.
SolveResult solve(const SparseGraph& g, int k, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

// Step size used for a given smoothness estimate.
double effective_alpha(const SolverConfig& cfg, double smoothness);

// c_{t+1} = (sqrt(4 c_t^2 + 1) + 1) / 2.
double next_momentum(double c);

}  // namespace otcut
