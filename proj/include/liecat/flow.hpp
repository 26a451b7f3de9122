#pragma once

// Riemannian gradient flow of h_X and numerical verification of the
// structure of its critical set.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "liecat/critical.hpp"
#include "liecat/group.hpp"
#include "liecat/height.hpp"

namespace liecat {

enum class Direction { Ascend, Descend };

struct FlowConfig {
  double step = 0.5;
  double grad_tol = 1e-10;
  int max_iters = 5000;
  Direction direction = Direction::Ascend;
  double armijo_c = 1e-4;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless step > 0, 0 < armijo_c < 1,
  /// grad_tol > 0 and max_iters >= 0.
  void validate() const;
};

struct Classification {
  std::vector<int> indices;
  double residual = 0;
};

struct FlowResult {
  Matrix final_point;
  double final_value = 0;
  double final_grad_norm = 0;
  int iterations = 0;
  bool converged = false;
  /// False if an accepted step moved against the flow direction by more
  /// than the round-off allowance.
  bool monotone = true;
  std::optional<Classification> classified;
};

/// Armijo-backtracked gradient ascent/descent from a0.
FlowResult run(const HeightSpec& h, const Matrix& a0, const FlowConfig& cfg);

/// Default tolerance for classify.
inline constexpr double kClassifyTol = 1e-6;

/// Reads off the component Sigma[n0; i] containing A (X = sd.diagonal_matrix()).
/// Throws PreconditionError if the block residual exceeds tol or a block
/// eigenvalue is not within tol of +-1.
Classification classify(const SingularData& sd, const Matrix& a, double tol = kClassifyTol);

struct HessianSpectrum {
  int index = 0;
  int nullity = 0;
  int coindex = 0;
  std::vector<double> eigenvalues;
};

/// Throws PreconditionError unless ||grad h(A)|| < 1e-8.
HessianSpectrum hessian_spectrum(const HeightSpec& h, const Matrix& a);

/// Random point of the critical component Sigma[n0; indices]: a Haar block in
/// O(n0) followed by Q_q diag(-I_{i_q}, I) Q_q* blocks.
Matrix constructed_critical_point(const SingularData& sd, std::span<const int> indices,
                                  std::uint64_t seed);

enum class StartKind { Haar, Stratified };

struct NullitySample {
  std::vector<int> indices;
  int nullity = 0;
  int index = 0;
  int component_dim = 0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  StartKind start = StartKind::Haar;
  Direction direction = Direction::Ascend;
  bool converged = false;
  int iterations = 0;
  double final_value = 0;
  double final_grad_norm = 0;
  std::optional<std::vector<int>> indices;
  double classification_residual = 0;
  double value_error = 0;
};

struct StructureReport {
  GroupSpec group;
  SingularData sd;
  int trials = 0;
  int converged = 0;
  /// Converged without leaving the start (start already critical).
  int start_on_critical = 0;
  std::map<std::vector<int>, int> component_hits;
  std::size_t component_count = 0;
  double max_classification_residual = 0;
  double max_value_error = 0;
  double max_grad_norm = 0;
  bool all_monotone = true;
  std::vector<NullitySample> nullities;
  std::vector<std::string> counterexamples;
  std::vector<TrialRecord> records;  // sorted by seed

  double fraction_converged() const { return trials ? double(converged) / trials : 0.0; }
  bool all_components_hit() const { return component_hits.size() == component_count; }
  bool nullity_matches() const;
  /// Every trial converged, classified, matched its enumerated value and
  /// every sampled nullity equals the component dimension.
  bool pass() const;
};

/// Runs `trials` seeded flows on the diagonal height function of sd.
/// Trial t uses seed derive_seed(cfg.seed, t), ascends for even t and
/// descends for odd t. Trials with t % 4 < 2 start from a Haar point;
/// the others start from a stratified point whose diagonal slots are each
/// either pinned to +-1 or left free (Haar in the free sub-block), so that
/// the flow also reaches saddle components.
StructureReport verify_structure(const GroupSpec& spec, const SingularData& sd, int trials,
                                 const FlowConfig& cfg);

}  // namespace liecat
