#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "error.hpp"
#include "rng.hpp"

namespace pdmpsync {

/// One switching event of the environment chain. Rates are understood before
/// epsilon-rescaling: the waiting time in state m is Exp(exit_rate[m]/epsilon).
struct JumpEvent {
  double time = 0.0;
  int from_state = 0;
  int to_state = 0;
  double waiting_time = 0.0;
};

/// Validated finite-state continuous-time Markov chain together with the
/// derived algebra used by the diffusion approximation:
///
///   W   nonnegative transition rates, zero diagonal; W(n,m) is the rate of
///       the jump m -> n (rows index destinations, columns sources)
///   A   generator, A = W - diag(exit rates); columns sum to zero
///   rho stationary distribution, A rho = 0, sum rho = 1
///   P   embedded jump probabilities, W(n,m) = P(n,m) * exit_rate(m)
///   A+  Moore-Penrose pseudo-inverse of A
///   At  symmetrized diffusion matrix 0.5*(A+ diag(rho) + (A+ diag(rho))^T),
///       stored in the mean-zero gauge: projected onto the subspace
///       orthogonal to rho, the only subspace it is ever contracted against
///   B   Hermitian root with B B^T = -At
///
/// Instances are immutable after construction and safe to share across
/// threads. Every operation is pure except sample_jump, which mutates only
/// the caller's random stream.
class GeneratorSpec {
 public:
  /// Builds the full algebra from a rate matrix. Throws Error with codes
  /// InvalidRate (negative entry / nonzero diagonal), NotIrreducible,
  /// AbsorbingState (zero exit rate, num_states >= 2), RankDeficient.
  /// A 1x1 chain is the deterministic degenerate case (no jumps, rho = (1)).
  static GeneratorSpec from_rates(const Eigen::MatrixXd& rates);

  /// Parses {"W": [[...], ...]} (rows = destination, columns = source).
  static GeneratorSpec from_json_text(const std::string& text);

  int num_states() const { return static_cast<int>(rates_.rows()); }
  const Eigen::MatrixXd& rates() const { return rates_; }
  const Eigen::MatrixXd& generator() const { return generator_; }
  const Eigen::VectorXd& stationary() const { return stationary_; }
  const Eigen::VectorXd& exit_rates() const { return exit_rates_; }
  const Eigen::MatrixXd& jump_probabilities() const { return jump_prob_; }
  const Eigen::MatrixXd& pseudo_inverse() const { return pseudo_inverse_; }
  const Eigen::MatrixXd& diffusion() const { return diffusion_; }
  const Eigen::MatrixXd& noise_root() const { return noise_root_; }

  /// Mean switching activity sum_n rho_n * exit_rate_n; jumps per unit time
  /// are this divided by epsilon.
  double mean_jump_rate() const { return stationary_.dot(exit_rates_); }

  /// Draws the next event out of `current`: waiting time from
  /// Exp(exit_rate/epsilon), then the destination by inverse-CDF over column
  /// `current` of P with a single uniform (ties to the lowest index).
  /// Exactly two uniforms are consumed per call.
  JumpEvent sample_jump(int current, double epsilon, Rng& rng) const;

  /// Max-norm residual of the truncated pseudo-inverse series identity,
  ///   || -A diag(exit)^-1 (sum_{j<=order} P^j) diag(rho) f - diag(rho) f ||_inf
  /// for a test vector with sum_n rho_n f_n = 0 (else Error NotMeanZero).
  /// Decays exponentially in `order` when the embedded chain is aperiodic.
  double series_identity_residual(const Eigen::VectorXd& f, int order) const;

 private:
  GeneratorSpec() = default;

  Eigen::MatrixXd rates_, generator_, jump_prob_, pseudo_inverse_, diffusion_,
      noise_root_;
  Eigen::VectorXd stationary_, exit_rates_;
};

/// Stationary distribution of an irreducible generator via SVD null-space
/// extraction (exact and deterministic at these sizes).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& generator);

/// Moore-Penrose pseudo-inverse via SVD. Singular values below
/// 1e-12 * sigma_max are treated as zero; exactly one zero singular value is
/// expected for the generator of an irreducible chain, otherwise throws
/// Error(RankDeficient, "generator rank deficient").
Eigen::MatrixXd moore_penrose_pseudo_inverse(const Eigen::MatrixXd& generator);

/// Diffusion pair (At, B): At is the symmetrized pseudo-inverse-times-rho
/// matrix projected onto the mean-zero subspace, B its Hermitian root with
/// B B^T = -At (eigenvalues of -At clamped to zero below 1e-12 in magnitude;
/// below -1e-10 throws Error(NotPositiveSemidefinite)).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> diffusion_matrix(
    const Eigen::MatrixXd& pseudo_inverse, const Eigen::VectorXd& stationary);

}  // namespace pdmpsync
