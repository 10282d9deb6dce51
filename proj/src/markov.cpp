#include "markov.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <vector>

namespace pdmpsync {

namespace {

// Strong connectivity of the directed graph of nonzero rates: forward and
// backward reachability from state 0 must both cover all states.
bool strongly_connected(const Eigen::MatrixXd& rates) {
  const int n = static_cast<int>(rates.rows());
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int m = stack.back();
      stack.pop_back();
      for (int k = 0; k < n; ++k) {
        const double r = transpose ? rates(m, k) : rates(k, m);
        if (r > 0.0 && !seen[k]) {
          seen[k] = 1;
          stack.push_back(k);
        }
      }
    }
    for (int k = 0; k < n; ++k)
      if (!seen[k]) return false;
    return true;
  };
  return reach(false) && reach(true);
}

}  // namespace

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& generator) {
  const int n = static_cast<int>(generator.rows());
  if (n == 1) return Eigen::VectorXd::Ones(1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(generator, Eigen::ComputeFullV);
  Eigen::VectorXd rho = svd.matrixV().col(n - 1);
  const double total = rho.sum();
  if (std::abs(total) < 1e-14)
    throw Error(ErrorCode::NotIrreducible, "not irreducible");
  rho /= total;
  if ((rho.array() <= 0.0).any())
    throw Error(ErrorCode::NotIrreducible, "not irreducible");
  return rho;
}

Eigen::MatrixXd moore_penrose_pseudo_inverse(const Eigen::MatrixXd& generator) {
  const int n = static_cast<int>(generator.rows());
  if (n == 1) return Eigen::MatrixXd::Zero(1, 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      generator, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = 1e-12 * sigma(0);
  int zero_count = 0;
  Eigen::VectorXd inv(n);
  for (int i = 0; i < n; ++i) {
    if (sigma(i) <= cutoff) {
      inv(i) = 0.0;
      ++zero_count;
    } else {
      inv(i) = 1.0 / sigma(i);
    }
  }
  if (zero_count != 1)
    throw Error(ErrorCode::RankDeficient, "generator rank deficient");
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> diffusion_matrix(
    const Eigen::MatrixXd& pseudo_inverse, const Eigen::VectorXd& stationary) {
  const int n = static_cast<int>(stationary.size());
  const Eigen::MatrixXd scaled = pseudo_inverse * stationary.asDiagonal();
  Eigen::MatrixXd sym = 0.5 * (scaled + scaled.transpose());

  // Mean-zero gauge: project onto the orthogonal complement of rho. The
  // symmetrized matrix is contracted only against vectors g with rho.g = 0,
  // where the projection is the identity.
  const Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) -
      (stationary * stationary.transpose()) / stationary.squaredNorm();
  Eigen::MatrixXd diffusion = proj * sym * proj;
  diffusion = 0.5 * (diffusion + diffusion.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(-diffusion);
  Eigen::VectorXd mu = eig.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (mu(i) < -1e-10)
      throw Error(ErrorCode::NotPositiveSemidefinite,
                  "diffusion matrix not PSD");
    if (std::abs(mu(i)) < 1e-12) mu(i) = 0.0;
    mu(i) = std::sqrt(std::max(mu(i), 0.0));
  }
  Eigen::MatrixXd root = eig.eigenvectors() * mu.asDiagonal();
  return {diffusion, root};
}

GeneratorSpec GeneratorSpec::from_rates(const Eigen::MatrixXd& rates) {
  const int n = static_cast<int>(rates.rows());
  if (n == 0 || rates.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "rate matrix must be square");
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (!std::isfinite(rates(k, m)) || rates(k, m) < 0.0 ||
          (k == m && rates(k, m) != 0.0))
        throw Error(ErrorCode::InvalidRate, "invalid rate");
    }
  }

  GeneratorSpec spec;
  spec.rates_ = rates;
  spec.exit_rates_ = rates.colwise().sum();
  spec.generator_ = rates;
  spec.generator_.diagonal() -= spec.exit_rates_;

  if (n == 1) {
    spec.stationary_ = Eigen::VectorXd::Ones(1);
    spec.jump_prob_ = Eigen::MatrixXd::Zero(1, 1);
    spec.pseudo_inverse_ = Eigen::MatrixXd::Zero(1, 1);
    spec.diffusion_ = Eigen::MatrixXd::Zero(1, 1);
    spec.noise_root_ = Eigen::MatrixXd::Zero(1, 1);
    return spec;
  }

  for (int m = 0; m < n; ++m)
    if (spec.exit_rates_(m) <= 0.0)
      throw Error(ErrorCode::AbsorbingState, "absorbing state");
  if (!strongly_connected(rates))
    throw Error(ErrorCode::NotIrreducible, "not irreducible");

  spec.stationary_ = stationary_distribution(spec.generator_);
  spec.jump_prob_ =
      rates * spec.exit_rates_.cwiseInverse().asDiagonal();
  spec.pseudo_inverse_ = moore_penrose_pseudo_inverse(spec.generator_);
  std::tie(spec.diffusion_, spec.noise_root_) =
      diffusion_matrix(spec.pseudo_inverse_, spec.stationary_);
  return spec;
}

GeneratorSpec GeneratorSpec::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("chain JSON: ") + e.what());
  }
  if (!doc.contains("W") || !doc["W"].is_array())
    throw Error(ErrorCode::ParseError, "chain JSON: missing \"W\" matrix");
  const auto& w = doc["W"];
  const int n = static_cast<int>(w.size());
  Eigen::MatrixXd rates(n, n);
  for (int i = 0; i < n; ++i) {
    if (!w[i].is_array() || static_cast<int>(w[i].size()) != n)
      throw Error(ErrorCode::ParseError, "chain JSON: \"W\" must be square");
    for (int j = 0; j < n; ++j) {
      if (!w[i][j].is_number())
        throw Error(ErrorCode::ParseError, "chain JSON: non-numeric rate");
      rates(i, j) = w[i][j].get<double>();
    }
  }
  return from_rates(rates);
}

JumpEvent GeneratorSpec::sample_jump(int current, double epsilon,
                                     Rng& rng) const {
  const int n = num_states();
  if (current < 0 || current >= n)
    throw Error(ErrorCode::InvalidArgument, "state index out of range");
  if (epsilon <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double rate = exit_rates_(current);
  if (rate <= 0.0)
    throw Error(ErrorCode::InvalidArgument,
                "state has zero exit rate; no jump to sample");

  JumpEvent event;
  event.from_state = current;
  event.waiting_time = rng.exponential(rate / epsilon);

  const double u = rng.uniform();
  double acc = 0.0;
  int dest = -1;
  for (int k = 0; k < n; ++k) {
    const double p = jump_prob_(k, current);
    if (p <= 0.0) continue;
    acc += p;
    dest = k;
    if (u < acc) break;
  }
  event.to_state = dest;
  event.time = event.waiting_time;  // caller offsets by the current time
  return event;
}

double GeneratorSpec::series_identity_residual(const Eigen::VectorXd& f,
                                               int order) const {
  const int n = num_states();
  if (f.size() != n)
    throw Error(ErrorCode::InvalidArgument, "test vector has wrong length");
  if (order < 0)
    throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 0");
  const double scale = std::max(1.0, f.lpNorm<Eigen::Infinity>());
  if (std::abs(stationary_.dot(f)) > 1e-9 * scale)
    throw Error(ErrorCode::NotMeanZero, "test vector not mean-zero");
  if (n == 1) return 0.0;

  const Eigen::VectorXd weighted = stationary_.cwiseProduct(f);
  Eigen::VectorXd term = weighted;
  Eigen::VectorXd partial = weighted;
  for (int j = 1; j <= order; ++j) {
    term = jump_prob_ * term;
    partial += term;
  }
  const Eigen::VectorXd lhs =
      -(generator_ * partial.cwiseQuotient(exit_rates_));
  return (lhs - weighted).lpNorm<Eigen::Infinity>();
}

}  // namespace pdmpsync
