#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "commwalk/graph.hpp"

namespace commwalk {

// Finite Markov chain: ordered state ids plus a row-stochastic matrix with
// matrix(i, j) = P(states[j] | states[i]). Rows whose raw sums deviate from 1
// by more than 1e-10 are rejected; accepted rows are renormalized exactly.
// Immutable after construction.
class MarkovChain {
 public:
  MarkovChain(std::vector<int> states, Eigen::MatrixXd matrix);

  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<int>& states() const { return states_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // Position of a state id; throws if unknown.
  int index_of(int state) const;
  bool has_state(int state) const;

  // Matrix positions sorted by ascending state id (grand-coupling CDF order).
  const std::vector<int>& ascending_positions() const { return order_; }

 private:
  std::vector<int> states_;
  Eigen::MatrixXd matrix_;
  std::vector<int> order_;
};

// Probability vector aligned with a chain's state order.
struct Distribution {
  explicit Distribution(std::vector<double> probs);
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
};

// Parameters of the common-neighbor random walk.
//
// r_exp is the exponent applied to common-neighbor counts. epsilon is a
// weight floor keeping the walk irreducible on connected graphs whose edges
// can have zero common neighbors; laziness is the self-loop probability that
// makes the walk aperiodic.
struct WalkConfig {
  int r_exp = 2;
  double epsilon = 1e-3;
  double laziness = 0.05;

  void validate() const;
};

// Random walk whose edge weights are (|N(v) ∩ N(u)|^r_exp + epsilon),
// normalized per row and mixed with a lazy self-loop. States are the graph's
// node ids. Every node must have degree >= 1.
MarkovChain build_community_walk(const Graph& g, const WalkConfig& cfg = {});

// Unique fixed point of pi = pi Q for an irreducible aperiodic chain,
// via dense LU. Residual ||pi Q - pi||_1 is verified below 1e-10.
Distribution stationary(const MarkovChain& chain);

// Chain of the process watched only on `keep_states`:
// Q~ = Q_GG + Q_GB (I - Q_BB)^{-1} Q_BG. State order follows the parent
// chain. keep_states must be non-empty and known to the chain.
MarkovChain restrict(const MarkovChain& chain, const std::vector<int>& keep_states);

// ||(I - A)^{-1} - sum_{k=0}^{terms} A^k||_inf for a sub-stochastic A with
// spectral radius < 1. Diagnostic utility; monotone non-increasing in terms.
double neumann_check(const Eigen::MatrixXd& a, int terms);

}  // namespace commwalk
