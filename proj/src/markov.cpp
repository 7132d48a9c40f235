#include "commwalk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace commwalk {

namespace {

constexpr double kRowSumTol = 1e-10;
constexpr double kEntryTol = 1e-12;

[[noreturn]] void bad_arg(const std::string& msg) {
  throw std::invalid_argument(msg);
}

}  // namespace

MarkovChain::MarkovChain(std::vector<int> states, Eigen::MatrixXd matrix)
    : states_(std::move(states)), matrix_(std::move(matrix)) {
  const int r = static_cast<int>(states_.size());
  if (r == 0) bad_arg("chain needs at least one state");
  if (matrix_.rows() != r || matrix_.cols() != r) {
    bad_arg("transition matrix must be " + std::to_string(r) + "x" +
            std::to_string(r));
  }
  for (int i = 0; i < r; ++i) {
    double sum = 0.0;
    for (int j = 0; j < r; ++j) {
      double& e = matrix_(i, j);
      if (e < 0.0) {
        if (e < -kEntryTol) {
          bad_arg("negative transition probability at (" + std::to_string(i) +
                  ", " + std::to_string(j) + ")");
        }
        e = 0.0;
      }
      if (e > 1.0 + kRowSumTol) {
        bad_arg("transition probability above 1 at (" + std::to_string(i) +
                ", " + std::to_string(j) + ")");
      }
      sum += e;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      bad_arg("row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
    matrix_.row(i) /= sum;
  }
  order_.resize(static_cast<std::size_t>(r));
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(),
            [&](int a, int b) { return states_[a] < states_[b]; });
  for (std::size_t i = 1; i < order_.size(); ++i) {
    if (states_[order_[i - 1]] == states_[order_[i]]) {
      bad_arg("duplicate state id " + std::to_string(states_[order_[i]]));
    }
  }
}

int MarkovChain::index_of(int state) const {
  auto it = std::lower_bound(order_.begin(), order_.end(), state,
                             [&](int pos, int s) { return states_[pos] < s; });
  if (it == order_.end() || states_[*it] != state) {
    bad_arg("unknown state id " + std::to_string(state));
  }
  return *it;
}

bool MarkovChain::has_state(int state) const {
  auto it = std::lower_bound(order_.begin(), order_.end(), state,
                             [&](int pos, int s) { return states_[pos] < s; });
  return it != order_.end() && states_[*it] == state;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) bad_arg("empty distribution");
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -kEntryTol) bad_arg("negative probability");
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    bad_arg("distribution sums to " + std::to_string(sum));
  }
}

void WalkConfig::validate() const {
  if (r_exp < 1) bad_arg("r_exp must be >= 1");
  if (epsilon < 0.0) bad_arg("epsilon must be >= 0");
  if (laziness < 0.0 || laziness >= 1.0) bad_arg("laziness must be in [0, 1)");
}

MarkovChain build_community_walk(const Graph& g, const WalkConfig& cfg) {
  cfg.validate();
  const int n = g.node_count();
  if (n == 0) bad_arg("empty graph");
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    const auto& nbrs = g.neighbors(v);
    if (nbrs.empty()) {
      bad_arg("node " + std::to_string(v) +
              " has degree 0; split components or drop isolates first");
    }
    double total = 0.0;
    std::vector<double> w(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      double c = common_neighbor_count(g, v, nbrs[i]);
      w[i] = std::pow(c, cfg.r_exp) + cfg.epsilon;
      total += w[i];
    }
    if (total <= 0.0) {
      bad_arg("all edge weights at node " + std::to_string(v) +
              " are zero; use epsilon > 0");
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      q(v, nbrs[i]) = (w[i] / total) * (1.0 - cfg.laziness);
    }
    q(v, v) += cfg.laziness;
  }
  std::vector<int> states(static_cast<std::size_t>(n));
  std::iota(states.begin(), states.end(), 0);
  return MarkovChain(std::move(states), std::move(q));
}

namespace {

// Reachability over positive entries, forward or transposed.
std::vector<bool> reachable(const Eigen::MatrixXd& q, int from, bool transpose) {
  const int r = static_cast<int>(q.rows());
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < r; ++u) {
      double p = transpose ? q(u, v) : q(v, u);
      if (p > 0.0 && !seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

void check_irreducible(const MarkovChain& chain) {
  const auto& q = chain.matrix();
  auto fwd = reachable(q, 0, false);
  auto bwd = reachable(q, 0, true);
  for (int v = 0; v < chain.size(); ++v) {
    if (!fwd[v]) {
      bad_arg("chain is reducible: state " + std::to_string(chain.states()[v]) +
              " is unreachable from state " + std::to_string(chain.states()[0]));
    }
    if (!bwd[v]) {
      bad_arg("chain is reducible: state " + std::to_string(chain.states()[0]) +
              " is unreachable from state " + std::to_string(chain.states()[v]));
    }
  }
}

// Period of an irreducible chain: gcd of (level[u] + 1 - level[v]) over
// positive transitions u -> v, levels from a BFS at state 0.
int chain_period(const Eigen::MatrixXd& q) {
  const int r = static_cast<int>(q.rows());
  std::vector<int> level(static_cast<std::size_t>(r), -1);
  std::vector<int> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int u = 0; u < r; ++u) {
      if (q(v, u) > 0.0 && level[u] == -1) {
        level[u] = level[v] + 1;
        queue.push_back(u);
      }
    }
  }
  long long g = 0;
  for (int v = 0; v < r; ++v) {
    for (int u = 0; u < r; ++u) {
      if (q(v, u) > 0.0) {
        g = std::gcd(g, static_cast<long long>(std::abs(level[v] + 1 - level[u])));
      }
    }
  }
  return static_cast<int>(g == 0 ? 1 : g);
}

}  // namespace

Distribution stationary(const MarkovChain& chain) {
  check_irreducible(chain);
  int period = chain_period(chain.matrix());
  if (period > 1) {
    bad_arg("chain is periodic with period " + std::to_string(period) +
            "; mix in laziness to make it aperiodic");
  }
  const int r = chain.size();
  // (Q^T - I) pi = 0 with the last balance equation replaced by sum(pi) = 1.
  Eigen::MatrixXd a = chain.matrix().transpose() - Eigen::MatrixXd::Identity(r, r);
  a.row(r - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(r);
  b(r - 1) = 1.0;
  Eigen::VectorXd pi = a.partialPivLu().solve(b);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  double residual = (pi.transpose() * chain.matrix() - pi.transpose()).cwiseAbs().sum();
  if (residual >= 1e-10) {
    throw std::runtime_error("stationary solve residual " + std::to_string(residual));
  }
  return Distribution(std::vector<double>(pi.data(), pi.data() + r));
}

MarkovChain restrict(const MarkovChain& chain, const std::vector<int>& keep_states) {
  if (keep_states.empty()) bad_arg("restriction subset is empty");
  std::vector<bool> keep(static_cast<std::size_t>(chain.size()), false);
  for (int s : keep_states) {
    int pos = chain.index_of(s);
    if (keep[pos]) bad_arg("restriction subset repeats state " + std::to_string(s));
    keep[pos] = true;
  }
  std::vector<int> gpos, bpos;
  for (int i = 0; i < chain.size(); ++i) {
    (keep[i] ? gpos : bpos).push_back(i);
  }
  std::vector<int> gstates;
  gstates.reserve(gpos.size());
  for (int i : gpos) gstates.push_back(chain.states()[i]);
  if (bpos.empty()) {
    return chain;  // B empty: the watched process is the chain itself
  }
  const auto& q = chain.matrix();
  const int ng = static_cast<int>(gpos.size());
  const int nb = static_cast<int>(bpos.size());
  Eigen::MatrixXd qgg(ng, ng), qgb(ng, nb), qbg(nb, ng), qbb(nb, nb);
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < ng; ++j) qgg(i, j) = q(gpos[i], gpos[j]);
    for (int j = 0; j < nb; ++j) qgb(i, j) = q(gpos[i], bpos[j]);
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < ng; ++j) qbg(i, j) = q(bpos[i], gpos[j]);
    for (int j = 0; j < nb; ++j) qbb(i, j) = q(bpos[i], bpos[j]);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(nb, nb) - qbb;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  Eigen::MatrixXd x = lu.solve(qbg);
  double solve_residual = (m * x - qbg).cwiseAbs().maxCoeff();
  if (!std::isfinite(solve_residual) || solve_residual > 1e-8) {
    throw std::runtime_error("(I - Q_BB) solve failed; chain not irreducible?");
  }
  Eigen::MatrixXd qr = qgg + qgb * x;
  for (int i = 0; i < ng; ++i) {
    double sum = qr.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw std::runtime_error("restricted row " + std::to_string(i) +
                               " sums to " + std::to_string(sum));
    }
  }
  return MarkovChain(std::move(gstates), std::move(qr));
}

double neumann_check(const Eigen::MatrixXd& a, int terms) {
  if (a.rows() != a.cols()) bad_arg("matrix must be square");
  if (terms < 0) bad_arg("term count must be >= 0");
  const int m = static_cast<int>(a.rows());
  Eigen::MatrixXd inv =
      (Eigen::MatrixXd::Identity(m, m) - a).partialPivLu().solve(
          Eigen::MatrixXd::Identity(m, m));
  Eigen::MatrixXd partial = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(m, m);
  for (int k = 1; k <= terms; ++k) {
    power = power * a;
    partial += power;
  }
  return (inv - partial).cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace commwalk
