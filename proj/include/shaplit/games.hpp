#ifndef SHAPLIT_GAMES_HPP
#define SHAPLIT_GAMES_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "shaplit/coalition.hpp"

namespace shaplit {

// An n-person cooperative game: players [0, n) and a characteristic function
// mapping coalitions to scores. The evaluator must be re-entrant; it may be
// called from several workers at once.
struct CooperativeGame {
  int n = 0;
  std::function<double(const Coalition&)> value;
};

inline constexpr int kMaxExactPlayers = 24;
inline constexpr int kMaxPermutationPlayers = 8;

// Exact coalition weight |C|! (n-|C|-1)! / n!, computed as the exact rational
// 1 / (n * binom(n-1, c)) and converted to double. The integer denominator
// avoids the factorial overflow that hits 64-bit arithmetic near n = 21.
double shapley_weight(int n, int c);

// binom(a, b) in exact 64-bit arithmetic (throws std::overflow_error if the
// intermediate product cannot be held exactly).
std::uint64_t binomial(int a, int b);

struct Contribution {
  Coalition coalition;
  double weight = 0.0;
  double marginal = 0.0;
};

struct ShapleyResult {
  int feature = 0;
  double phi = 0.0;
  // One entry per C subset of [n] \ {feature}, ascending bit order.
  std::vector<Contribution> contributions;
};

// Exact Shapley value of feature j by full coalition enumeration
// (2^(n-1) weighted marginals). Throws CapacityError for n > 24.
ShapleyResult exact_shapley(const CooperativeGame& game, int j, int workers = 1);

// All n features at once; the 2^n characteristic values are evaluated exactly
// once each and shared.
std::vector<ShapleyResult> exact_shapley_all(const CooperativeGame& game, int workers = 1);

// Independent oracle: the average marginal contribution of j over all n!
// player orderings. Throws CapacityError for n > 8.
double permutation_shapley(const CooperativeGame& game, int j);

struct AxiomReport {
  double tolerance = 0.0;
  // Additivity: sum_j phi_j - (v([n]) - v(empty)).
  double additivity_residual = 0.0;
  bool additivity_pass = false;
  double value_empty = 0.0;
  double value_grand = 0.0;
  // Detected null players (v(C u {j}) = v(C) for all C) and their |phi|.
  std::vector<int> null_players;
  std::vector<double> null_residuals;
  bool nullity_pass = true;
  // Detected symmetric pairs (v(C u {j}) = v(C u {k}) for all C not meeting
  // {j,k}) and |phi_j - phi_k|.
  std::vector<std::pair<int, int>> symmetric_pairs;
  std::vector<double> symmetry_residuals;
  bool symmetry_pass = true;
  bool all_pass() const { return additivity_pass && nullity_pass && symmetry_pass; }
};

// Report-only verification of additivity / nullity / symmetry against the
// supplied per-feature results (which may have been perturbed).
AxiomReport check_axioms(const CooperativeGame& game, const std::vector<ShapleyResult>& results,
                         double tolerance = 1e-10);

}  // namespace shaplit

#endif
