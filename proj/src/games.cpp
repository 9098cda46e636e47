#include "shaplit/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "shaplit/errors.hpp"
#include "shaplit/parallel.hpp"

namespace shaplit {

std::uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(a - b + i);
    // r * num / i is integral at every step; guard the multiply.
    if (r > UINT64_MAX / num) throw std::overflow_error("binomial: 64-bit overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

double shapley_weight(int n, int c) {
  if (n < 1) throw std::invalid_argument("shapley_weight: n must be >= 1");
  if (c < 0 || c > n - 1)
    throw std::invalid_argument("shapley_weight: need 0 <= c <= n-1, got c=" + std::to_string(c) +
                                " n=" + std::to_string(n));
  return 1.0 / (static_cast<double>(n) * static_cast<double>(binomial(n - 1, c)));
}

namespace {

void require_exact_budget(int n) {
  if (n < 1) throw std::invalid_argument("exact_shapley: n must be >= 1");
  if (n > kMaxExactPlayers)
    throw CapacityError("exact_shapley: n = " + std::to_string(n) + " exceeds the 2^(n-1) " +
                        "enumeration budget (n <= " + std::to_string(kMaxExactPlayers) +
                        "); partition features and use the explain path instead");
}

ShapleyResult assemble_result(int n, int j, const std::function<double(const Coalition&)>& value_of,
                              int workers) {
  const std::uint32_t subsets = std::uint32_t{1} << (n - 1);
  ShapleyResult result;
  result.feature = j;
  result.contributions.resize(subsets);
  constexpr std::uint32_t kChunk = 1024;
  const std::size_t tasks = (subsets + kChunk - 1) / kChunk;
  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::uint32_t begin = static_cast<std::uint32_t>(task) * kChunk;
    const std::uint32_t end = std::min(begin + kChunk, subsets);
    for (std::uint32_t packed = begin; packed < end; ++packed) {
      const Coalition c = subset_excluding(packed, n, j);
      Contribution& entry = result.contributions[packed];
      entry.coalition = c;
      entry.weight = shapley_weight(n, c.count());
      entry.marginal = value_of(c.with(j)) - value_of(c);
    }
  });
  double phi = 0.0;
  for (const Contribution& entry : result.contributions) phi += entry.weight * entry.marginal;
  result.phi = phi;
  return result;
}

}  // namespace

ShapleyResult exact_shapley(const CooperativeGame& game, int j, int workers) {
  require_exact_budget(game.n);
  if (j < 0 || j >= game.n) throw std::invalid_argument("exact_shapley: feature index out of range");
  return assemble_result(game.n, j, game.value, workers);
}

std::vector<ShapleyResult> exact_shapley_all(const CooperativeGame& game, int workers) {
  require_exact_budget(game.n);
  const int n = game.n;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> table(total);
  constexpr std::uint64_t kChunk = 2048;
  const std::size_t tasks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::uint64_t begin = static_cast<std::uint64_t>(task) * kChunk;
    const std::uint64_t end = std::min(begin + kChunk, total);
    for (std::uint64_t bits = begin; bits < end; ++bits)
      table[bits] = game.value(Coalition(static_cast<std::uint32_t>(bits), n));
  });
  auto cached = [&table](const Coalition& c) { return table[c.bits]; };
  std::vector<ShapleyResult> results;
  results.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) results.push_back(assemble_result(n, j, cached, workers));
  return results;
}

double permutation_shapley(const CooperativeGame& game, int j) {
  const int n = game.n;
  if (n < 1) throw std::invalid_argument("permutation_shapley: n must be >= 1");
  if (n > kMaxPermutationPlayers)
    throw CapacityError("permutation_shapley: n = " + std::to_string(n) +
                        " exceeds the n! ordering budget (n <= " +
                        std::to_string(kMaxPermutationPlayers) + ")");
  if (j < 0 || j >= n) throw std::invalid_argument("permutation_shapley: feature index out of range");

  std::vector<double> table(std::size_t{1} << n);
  for (std::uint32_t bits = 0; bits < table.size(); ++bits)
    table[bits] = game.value(Coalition(bits, n));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  double sum = 0.0;
  std::uint64_t count = 0;
  do {
    std::uint32_t prefix = 0;
    for (int player : order) {
      if (player == j) break;
      prefix |= std::uint32_t{1} << player;
    }
    sum += table[prefix | (std::uint32_t{1} << j)] - table[prefix];
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / static_cast<double>(count);
}

AxiomReport check_axioms(const CooperativeGame& game, const std::vector<ShapleyResult>& results,
                         double tolerance) {
  const int n = game.n;
  if (n < 1 || n > 20)
    throw CapacityError("check_axioms: axiom detection supports 1 <= n <= 20");
  if (static_cast<int>(results.size()) != n)
    throw std::invalid_argument("check_axioms: expected one ShapleyResult per player");

  std::vector<double> table(std::size_t{1} << n);
  for (std::uint32_t bits = 0; bits < table.size(); ++bits)
    table[bits] = game.value(Coalition(bits, n));

  AxiomReport report;
  report.tolerance = tolerance;
  report.value_empty = table.front();
  report.value_grand = table.back();

  double phi_sum = 0.0;
  for (const ShapleyResult& r : results) phi_sum += r.phi;
  report.additivity_residual = phi_sum - (report.value_grand - report.value_empty);
  report.additivity_pass = std::abs(report.additivity_residual) <= tolerance;

  // Null players: v(C u {j}) = v(C) for every C avoiding j.
  for (int j = 0; j < n; ++j) {
    bool is_null = true;
    for (std::uint32_t packed = 0; packed < (std::uint32_t{1} << (n - 1)) && is_null; ++packed) {
      const Coalition c = subset_excluding(packed, n, j);
      if (std::abs(table[c.with(j).bits] - table[c.bits]) > tolerance) is_null = false;
    }
    if (is_null) {
      report.null_players.push_back(j);
      const double residual = std::abs(results[static_cast<std::size_t>(j)].phi);
      report.null_residuals.push_back(residual);
      if (residual > tolerance) report.nullity_pass = false;
    }
  }

  // Symmetric pairs: v(C u {j}) = v(C u {k}) for every C avoiding both.
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      bool symmetric = true;
      const std::uint32_t pair_mask = (std::uint32_t{1} << j) | (std::uint32_t{1} << k);
      for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n) && symmetric; ++bits) {
        if (bits & pair_mask) continue;
        if (std::abs(table[bits | (std::uint32_t{1} << j)] - table[bits | (std::uint32_t{1} << k)]) >
            tolerance)
          symmetric = false;
      }
      if (symmetric) {
        report.symmetric_pairs.emplace_back(j, k);
        const double residual = std::abs(results[static_cast<std::size_t>(j)].phi -
                                         results[static_cast<std::size_t>(k)].phi);
        report.symmetry_residuals.push_back(residual);
        if (residual > tolerance) report.symmetry_pass = false;
      }
    }
  }
  return report;
}

}  // namespace shaplit
