#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expandlab/finite_set.hpp"

namespace expandlab {

/// A x A split by lines through the origin: lines[λ] = A_λ = {x : (x, λx) ∈ A x A}.
struct SlopeDecomposition {
  std::vector<std::pair<Rational, FiniteSet>> lines;  ///< sorted by λ
  std::uint64_t total_mass = 0;
  std::size_t set_size = 0;

  const FiniteSet* find(const Rational& lambda) const;
};

/// Requires strictly positive A.
SlopeDecomposition decompose(const FiniteSet& a);

struct DyadicSelection {
  Rational base;        ///< |A|^2 / (2|A/A|)
  int bucket = 1;       ///< winning j
  int bucket_count = 1;
  Rational tau;         ///< 2^{j-1} base
  std::vector<Rational> S_tau;
  std::uint64_t mass = 0;
};

/// Picks the bucket [2^{j-1} base, 2^j base), j = 1..max(1, ceil(log2|A|)),
/// of largest mass (ties to the smallest j). The top bucket is closed upward
/// so every line with |A_λ| >= base belongs to some bucket.
DyadicSelection dyadic_select(const SlopeDecomposition& dec);

/// Largest m >= 0 with 30 e C n m^8 <= tau^2, decided exactly.
std::int64_t choose_M(const Rational& tau, std::int64_t n, const Rational& c);

struct LLLParams {
  std::int64_t n = 1;
  std::int64_t d = 0;
  Rational p;
};

/// e p (d+1) <= 1, decided with rigorous rational bounds on e.
bool lll_feasible(const LLLParams& params);

/// |{(x,y) ∈ A x A : r((a_i, λ_i a_i) + (α_j x, λ_j α_j x)) = r((a_k, λ_k a_k) + (α_l y, λ_l α_l y))}|
/// with r(p) = y/x. A must be positive and a_i ∈ A_{λ_i}, a_k ∈ A_{λ_k},
/// α_j ∈ A_{λ_j}, α_l ∈ A_{λ_l}.
std::uint64_t incidence_count(const FiniteSet& a, const Rational& lambda_i, const Rational& lambda_j,
                              const Rational& lambda_k, const Rational& lambda_l, const Rational& a_i,
                              const Rational& a_k, const Rational& alpha_j, const Rational& alpha_l);

struct RichPairs {
  std::uint64_t count = 0;
  Rational ps_bound;  ///< |A|^4/K^3 + |A|^2/K
};

/// Pairs (a, b) ∈ A_{λ_i} x A_{λ_k} with incidence_count >= K, K >= 2.
RichPairs rich_pair_count(const FiniteSet& a, const Rational& lambda_i, const Rational& lambda_j,
                          const Rational& lambda_k, const Rational& lambda_l, const Rational& alpha_j,
                          const Rational& alpha_l, std::int64_t k);

struct ClusterOptions {
  /// Overrides the formula for M; must satisfy 2 <= M <= |S_tau|/2.
  std::optional<std::int64_t> forced_M;
  bool all_clusters = false;
  /// Also compute |(AA+A)/(AA+A)| under the budget.
  bool compute_target = false;
};

struct ClusterStats {
  int t = 1;
  std::vector<Rational> T;
  std::vector<Rational> U;
  /// reps[i][j] = a_{ij} ∈ A_{T[i]}, drawn uniformly.
  std::vector<std::vector<Rational>> reps;
  std::uint64_t E_max = 0;
  /// Sum over ordered (i,j) != (k,l); identical to the {i,j} != {k,l}
  /// sum because i, k index T and j, l index U.
  std::uint64_t E_sum = 0;
  std::uint64_t E_sum_unordered = 0;
  std::uint64_t r_Q = 0;         ///< exact |r(Q)|
  std::int64_t incex_bound = 0;  ///< M^2|A| - E_sum
  bool witnessed = false;        ///< E_max <= B
};

struct ClusterTrace {
  std::size_t set_size = 0;
  Rational C;
  std::uint64_t seed = 0;
  std::size_t line_count = 0;
  std::uint64_t total_mass = 0;
  DyadicSelection selection;
  bool tau_bound_holds = false;  ///< tau >= C |A|^{7/8}
  std::uint64_t basic_bound = 0;
  std::int64_t M_formula = 0;
  std::int64_t M = 0;
  bool M_forced = false;
  bool degraded = false;
  std::string degraded_reason;
  std::vector<Rational> alpha;  ///< α_i = min A_{λ_i}, one per λ in S_tau
  bool chain_ordered = false;
  std::optional<Rational> B;
  std::optional<LLLParams> lll;
  std::optional<bool> lll_is_feasible;
  std::size_t cluster_count = 0;
  std::vector<ClusterStats> clusters;
  Rational cluster_bound;
  Rational final_bound;
  std::optional<std::size_t> target;
};

/// The full slope-cluster pipeline on a positive set with |A| >= 2.
ClusterTrace cluster_trace(const FiniteSet& a, const Rational& c, std::uint64_t seed, const Budget& budget = {},
                           const ClusterOptions& options = {});

/// For consecutive λ_i < λ_{i+1} of `lambdas` with representatives `alpha`,
/// the slopes of (α_i, λ_i α_i) + (α_{i+1} x, λ_{i+1} α_{i+1} x) increase
/// strictly in x ∈ A and lie strictly between λ_i and λ_{i+1}.
bool ordered_slope_chain(const FiniteSet& a, const std::vector<Rational>& lambdas,
                         const std::vector<Rational>& alpha);

}  // namespace expandlab
