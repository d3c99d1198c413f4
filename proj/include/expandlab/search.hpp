#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expandlab/expr.hpp"
#include "expandlab/finite_set.hpp"

namespace expandlab {

enum class FamilyKind { AP, GP, RandomInt, RandomRat };

struct FamilySpec {
  FamilyKind kind = FamilyKind::AP;
  Rational start = 1;
  Rational step = 1;  ///< common difference (AP) or ratio (GP)
  std::int64_t n = 1;
  std::int64_t lo = 1;  ///< random kinds: integer or numerator range
  std::int64_t hi = 1;
  std::int64_t den_max = 1;  ///< RandomRat denominators are drawn from 1..den_max
  std::uint64_t seed = 0;
};

/// ap:start:step:n, gp:start:ratio:n, rand:n:lo:hi:seed, rat:n:lo:hi:den_max:seed
FamilySpec parse_family(std::string_view text);
std::string to_string(const FamilySpec& spec);

FiniteSet generate(const FamilySpec& spec);

enum class SearchMethod { Exhaustive, Local };
std::string_view to_string(SearchMethod m);

struct RestartLog {
  std::uint64_t start_objective = 0;
  std::uint64_t final_objective = 0;
  /// Objective after each accepted move, in order.
  std::vector<std::uint64_t> accepted;
};

struct SearchResult {
  FiniteSet best_set;
  std::uint64_t objective = 0;
  std::uint64_t evaluations = 0;
  SearchMethod method = SearchMethod::Exhaustive;
  std::optional<std::uint64_t> seed;
  int best_restart = 0;
  std::vector<RestartLog> restarts;
};

/// Minimum of |expr(A)| over all m-subsets A of the universe (variable "A");
/// ties go to the lexicographically smallest subset. |universe| <= 24.
SearchResult exhaustive_min(const SetExpr& expr, std::int64_t m, const FiniteSet& universe,
                            const Budget& budget = {});

/// Strict-descent hill climbing over m-subsets of the integers lo..hi.
/// Restart r uses its own generator seeded from (seed, r); the best restart
/// wins, ties to the lowest index.
SearchResult local_search_min(const SetExpr& expr, std::int64_t m, std::int64_t lo, std::int64_t hi,
                              std::int64_t iters, std::int64_t restarts, std::uint64_t seed,
                              const Budget& budget = {});

}  // namespace expandlab
