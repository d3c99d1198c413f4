#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expandlab/finite_set.hpp"

namespace expandlab {

/// Named expander constructions. FiveVar is the only one with a shared
/// variable ({(ab+c)/(ad+e)}, same a above and below); the rest use
/// independent variables throughout.
enum class ExpanderName {
  DDD,                ///< (A-A)(A-A)(A-A)
  RatioSumPlusRatio,  ///< (A+A)/(A+A) + A/A
  AASumRatio,         ///< (AA+AA)/(A+A)
  AAARatio,           ///< (AA+A)/(AA+A)
  FiveVar,            ///< {(ab+c)/(ad+e) : a,b,c,d,e in A}
  RTriple,            ///< R[A]
};

inline constexpr std::array<ExpanderName, 6> kAllExpanders = {
    ExpanderName::DDD,     ExpanderName::RatioSumPlusRatio, ExpanderName::AASumRatio,
    ExpanderName::AAARatio, ExpanderName::FiveVar,          ExpanderName::RTriple};

/// Stable CLI identifiers: ddd, ratio-sum, aa-sum-ratio, aaa-ratio, five-var, r-triple.
std::string_view expander_id(ExpanderName name);
std::optional<ExpanderName> expander_from_id(std::string_view id);

FiniteSet named_expander(ExpanderName name, const FiniteSet& a, const Budget& budget = {});

/// R[A] - 1 == -R[A], checked extensionally.
bool shkredov_check(const FiniteSet& a, const Budget& budget = {});

struct ShiftPair {
  Rational a;
  Rational b;
  std::size_t cardinality = 0;
};

/// argmax over (a, b) in A x A of |(A-a)(A-b)|, ties to the smallest (a, b).
ShiftPair best_shift_pair(const FiniteSet& a, const Budget& budget = {});

enum class GrowthKind { Theorem2Chain, KFoldDifference };

std::string_view to_string(GrowthKind kind);

struct GrowthStep {
  int index = 0;
  std::size_t cardinality = 0;
  /// log2 |X| / log2 |A|; absent when |A| < 2.
  std::optional<double> exponent;
  // Chain-only bookkeeping: both candidate sizes and which one was kept.
  std::optional<std::size_t> times_r;
  std::optional<std::size_t> times_r_minus_one;
  std::string choice;
  bool tie = false;
};

struct GrowthChain {
  GrowthKind kind = GrowthKind::KFoldDifference;
  std::vector<GrowthStep> steps;
  bool truncated = false;
  std::string truncation_reason;
};

/// X_0 = D/D, X_i = the larger of X_{i-1} R and X_{i-1} (R-1), R = R[A].
/// Ties go to X_{i-1} R and are flagged. Budget exhaustion truncates.
GrowthChain theorem2_chain(const FiniteSet& a, int k_max, const Budget& budget = {});

/// |(A-A)^(k)| for k = 1..k_max, truncating on budget exhaustion.
GrowthChain kfold_difference_growth(const FiniteSet& a, int k_max, const Budget& budget = {});

struct Theorem1Trace {
  std::size_t dd = 0;
  std::size_t ddd = 0;
  std::size_t dd_over_dd = 0;
  std::size_t r = 0;
  std::size_t r_times_r = 0;
  std::size_t r_times_r_minus_one = 0;
  bool reflection_equal = false;    ///< |R R| == |R (R-1)|
  bool rr_inside_dd_over_dd = false;  ///< R R is a subset of DD/DD
};

Theorem1Trace theorem1_trace(const FiniteSet& a, const Budget& budget = {});

}  // namespace expandlab
