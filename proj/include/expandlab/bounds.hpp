#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expandlab/expr.hpp"
#include "expandlab/finite_set.hpp"

namespace expandlab {

enum class BoundId {
  // Exact inequalities, constant 1.
  Ungar,          ///< |(A-A)/(A-A)| >= |A|^2 - 2
  RatioSum,       ///< |(A+A)/(A+A)| >= 2|A|^2 - 1, A positive
  RuzsaTriangle,  ///< |A-B||C| <= |A-C||B-C|
  Plunnecke,      ///< |kA-lA| <= |A+A|^{k+l} / |A|^{k+l-1}
  // Asymptotic statements, reported as lhs / rhs with implied constant 1.
  Mink,         ///< |(A-A)(A-A)| vs |A|^2/log|A|
  Mink2,        ///< max_{a,b} |(A-a)(A-b)| vs |A|^2/log|A|
  Jones,        ///< |R[A]| vs |A|^2/log|A|
  Thm1,         ///< |(A-A)(A-A)(A-A)| vs |A|^{17/8}/log^{17/16}|A|
  Thm2,         ///< |(A+A)/(A+A)+A/A| vs |A|^{36/17}/log^{16/17}|A|
  Thm3,         ///< |(AA+AA)/(A+A)| vs |A|^{11/8}|AA|^{3/4}/log|A|
  Thm4,         ///< |(AA+A)/(AA+A)| vs |A|^{17/8}/log|A|
  FiveVar,      ///< |{(ab+c)/(ad+e)}| vs |A|^{17/8}/log|A|
  GaraevShen,   ///< |XY||(X+a)Z| vs |X|^{3/2}|Y|^{1/2}|Z|^{1/2}
  GS1,          ///< |X(X+a)| vs |X|^{5/4}
  GS2,          ///< max(|XY|, |(X+a)Y|) vs |X|^{3/4}|Y|^{1/2}
  ENR,          ///< |f(X)+Y||X+Z| vs |X|^{3/2}|Y|^{1/2}|Z|^{1/2}
  Lund,         ///< |(A+A)/(A+A)| vs |A|^2/log|A| (|A|^2/|A/A|)^{1/8}
  Lund2,        ///< |(A+A)/(B+B)| vs |A||B|/(log|A|+log|B|) (|A||B|/|A/B|)^{1/8}
  Jorn,         ///< |A(A+a)| vs |A|^{24/19}/log^{2/19}|A|
};

inline constexpr BoundId kExactBounds[] = {BoundId::Ungar, BoundId::RatioSum, BoundId::RuzsaTriangle,
                                           BoundId::Plunnecke};
inline constexpr BoundId kAsymptoticBounds[] = {
    BoundId::Mink, BoundId::Mink2, BoundId::Jones, BoundId::Thm1,       BoundId::Thm2,
    BoundId::Thm3, BoundId::Thm4,  BoundId::FiveVar, BoundId::GaraevShen, BoundId::GS1,
    BoundId::GS2,  BoundId::ENR,   BoundId::Lund,  BoundId::Lund2,      BoundId::Jorn};

std::string_view bound_name(BoundId id);
std::optional<BoundId> bound_from_name(std::string_view name);
bool is_exact(BoundId id);

enum class Verdict { Pass, Fail, RatioOnly };
std::string_view to_string(Verdict v);

enum class ConvexPreset { Reciprocal, Square };
std::string_view to_string(ConvexPreset f);

struct BoundParams {
  int k = 2;            ///< Plunnecke
  int l = 1;            ///< Plunnecke
  Rational alpha = 1;   ///< shift for GaraevShen, GS1, GS2, Jorn
  ConvexPreset f = ConvexPreset::Reciprocal;  ///< ENR
};

struct BoundReport {
  std::string bound_id;
  std::uint64_t lhs_cardinality = 0;
  /// Exact bounds carry an exact rhs; asymptotic ones a real formula value.
  std::variant<Rational, double> rhs_value;
  double ratio = 0;
  Verdict verdict = Verdict::RatioOnly;
  std::string inputs_digest;

  std::string rhs_text() const;
  double rhs_double() const;
};

using NamedSets = Environment;

/// Exact inequalities. PASS iff the inequality holds with constant 1.
BoundReport check_exact(BoundId id, const NamedSets& sets, const BoundParams& params = {},
                        const Budget& budget = {});

/// Asymptotic statements: verdict RATIO_ONLY, ratio = lhs / rhs(constant 1),
/// log base 2. Every input set needs at least 4 elements.
BoundReport report_asymptotic(BoundId id, const NamedSets& sets, const BoundParams& params = {},
                              const Budget& budget = {});

enum class CombineMode { Additive, Multiplicative };

struct KatzShenWitness {
  FiniteSet subset;
  std::uint64_t lhs = 0;  ///< |X' + B_1 + ... + B_k| (or the product analog)
  Rational rhs;           ///< prod |X + B_i| / |X|^{k-1}
};

/// Exhaustive search over subsets X' of X with |X'| >= ceil(|X|/2) for the
/// minimal |X' + B_1 + ... + B_k|; ties go to the lexicographically smallest
/// subset. |X| <= 16.
KatzShenWitness katz_shen_witness(const FiniteSet& x, const std::vector<FiniteSet>& b_list, CombineMode mode,
                                  const Budget& budget = {});

/// "A:n=3[1..3]" style description of the named sets.
std::string digest(const NamedSets& sets);

}  // namespace expandlab
