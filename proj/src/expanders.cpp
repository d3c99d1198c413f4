#include "expandlab/expanders.hpp"

#include <cmath>

#include "expandlab/detail/collect.hpp"
#include "expandlab/error.hpp"

namespace expandlab {
namespace {

FiniteSet five_variable_set(const FiniteSet& a, const Budget& budget) {
  std::span<const Rational> e = a.elements();
  auto out = detail::collect_distinct(
      e.size(),
      [&](std::size_t row, std::vector<Rational>& buf) {
        const Rational& x = e[row];
        std::vector<Rational> tops;
        std::vector<Rational> bottoms;
        for (const auto& b : e) {
          Rational xb = x * b;
          for (const auto& c : e) {
            tops.push_back(xb + c);
            Rational bottom = xb + c;
            if (!bottom.is_zero()) bottoms.push_back(std::move(bottom));
          }
        }
        detail::sort_unique(tops);
        detail::sort_unique(bottoms);
        for (const auto& top : tops) {
          for (const auto& bottom : bottoms) buf.push_back(top / bottom);
        }
      },
      budget, e.size() * e.size() * e.size() * e.size());
  if (out.empty()) throw Error(ErrorKind::EmptyDenominator, "every ad+e is zero");
  return FiniteSet::from_sorted_unique(std::move(out));
}

std::optional<double> exponent_of(std::size_t size, std::size_t base) {
  if (base < 2 || size == 0) return std::nullopt;
  return std::log2(static_cast<double>(size)) / std::log2(static_cast<double>(base));
}

}  // namespace

std::string_view expander_id(ExpanderName name) {
  switch (name) {
    case ExpanderName::DDD: return "ddd";
    case ExpanderName::RatioSumPlusRatio: return "ratio-sum";
    case ExpanderName::AASumRatio: return "aa-sum-ratio";
    case ExpanderName::AAARatio: return "aaa-ratio";
    case ExpanderName::FiveVar: return "five-var";
    case ExpanderName::RTriple: return "r-triple";
  }
  return "unknown";
}

std::optional<ExpanderName> expander_from_id(std::string_view id) {
  for (auto name : kAllExpanders) {
    if (expander_id(name) == id) return name;
  }
  return std::nullopt;
}

FiniteSet named_expander(ExpanderName name, const FiniteSet& a, const Budget& budget) {
  if (a.empty()) throw Error(ErrorKind::PreconditionViolation, "expanders need a nonempty set");
  switch (name) {
    case ExpanderName::DDD: {
      FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
      return kfold(SetOp::Mul, d, 3, budget);
    }
    case ExpanderName::RatioSumPlusRatio: {
      FiniteSet s = pairwise(SetOp::Add, a, a, budget);
      FiniteSet q = pairwise(SetOp::Div, s, s, budget);
      return pairwise(SetOp::Add, q, pairwise(SetOp::Div, a, a, budget), budget);
    }
    case ExpanderName::AASumRatio: {
      FiniteSet aa = pairwise(SetOp::Mul, a, a, budget);
      FiniteSet top = pairwise(SetOp::Add, aa, aa, budget);
      return pairwise(SetOp::Div, top, pairwise(SetOp::Add, a, a, budget), budget);
    }
    case ExpanderName::AAARatio: {
      FiniteSet top = pairwise(SetOp::Add, pairwise(SetOp::Mul, a, a, budget), a, budget);
      return pairwise(SetOp::Div, top, top, budget);
    }
    case ExpanderName::FiveVar:
      return five_variable_set(a, budget);
    case ExpanderName::RTriple:
      return triple_ratio_set(a, budget);
  }
  throw Error(ErrorKind::PreconditionViolation, "unknown expander");
}

bool shkredov_check(const FiniteSet& a, const Budget& budget) {
  if (a.size() < 2) throw Error(ErrorKind::TooSmall, "Shkredov check needs |A| >= 2");
  FiniteSet r = triple_ratio_set(a, budget);
  return affine(r, 1, -1) == affine(r, -1, 0);
}

ShiftPair best_shift_pair(const FiniteSet& a, const Budget& budget) {
  if (a.size() < 2) throw Error(ErrorKind::TooSmall, "shift pair search needs |A| >= 2");
  ShiftPair best;
  bool have = false;
  // A - a for every a, computed once.
  std::vector<FiniteSet> shifted;
  shifted.reserve(a.size());
  for (const auto& x : a) shifted.push_back(affine(a, 1, -x));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      std::size_t size = pairwise(SetOp::Mul, shifted[i], shifted[j], budget).size();
      if (!have || size > best.cardinality) {
        best = {a[i], a[j], size};
        have = true;
      }
    }
  }
  return best;
}

std::string_view to_string(GrowthKind kind) {
  return kind == GrowthKind::Theorem2Chain ? "theorem2_chain" : "kfold_difference";
}

GrowthChain theorem2_chain(const FiniteSet& a, int k_max, const Budget& budget) {
  if (a.size() < 2) throw Error(ErrorKind::TooSmall, "the chain needs |A| >= 2");
  if (k_max < 0) throw Error(ErrorKind::PreconditionViolation, "k_max must be >= 0");
  GrowthChain chain;
  chain.kind = GrowthKind::Theorem2Chain;

  FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
  FiniteSet x = pairwise(SetOp::Div, d, d, budget);
  GrowthStep base;
  base.index = 0;
  base.cardinality = x.size();
  base.exponent = exponent_of(x.size(), a.size());
  base.choice = "D/D";
  chain.steps.push_back(base);
  if (k_max == 0) return chain;

  FiniteSet r = triple_ratio_set(a, budget);
  FiniteSet r_minus_one = affine(r, 1, -1);
  for (int i = 1; i <= k_max; ++i) {
    try {
      FiniteSet via_r = pairwise(SetOp::Mul, x, r, budget);
      FiniteSet via_r1 = pairwise(SetOp::Mul, x, r_minus_one, budget);
      GrowthStep step;
      step.index = i;
      step.times_r = via_r.size();
      step.times_r_minus_one = via_r1.size();
      step.tie = via_r.size() == via_r1.size();
      if (via_r.size() >= via_r1.size()) {
        step.choice = "R";
        x = std::move(via_r);
      } else {
        step.choice = "R-1";
        x = std::move(via_r1);
      }
      step.cardinality = x.size();
      step.exponent = exponent_of(x.size(), a.size());
      chain.steps.push_back(std::move(step));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      chain.truncated = true;
      chain.truncation_reason = "step " + std::to_string(i) + ": " + e.what();
      break;
    }
  }
  return chain;
}

GrowthChain kfold_difference_growth(const FiniteSet& a, int k_max, const Budget& budget) {
  if (a.empty()) throw Error(ErrorKind::PreconditionViolation, "growth needs a nonempty set");
  if (k_max < 1) throw Error(ErrorKind::PreconditionViolation, "k_max must be >= 1");
  GrowthChain chain;
  chain.kind = GrowthKind::KFoldDifference;
  FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
  FiniteSet power = d;
  for (int k = 1; k <= k_max; ++k) {
    try {
      if (k > 1) power = pairwise(SetOp::Mul, power, d, budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      chain.truncated = true;
      chain.truncation_reason = "k=" + std::to_string(k) + ": " + e.what();
      break;
    }
    GrowthStep step;
    step.index = k;
    step.cardinality = power.size();
    step.exponent = exponent_of(power.size(), a.size());
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

Theorem1Trace theorem1_trace(const FiniteSet& a, const Budget& budget) {
  if (a.size() < 2) throw Error(ErrorKind::TooSmall, "trace needs |A| >= 2");
  Theorem1Trace t;
  FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
  FiniteSet dd = pairwise(SetOp::Mul, d, d, budget);
  t.dd = dd.size();
  t.ddd = pairwise(SetOp::Mul, dd, d, budget).size();
  FiniteSet dd_over_dd = pairwise(SetOp::Div, dd, dd, budget);
  t.dd_over_dd = dd_over_dd.size();
  FiniteSet r = triple_ratio_set(a, budget);
  t.r = r.size();
  FiniteSet rr = pairwise(SetOp::Mul, r, r, budget);
  t.r_times_r = rr.size();
  t.r_times_r_minus_one = pairwise(SetOp::Mul, r, affine(r, 1, -1), budget).size();
  t.reflection_equal = t.r_times_r == t.r_times_r_minus_one;
  t.rr_inside_dd_over_dd = is_subset(rr, dd_over_dd);
  return t;
}

}  // namespace expandlab
