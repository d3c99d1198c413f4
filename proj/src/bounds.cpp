#include "expandlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "expandlab/error.hpp"
#include "expandlab/expanders.hpp"

namespace expandlab {
namespace {

struct BoundInfo {
  BoundId id;
  std::string_view name;
};

constexpr BoundInfo kBoundInfo[] = {
    {BoundId::Ungar, "UNGAR"},
    {BoundId::RatioSum, "RATIO_SUM"},
    {BoundId::RuzsaTriangle, "RUZSA_TRIANGLE"},
    {BoundId::Plunnecke, "PLUNNECKE"},
    {BoundId::Mink, "MINK"},
    {BoundId::Mink2, "MINK2"},
    {BoundId::Jones, "JONES"},
    {BoundId::Thm1, "THM1"},
    {BoundId::Thm2, "THM2"},
    {BoundId::Thm3, "THM3"},
    {BoundId::Thm4, "THM4"},
    {BoundId::FiveVar, "FIVE_VAR"},
    {BoundId::GaraevShen, "GARAEV_SHEN"},
    {BoundId::GS1, "GS1"},
    {BoundId::GS2, "GS2"},
    {BoundId::ENR, "ENR"},
    {BoundId::Lund, "LUND"},
    {BoundId::Lund2, "LUND2"},
    {BoundId::Jorn, "JORN"},
};

const FiniteSet& require(const NamedSets& sets, const char* name) {
  auto it = sets.find(name);
  if (it == sets.end()) {
    throw Error(ErrorKind::MissingInput, std::string("set '") + name + "' is required");
  }
  return it->second;
}

NamedSets pick(const NamedSets& sets, std::initializer_list<const char*> names) {
  NamedSets out;
  for (const char* n : names) out.emplace(n, require(sets, n));
  return out;
}

double lg(std::size_t n) { return std::log2(static_cast<double>(n)); }
double pw(double base, double exponent) { return std::pow(base, exponent); }
double sz(std::size_t n) { return static_cast<double>(n); }

BoundReport finish_exact(BoundId id, std::uint64_t lhs, const Rational& rhs, bool lower_bound,
                         const NamedSets& used) {
  BoundReport r;
  r.bound_id = std::string(bound_name(id));
  r.lhs_cardinality = lhs;
  r.rhs_value = rhs;
  r.ratio = static_cast<double>(lhs) / rhs.to_double();
  Rational l(static_cast<std::int64_t>(lhs));
  bool holds = lower_bound ? l >= rhs : l <= rhs;
  r.verdict = holds ? Verdict::Pass : Verdict::Fail;
  r.inputs_digest = digest(used);
  return r;
}

BoundReport finish_ratio(BoundId id, std::uint64_t lhs, double rhs, const NamedSets& used) {
  BoundReport r;
  r.bound_id = std::string(bound_name(id));
  r.lhs_cardinality = lhs;
  r.rhs_value = rhs;
  r.ratio = static_cast<double>(lhs) / rhs;
  r.verdict = Verdict::RatioOnly;
  r.inputs_digest = digest(used);
  return r;
}

void require_size(const NamedSets& used, std::size_t minimum) {
  for (const auto& [name, s] : used) {
    if (s.size() < minimum) {
      throw Error(ErrorKind::TooSmall, "set '" + name + "' has " + std::to_string(s.size()) +
                                           " elements, need at least " + std::to_string(minimum));
    }
  }
}

FiniteSet shifted(const FiniteSet& s, const Rational& alpha) {
  if (alpha.is_zero()) throw Error(ErrorKind::PreconditionViolation, "shift alpha must be nonzero");
  return affine(s, 1, alpha);
}

FiniteSet apply_preset(ConvexPreset f, const FiniteSet& x) {
  std::vector<Rational> out;
  out.reserve(x.size());
  if (f == ConvexPreset::Reciprocal) {
    if (!x.all_positive()) {
      throw Error(ErrorKind::PositivityViolation, "reciprocal preset needs strictly positive X");
    }
    for (const auto& v : x) out.push_back(Rational(1) / v);
  } else {
    for (const auto& v : x) out.push_back(v * v);
  }
  return FiniteSet::from_values(std::move(out));
}

}  // namespace

std::string_view bound_name(BoundId id) {
  for (const auto& info : kBoundInfo) {
    if (info.id == id) return info.name;
  }
  return "UNKNOWN";
}

std::optional<BoundId> bound_from_name(std::string_view name) {
  for (const auto& info : kBoundInfo) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

bool is_exact(BoundId id) {
  return std::find(std::begin(kExactBounds), std::end(kExactBounds), id) != std::end(kExactBounds);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::RatioOnly: return "RATIO_ONLY";
  }
  return "UNKNOWN";
}

std::string_view to_string(ConvexPreset f) { return f == ConvexPreset::Reciprocal ? "reciprocal" : "square"; }

std::string BoundReport::rhs_text() const {
  if (const auto* q = std::get_if<Rational>(&rhs_value)) return q->to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(rhs_value));
  return buf;
}

double BoundReport::rhs_double() const {
  if (const auto* q = std::get_if<Rational>(&rhs_value)) return q->to_double();
  return std::get<double>(rhs_value);
}

std::string digest(const NamedSets& sets) {
  std::string out;
  for (const auto& [name, s] : sets) {
    if (!out.empty()) out += ";";
    out += name + ":n=" + std::to_string(s.size());
    if (!s.empty()) out += "[" + s[0].to_string() + ".." + s[s.size() - 1].to_string() + "]";
  }
  return out;
}

BoundReport check_exact(BoundId id, const NamedSets& sets, const BoundParams& params, const Budget& budget) {
  switch (id) {
    case BoundId::Ungar: {
      auto used = pick(sets, {"A"});
      const FiniteSet& a = used.at("A");
      require_size(used, 2);
      FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
      std::uint64_t lhs = pairwise(SetOp::Div, d, d, budget).size();
      Rational n(static_cast<std::int64_t>(a.size()));
      return finish_exact(id, lhs, n * n - 2, true, used);
    }
    case BoundId::RatioSum: {
      auto used = pick(sets, {"A"});
      const FiniteSet& a = used.at("A");
      require_size(used, 1);
      if (!a.all_positive()) {
        throw Error(ErrorKind::PositivityViolation, "RATIO_SUM needs strictly positive elements");
      }
      FiniteSet s = pairwise(SetOp::Add, a, a, budget);
      std::uint64_t lhs = pairwise(SetOp::Div, s, s, budget).size();
      Rational n(static_cast<std::int64_t>(a.size()));
      return finish_exact(id, lhs, 2 * n * n - 1, true, used);
    }
    case BoundId::RuzsaTriangle: {
      auto used = pick(sets, {"A", "B", "C"});
      require_size(used, 1);
      const FiniteSet& a = used.at("A");
      const FiniteSet& b = used.at("B");
      const FiniteSet& c = used.at("C");
      std::uint64_t lhs = pairwise(SetOp::Sub, a, b, budget).size() * c.size();
      std::uint64_t rhs = pairwise(SetOp::Sub, a, c, budget).size() * pairwise(SetOp::Sub, b, c, budget).size();
      return finish_exact(id, lhs, Rational(static_cast<std::int64_t>(rhs)), false, used);
    }
    case BoundId::Plunnecke: {
      if (params.k < 0 || params.l < 0 || params.k + params.l < 1) {
        throw Error(ErrorKind::PreconditionViolation, "PLUNNECKE needs k, l >= 0 and k + l >= 1");
      }
      auto used = pick(sets, {"A"});
      require_size(used, 1);
      const FiniteSet& a = used.at("A");
      auto fold = [&](int times) { return times == 0 ? FiniteSet{0} : kfold(SetOp::Add, a, times, budget); };
      std::uint64_t lhs = pairwise(SetOp::Sub, fold(params.k), fold(params.l), budget).size();
      Rational doubling(static_cast<std::int64_t>(pairwise(SetOp::Add, a, a, budget).size()));
      Rational n(static_cast<std::int64_t>(a.size()));
      auto m = static_cast<unsigned>(params.k + params.l);
      Rational rhs = pow(doubling, m) / pow(n, m - 1);
      BoundReport r = finish_exact(id, lhs, rhs, false, used);
      r.inputs_digest += ";k=" + std::to_string(params.k) + ";l=" + std::to_string(params.l);
      return r;
    }
    default:
      throw Error(ErrorKind::PreconditionViolation,
                  std::string(bound_name(id)) + " is asymptotic; use report_asymptotic");
  }
}

BoundReport report_asymptotic(BoundId id, const NamedSets& sets, const BoundParams& params,
                              const Budget& budget) {
  if (is_exact(id)) {
    throw Error(ErrorKind::PreconditionViolation, std::string(bound_name(id)) + " is exact; use check_exact");
  }
  auto single = [&]() {
    auto used = pick(sets, {"A"});
    require_size(used, 4);
    return used;
  };
  switch (id) {
    case BoundId::Mink:
    case BoundId::Mink2:
    case BoundId::Jones: {
      auto used = single();
      const FiniteSet& a = used.at("A");
      std::uint64_t lhs = 0;
      if (id == BoundId::Mink) {
        FiniteSet d = pairwise(SetOp::Sub, a, a, budget);
        lhs = pairwise(SetOp::Mul, d, d, budget).size();
      } else if (id == BoundId::Mink2) {
        lhs = best_shift_pair(a, budget).cardinality;
      } else {
        lhs = triple_ratio_set(a, budget).size();
      }
      return finish_ratio(id, lhs, sz(a.size()) * sz(a.size()) / lg(a.size()), used);
    }
    case BoundId::Thm1:
    case BoundId::Thm2:
    case BoundId::Thm4:
    case BoundId::FiveVar: {
      auto used = single();
      const FiniteSet& a = used.at("A");
      double n = sz(a.size());
      double l = lg(a.size());
      if (id == BoundId::Thm1) {
        return finish_ratio(id, named_expander(ExpanderName::DDD, a, budget).size(),
                            pw(n, 17.0 / 8) / pw(l, 17.0 / 16), used);
      }
      if (id == BoundId::Thm2) {
        return finish_ratio(id, named_expander(ExpanderName::RatioSumPlusRatio, a, budget).size(),
                            pw(n, 2 + 2.0 / 17) / pw(l, 16.0 / 17), used);
      }
      auto name = id == BoundId::Thm4 ? ExpanderName::AAARatio : ExpanderName::FiveVar;
      return finish_ratio(id, named_expander(name, a, budget).size(), pw(n, 17.0 / 8) / l, used);
    }
    case BoundId::Thm3: {
      auto used = single();
      const FiniteSet& a = used.at("A");
      std::size_t aa = pairwise(SetOp::Mul, a, a, budget).size();
      return finish_ratio(id, named_expander(ExpanderName::AASumRatio, a, budget).size(),
                          pw(sz(a.size()), 11.0 / 8) * pw(sz(aa), 3.0 / 4) / lg(a.size()), used);
    }
    case BoundId::GaraevShen: {
      auto used = pick(sets, {"X", "Y", "Z"});
      require_size(used, 4);
      const FiniteSet& x = used.at("X");
      const FiniteSet& y = used.at("Y");
      const FiniteSet& z = used.at("Z");
      std::uint64_t lhs = pairwise(SetOp::Mul, x, y, budget).size() *
                          pairwise(SetOp::Mul, shifted(x, params.alpha), z, budget).size();
      BoundReport r = finish_ratio(id, lhs, pw(sz(x.size()), 1.5) * std::sqrt(sz(y.size())) * std::sqrt(sz(z.size())),
                                   used);
      r.inputs_digest += ";alpha=" + params.alpha.to_string();
      return r;
    }
    case BoundId::GS1:
    case BoundId::Jorn: {
      const char* name = id == BoundId::GS1 ? "X" : "A";
      auto used = pick(sets, {name});
      require_size(used, 4);
      const FiniteSet& x = used.at(name);
      std::uint64_t lhs = pairwise(SetOp::Mul, x, shifted(x, params.alpha), budget).size();
      double n = sz(x.size());
      double rhs = id == BoundId::GS1 ? pw(n, 5.0 / 4) : pw(n, 24.0 / 19) / pw(lg(x.size()), 2.0 / 19);
      BoundReport r = finish_ratio(id, lhs, rhs, used);
      r.inputs_digest += ";alpha=" + params.alpha.to_string();
      return r;
    }
    case BoundId::GS2: {
      auto used = pick(sets, {"X", "Y"});
      require_size(used, 4);
      const FiniteSet& x = used.at("X");
      const FiniteSet& y = used.at("Y");
      std::uint64_t lhs = std::max(pairwise(SetOp::Mul, x, y, budget).size(),
                                   pairwise(SetOp::Mul, shifted(x, params.alpha), y, budget).size());
      BoundReport r = finish_ratio(id, lhs, pw(sz(x.size()), 0.75) * std::sqrt(sz(y.size())), used);
      r.inputs_digest += ";alpha=" + params.alpha.to_string();
      return r;
    }
    case BoundId::ENR: {
      auto used = pick(sets, {"X", "Y", "Z"});
      require_size(used, 4);
      const FiniteSet& x = used.at("X");
      const FiniteSet& y = used.at("Y");
      const FiniteSet& z = used.at("Z");
      std::uint64_t lhs = pairwise(SetOp::Add, apply_preset(params.f, x), y, budget).size() *
                          pairwise(SetOp::Add, x, z, budget).size();
      BoundReport r = finish_ratio(id, lhs, pw(sz(x.size()), 1.5) * std::sqrt(sz(y.size())) * std::sqrt(sz(z.size())),
                                   used);
      r.inputs_digest += ";f=" + std::string(to_string(params.f));
      return r;
    }
    case BoundId::Lund: {
      auto used = single();
      const FiniteSet& a = used.at("A");
      FiniteSet s = pairwise(SetOp::Add, a, a, budget);
      std::uint64_t lhs = pairwise(SetOp::Div, s, s, budget).size();
      double n = sz(a.size());
      double ratio_set = sz(pairwise(SetOp::Div, a, a, budget).size());
      return finish_ratio(id, lhs, n * n / lg(a.size()) * pw(n * n / ratio_set, 1.0 / 8), used);
    }
    case BoundId::Lund2: {
      auto used = pick(sets, {"A", "B"});
      require_size(used, 4);
      const FiniteSet& a = used.at("A");
      const FiniteSet& b = used.at("B");
      FiniteSet top = pairwise(SetOp::Add, a, a, budget);
      FiniteSet bottom = pairwise(SetOp::Add, b, b, budget);
      std::uint64_t lhs = pairwise(SetOp::Div, top, bottom, budget).size();
      double na = sz(a.size());
      double nb = sz(b.size());
      double a_over_b = sz(pairwise(SetOp::Div, a, b, budget).size());
      return finish_ratio(id, lhs, na * nb / (lg(a.size()) + lg(b.size())) * pw(na * nb / a_over_b, 1.0 / 8),
                          used);
    }
    default:
      break;
  }
  throw Error(ErrorKind::PreconditionViolation, "unsupported bound");
}

KatzShenWitness katz_shen_witness(const FiniteSet& x, const std::vector<FiniteSet>& b_list, CombineMode mode,
                                  const Budget& budget) {
  if (x.size() > 16) throw Error(ErrorKind::TooLarge, "exhaustive witness search needs |X| <= 16");
  if (x.empty()) throw Error(ErrorKind::PreconditionViolation, "X must be nonempty");
  if (b_list.empty()) throw Error(ErrorKind::PreconditionViolation, "need at least one B_i");
  SetOp op = mode == CombineMode::Additive ? SetOp::Add : SetOp::Mul;
  if (mode == CombineMode::Multiplicative) {
    bool zero = x.contains(0);
    for (const auto& b : b_list) zero = zero || b.contains(0);
    if (zero) throw Error(ErrorKind::ZeroInMultiplicativeMode, "0 is not allowed in multiplicative mode");
  }
  for (const auto& b : b_list) {
    if (b.empty()) throw Error(ErrorKind::PreconditionViolation, "B_i must be nonempty");
  }

  const std::size_t n = x.size();
  const std::size_t min_size = (n + 1) / 2;
  KatzShenWitness best;
  bool have = false;
  std::vector<Rational> members;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) < min_size) continue;
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) members.push_back(x[i]);
    }
    FiniteSet acc = FiniteSet::from_sorted_unique(members);
    for (const auto& b : b_list) acc = pairwise(op, acc, b, budget);
    std::uint64_t size = acc.size();
    bool better = !have || size < best.lhs ||
                  (size == best.lhs && std::lexicographical_compare(members.begin(), members.end(),
                                                                    best.subset.begin(), best.subset.end()));
    if (better) {
      best.lhs = size;
      best.subset = FiniteSet::from_sorted_unique(members);
      have = true;
    }
  }

  Rational numerator(1);
  for (const auto& b : b_list) numerator *= Rational(static_cast<std::int64_t>(pairwise(op, x, b, budget).size()));
  best.rhs = numerator / pow(Rational(static_cast<std::int64_t>(n)), static_cast<unsigned>(b_list.size() - 1));
  return best;
}

}  // namespace expandlab
