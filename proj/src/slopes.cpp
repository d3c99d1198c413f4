#include "expandlab/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "expandlab/detail/collect.hpp"
#include "expandlab/detail/random.hpp"
#include "expandlab/error.hpp"
#include "expandlab/expanders.hpp"

namespace expandlab {
namespace {

Rational as_rational(std::uint64_t v) { return Rational(static_cast<std::int64_t>(v)); }

/// Sign of e*f - g for f >= 0. e is irrational, so for f != 0 the sign is
/// never zero and refining sum_{k<=N} 1/k! < e < that + 1/(N! N) terminates.
int compare_e_times(const Rational& f, const Rational& g) {
  if (f.is_zero()) return -g.sign();
  for (int terms = 8;; terms *= 2) {
    Rational lo(1);
    Rational term(1);
    for (int k = 1; k <= terms; ++k) {
      term = term / k;
      lo = lo + term;
    }
    Rational hi = lo + term / terms;
    if (hi * f <= g) return -1;
    if (lo * f >= g) return 1;
  }
}

Rational slope(const Rational& x, const Rational& y) { return y / x; }

void require_positive(const FiniteSet& a) {
  if (!a.all_positive()) throw Error(ErrorKind::NonPositiveElement, "slope machinery needs strictly positive A");
}

bool on_line(const FiniteSet& a, const Rational& lambda, const Rational& x) {
  return a.contains(x) && a.contains(lambda * x);
}

}  // namespace

const FiniteSet* SlopeDecomposition::find(const Rational& lambda) const {
  auto it = std::lower_bound(lines.begin(), lines.end(), lambda,
                             [](const auto& line, const Rational& v) { return line.first < v; });
  if (it == lines.end() || it->first != lambda) return nullptr;
  return &it->second;
}

SlopeDecomposition decompose(const FiniteSet& a) {
  require_positive(a);
  std::map<Rational, std::vector<Rational>> by_slope;
  for (const auto& x : a) {
    for (const auto& y : a) by_slope[y / x].push_back(x);
  }
  SlopeDecomposition dec;
  dec.set_size = a.size();
  for (auto& [lambda, xs] : by_slope) {
    dec.total_mass += xs.size();
    dec.lines.emplace_back(lambda, FiniteSet::from_sorted_unique(std::move(xs)));
  }
  return dec;
}

DyadicSelection dyadic_select(const SlopeDecomposition& dec) {
  if (dec.set_size == 0 || dec.lines.empty()) {
    throw Error(ErrorKind::PreconditionViolation, "dyadic selection needs a nonempty decomposition");
  }
  DyadicSelection sel;
  Rational n = as_rational(dec.set_size);
  sel.base = n * n / (2 * as_rational(dec.lines.size()));
  int log_ceil = 0;
  while ((std::uint64_t{1} << log_ceil) < dec.set_size) ++log_ceil;
  sel.bucket_count = std::max(1, log_ceil);

  std::vector<std::uint64_t> mass(static_cast<std::size_t>(sel.bucket_count) + 1, 0);
  std::vector<int> bucket_of(dec.lines.size(), 0);
  for (std::size_t i = 0; i < dec.lines.size(); ++i) {
    Rational size = as_rational(dec.lines[i].second.size());
    if (size < sel.base) continue;
    int j = 1;
    Rational ceiling = 2 * sel.base;
    while (j < sel.bucket_count && size >= ceiling) {
      ++j;
      ceiling = 2 * ceiling;
    }
    bucket_of[i] = j;
    mass[static_cast<std::size_t>(j)] += dec.lines[i].second.size();
  }
  sel.bucket = 1;
  for (int j = 2; j <= sel.bucket_count; ++j) {
    if (mass[static_cast<std::size_t>(j)] > mass[static_cast<std::size_t>(sel.bucket)]) sel.bucket = j;
  }
  sel.tau = sel.base * pow(Rational(2), static_cast<unsigned>(sel.bucket - 1));
  sel.mass = mass[static_cast<std::size_t>(sel.bucket)];
  for (std::size_t i = 0; i < dec.lines.size(); ++i) {
    if (bucket_of[i] == sel.bucket) sel.S_tau.push_back(dec.lines[i].first);
  }
  return sel;
}

std::int64_t choose_M(const Rational& tau, std::int64_t n, const Rational& c) {
  if (tau.sign() <= 0 || n < 1 || c.sign() <= 0) {
    throw Error(ErrorKind::PreconditionViolation, "choose_M needs tau > 0, n >= 1, C > 0");
  }
  const Rational tau_sq = tau * tau;
  const Rational scale = 30 * c * Rational(n);
  auto fits = [&](std::int64_t m) { return compare_e_times(scale * pow(Rational(m), 8), tau_sq) < 0; };
  double estimate = std::pow(tau_sq.to_double() / (30 * 2.718281828459045 * c.to_double() * static_cast<double>(n)),
                             1.0 / 8);
  auto m = static_cast<std::int64_t>(std::isfinite(estimate) ? std::floor(estimate) : 0);
  m = std::max<std::int64_t>(m, 0);
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

bool lll_feasible(const LLLParams& params) {
  if (params.n < 1 || params.d < 0 || params.p.sign() < 0) {
    throw Error(ErrorKind::PreconditionViolation, "LLL parameters need n >= 1, d >= 0, p >= 0");
  }
  return compare_e_times(params.p * Rational(params.d + 1), Rational(1)) < 0;
}

std::uint64_t incidence_count(const FiniteSet& a, const Rational& lambda_i, const Rational& lambda_j,
                              const Rational& lambda_k, const Rational& lambda_l, const Rational& a_i,
                              const Rational& a_k, const Rational& alpha_j, const Rational& alpha_l) {
  if (!a.all_positive()) throw Error(ErrorKind::PreconditionViolation, "incidence counts need positive A");
  if (!on_line(a, lambda_i, a_i) || !on_line(a, lambda_k, a_k) || !on_line(a, lambda_j, alpha_j) ||
      !on_line(a, lambda_l, alpha_l)) {
    throw Error(ErrorKind::PreconditionViolation, "representative is not on its line");
  }
  std::vector<Rational> left;
  std::vector<Rational> right;
  left.reserve(a.size());
  right.reserve(a.size());
  for (const auto& x : a) left.push_back(slope(a_i + alpha_j * x, lambda_i * a_i + lambda_j * alpha_j * x));
  for (const auto& y : a) right.push_back(slope(a_k + alpha_l * y, lambda_k * a_k + lambda_l * alpha_l * y));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  // Count equal pairs across the two sorted multisets.
  std::uint64_t count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < left.size() && j < right.size()) {
    if (left[i] < right[j]) {
      ++i;
    } else if (right[j] < left[i]) {
      ++j;
    } else {
      std::size_t i_end = i;
      std::size_t j_end = j;
      while (i_end < left.size() && left[i_end] == left[i]) ++i_end;
      while (j_end < right.size() && right[j_end] == right[j]) ++j_end;
      count += (i_end - i) * (j_end - j);
      i = i_end;
      j = j_end;
    }
  }
  return count;
}

RichPairs rich_pair_count(const FiniteSet& a, const Rational& lambda_i, const Rational& lambda_j,
                          const Rational& lambda_k, const Rational& lambda_l, const Rational& alpha_j,
                          const Rational& alpha_l, std::int64_t k) {
  if (k < 2) throw Error(ErrorKind::PreconditionViolation, "richness threshold K must be >= 2");
  RichPairs out;
  Rational n = as_rational(a.size());
  Rational kk(k);
  out.ps_bound = pow(n, 4) / pow(kk, 3) + n * n / kk;
  for (const auto& x : a) {
    if (!a.contains(lambda_i * x)) continue;
    for (const auto& y : a) {
      if (!a.contains(lambda_k * y)) continue;
      auto e = incidence_count(a, lambda_i, lambda_j, lambda_k, lambda_l, x, y, alpha_j, alpha_l);
      if (e >= static_cast<std::uint64_t>(k)) ++out.count;
    }
  }
  return out;
}

bool ordered_slope_chain(const FiniteSet& a, const std::vector<Rational>& lambdas,
                         const std::vector<Rational>& alpha) {
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    const Rational& li = lambdas[i];
    const Rational& lj = lambdas[i + 1];
    if (!(li < lj)) return false;
    std::optional<Rational> prev;
    for (const auto& x : a) {
      Rational s = slope(alpha[i] + alpha[i + 1] * x, li * alpha[i] + lj * alpha[i + 1] * x);
      if (!(li < s && s < lj)) return false;
      if (prev && !(*prev < s)) return false;
      prev = s;
    }
  }
  return true;
}

ClusterTrace cluster_trace(const FiniteSet& a, const Rational& c, std::uint64_t seed, const Budget& budget,
                           const ClusterOptions& options) {
  require_positive(a);
  if (a.size() < 2) throw Error(ErrorKind::TooSmall, "cluster trace needs |A| >= 2");
  if (c.sign() <= 0) throw Error(ErrorKind::PreconditionViolation, "C must be positive");

  ClusterTrace tr;
  tr.set_size = a.size();
  tr.C = c;
  tr.seed = seed;
  const Rational n = as_rational(a.size());
  const auto n_int = static_cast<std::int64_t>(a.size());

  SlopeDecomposition dec = decompose(a);
  tr.line_count = dec.lines.size();
  tr.total_mass = dec.total_mass;
  tr.selection = dyadic_select(dec);
  const auto& s_tau = tr.selection.S_tau;
  const Rational& tau = tr.selection.tau;
  tr.tau_bound_holds = pow(tau, 8) >= pow(c, 8) * pow(n, 7);
  tr.basic_bound = a.size() * (s_tau.size() - 1);

  for (const auto& lambda : s_tau) tr.alpha.push_back((*dec.find(lambda))[0]);
  tr.chain_ordered = ordered_slope_chain(a, s_tau, tr.alpha);

  tr.M_formula = choose_M(tau, n_int, c);
  tr.M = tr.M_formula;
  if (options.forced_M) {
    std::int64_t m = *options.forced_M;
    if (m < 2 || 2 * m > static_cast<std::int64_t>(s_tau.size())) {
      throw Error(ErrorKind::PreconditionViolation,
                  "forced M=" + std::to_string(m) + " outside [2, |S_tau|/2] with |S_tau|=" +
                      std::to_string(s_tau.size()));
    }
    tr.M = m;
    tr.M_forced = true;
  }

  if (options.compute_target) tr.target = named_expander(ExpanderName::AAARatio, a, budget).size();

  const std::int64_t m = tr.M;
  if (m < 2) {
    tr.degraded = true;
    tr.degraded_reason = "M=" + std::to_string(m) + " < 2; only the basic bound |A|(|S_tau|-1) applies";
  } else if (2 * m > static_cast<std::int64_t>(s_tau.size())) {
    tr.degraded = true;
    tr.degraded_reason = "M=" + std::to_string(m) + " > |S_tau|/2=" + std::to_string(s_tau.size() / 2) +
                         "; only the basic bound |A|(|S_tau|-1) applies";
  }
  if (tr.degraded) {
    tr.cluster_bound = 0;
    tr.final_bound = as_rational(tr.basic_bound);
    return tr;
  }

  const Rational mm(m);
  const Rational m_sq = mm * mm;
  tr.B = n / (2 * m_sq);
  LLLParams lll;
  lll.n = m * m * m * m - m * m;
  lll.d = 2 * m * m;
  lll.p = c / (tau * tau) * (pow(n, 4) / pow(*tr.B, 3) + n * n / *tr.B);
  tr.lll = lll;
  tr.lll_is_feasible = lll_feasible(lll);

  tr.cluster_count = s_tau.size() / static_cast<std::size_t>(2 * m);
  tr.cluster_bound = m_sq * n / 2 * as_rational(tr.cluster_count);
  tr.final_bound = std::max(tr.cluster_bound, as_rational(tr.basic_bound));

  const auto msz = static_cast<std::size_t>(m);
  if (msz * msz * a.size() > budget.max_elements) detail::throw_budget(msz * msz * a.size(), budget);
  std::mt19937_64 eng(seed);
  std::size_t materialized = options.all_clusters ? tr.cluster_count : std::min<std::size_t>(1, tr.cluster_count);
  for (std::size_t t = 0; t < materialized; ++t) {
    ClusterStats cs;
    cs.t = static_cast<int>(t + 1);
    const std::size_t f = 2 * msz * t;
    cs.T.assign(s_tau.begin() + static_cast<std::ptrdiff_t>(f), s_tau.begin() + static_cast<std::ptrdiff_t>(f + msz));
    cs.U.assign(s_tau.begin() + static_cast<std::ptrdiff_t>(f + msz),
                s_tau.begin() + static_cast<std::ptrdiff_t>(f + 2 * msz));
    std::vector<Rational> alpha_u(tr.alpha.begin() + static_cast<std::ptrdiff_t>(f + msz),
                                  tr.alpha.begin() + static_cast<std::ptrdiff_t>(f + 2 * msz));
    cs.reps.assign(msz, std::vector<Rational>(msz));
    for (std::size_t i = 0; i < msz; ++i) {
      const FiniteSet& line = *dec.find(cs.T[i]);
      for (std::size_t j = 0; j < msz; ++j) cs.reps[i][j] = line[detail::uniform_below(eng, line.size())];
    }
    for (std::size_t i = 0; i < msz; ++i) {
      for (std::size_t j = 0; j < msz; ++j) {
        for (std::size_t k = 0; k < msz; ++k) {
          for (std::size_t l = 0; l < msz; ++l) {
            if (i == k && j == l) continue;
            auto e = incidence_count(a, cs.T[i], cs.U[j], cs.T[k], cs.U[l], cs.reps[i][j], cs.reps[k][l], alpha_u[j],
                                     alpha_u[l]);
            cs.E_max = std::max(cs.E_max, e);
            cs.E_sum += e;
            // i, k ∈ T and j, l ∈ U are disjoint index ranges, so {i,j} = {k,l}
            // as sets only when (i,j) = (k,l); the two sums agree.
            bool same_pair = (i == k && j == l) || (i == l + msz && j + msz == k);
            if (!same_pair) cs.E_sum_unordered += e;
          }
        }
      }
    }
    std::vector<Rational> q;
    q.reserve(msz * msz * a.size());
    for (std::size_t i = 0; i < msz; ++i) {
      for (std::size_t j = 0; j < msz; ++j) {
        for (const auto& x : a) {
          q.push_back(slope(cs.reps[i][j] + alpha_u[j] * x, cs.T[i] * cs.reps[i][j] + cs.U[j] * alpha_u[j] * x));
        }
      }
    }
    cs.r_Q = FiniteSet::from_values(std::move(q)).size();
    cs.incex_bound = static_cast<std::int64_t>(m * m) * n_int - static_cast<std::int64_t>(cs.E_sum);
    cs.witnessed = as_rational(cs.E_max) <= *tr.B;
    tr.clusters.push_back(std::move(cs));
  }
  return tr;
}

}  // namespace expandlab
