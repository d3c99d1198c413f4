#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expandlab/error.hpp"
#include "expandlab/expanders.hpp"
#include "expandlab/slopes.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace expandlab;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational::normalize(p, d); }

FiniteSet interval(int lo, int hi) {
  std::vector<Rational> v;
  for (int i = lo; i <= hi; ++i) v.emplace_back(i);
  return FiniteSet::from_values(std::move(v));
}

std::uint64_t naive_incidence(const FiniteSet& a, const Rational& li, const Rational& lj, const Rational& lk,
                              const Rational& ll, const Rational& ai, const Rational& ak, const Rational& aj,
                              const Rational& al) {
  std::uint64_t count = 0;
  for (const auto& x : a) {
    for (const auto& y : a) {
      if ((li * ai + lj * aj * x) * (ak + al * y) == (lk * ak + ll * al * y) * (ai + aj * x)) ++count;
    }
  }
  return count;
}

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("decompose examples") {
  auto d = decompose({1, 2, 4});
  CHECK(d.total_mass == 9);
  REQUIRE(d.lines.size() == 5);
  CHECK(*d.find(1) == FiniteSet{1, 2, 4});
  CHECK(*d.find(2) == FiniteSet{1, 2});
  CHECK(*d.find(q(1, 2)) == FiniteSet{2, 4});
  CHECK(*d.find(4) == FiniteSet{1});
  CHECK(*d.find(q(1, 4)) == FiniteSet{4});
  CHECK(d.find(3) == nullptr);

  auto one = decompose({1});
  CHECK(one.total_mass == 1);
  CHECK(one.lines.size() == 1);
  CHECK(decompose({1, 2}).total_mass == 4);

  expect_error(ErrorKind::NonPositiveElement, [] { decompose({0, 1}); });
  expect_error(ErrorKind::NonPositiveElement, [] { decompose({-1, 1}); });
}

TEST_CASE("decomposition invariants on random positive sets") {
  testing::Gen gen(101);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = gen.rational_set(static_cast<std::size_t>(gen.integer(1, 12)), true);
    auto d = decompose(a);
    CHECK(d.total_mass == a.size() * a.size());
    CHECK(d.lines.size() == pairwise(SetOp::Div, a, a).size());
    std::uint64_t mass = 0;
    for (const auto& [lambda, line] : d.lines) {
      CHECK_FALSE(line.empty());
      CHECK(is_subset(line, a));
      for (const auto& x : line) CHECK(a.contains(lambda * x));
      mass += line.size();
    }
    CHECK(mass == a.size() * a.size());
  }
}

TEST_CASE("dyadic selection") {
  auto sel = dyadic_select(decompose({1, 2, 4}));
  CHECK(sel.base == q(9, 10));
  CHECK(sel.bucket == 2);
  CHECK(sel.tau == q(9, 5));
  CHECK(sel.S_tau == std::vector<Rational>{q(1, 2), 1, 2});
  CHECK(sel.mass == 7);

  auto single = dyadic_select(decompose({1}));
  CHECK(single.S_tau == std::vector<Rational>{1});

  auto ap = dyadic_select(decompose(interval(1, 8)));
  CHECK(ap.base == q(32, 43));
  CHECK(ap.bucket == 1);
  CHECK(ap.S_tau.size() == 32);
  CHECK(ap.mass == 32);

  testing::Gen gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = gen.rational_set(static_cast<std::size_t>(gen.integer(2, 14)), true);
    auto d = decompose(a);
    auto s = dyadic_select(d);
    Rational n(static_cast<std::int64_t>(a.size()));
    CHECK(s.tau >= n * n / (2 * Rational(static_cast<std::int64_t>(d.lines.size()))));
    int log_ceil = static_cast<int>(std::ceil(std::log2(static_cast<double>(a.size()))));
    CHECK(Rational(static_cast<std::int64_t>(s.mass)) >= n * n / (2 * Rational(std::max(1, log_ceil))));
    std::uint64_t mass = 0;
    for (const auto& lambda : s.S_tau) {
      auto size = Rational(static_cast<std::int64_t>(d.find(lambda)->size()));
      CHECK(size >= s.tau);
      if (s.bucket < s.bucket_count) CHECK(size < 2 * s.tau);
      mass += d.find(lambda)->size();
    }
    CHECK(mass == s.mass);
  }
}

TEST_CASE("choose_M") {
  CHECK(choose_M(10000, 100, 1) == 3);
  CHECK(choose_M(1, 1, 1) == 0);
  CHECK(choose_M(q(1, 3), 5, 1) == 0);
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    Rational tau(gen.integer(1, 2'000'000));
    std::int64_t n = gen.integer(1, 1000);
    auto m = choose_M(tau, n, 1);
    CHECK(choose_M(2 * tau, n, 1) >= m);
    // Cross-check away from the boundary with long double.
    long double x = std::pow(static_cast<long double>(tau.to_double()) * tau.to_double() /
                                 (30.0L * 2.718281828459045235L * static_cast<long double>(n)),
                             1.0L / 8);
    if (std::abs(x - std::round(x)) > 1e-9L) CHECK(m == static_cast<std::int64_t>(std::floor(x)));
  }
  expect_error(ErrorKind::PreconditionViolation, [] { choose_M(0, 1, 1); });
}

TEST_CASE("lll_feasible") {
  CHECK(lll_feasible({1, 7, 0}));
  CHECK_FALSE(lll_feasible({1, 0, 1}));
  // Either side of 1/e, six digits from the boundary.
  CHECK(lll_feasible({1, 0, q(367879, 1000000)}));
  CHECK_FALSE(lll_feasible({1, 0, q(367880, 1000000)}));
  CHECK(lll_feasible({1, 2, q(1, 9)}));

  Rational n(50);
  Rational b = n / 8;
  Rational p = q(1, 10000) * (pow(n, 4) / pow(b, 3) + n * n / b);
  CHECK(p == q(13, 5));
  CHECK_FALSE(lll_feasible({12, 8, p}));
  expect_error(ErrorKind::PreconditionViolation, [] { lll_feasible({0, 1, q(1, 10)}); });
}

TEST_CASE("incidence counts") {
  FiniteSet a{1, 2, 4};
  // Identical parameters: only the diagonal x = y matches.
  CHECK(incidence_count(a, 1, 2, 1, 2, 1, 1, 1, 1) == 3);
  CHECK(incidence_count({1, 2}, q(1, 2), 1, 1, q(1, 2), 2, 2, 1, 2) == 2);
  CHECK(incidence_count({1, 2}, q(1, 2), 1, 1, q(1, 2), 2, 1, 1, 2) == 1);
  CHECK(incidence_count({1, 2}, 1, q(1, 2), 2, 1, 2, 1, 2, 1) == 0);
  expect_error(ErrorKind::PreconditionViolation, [&] { incidence_count(a, 2, 1, 1, 1, 4, 1, 1, 1); });
  expect_error(ErrorKind::PreconditionViolation, [&] { incidence_count(a, 3, 1, 1, 1, 1, 1, 1, 1); });

  testing::Gen gen(55);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = gen.integer_set(static_cast<std::size_t>(gen.integer(2, 9)), 1, 16);
    auto d = decompose(s);
    auto pick_line = [&]() -> const std::pair<Rational, FiniteSet>& {
      return d.lines[static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(d.lines.size()) - 1))];
    };
    auto pick = [&](const FiniteSet& line) {
      return line[static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(line.size()) - 1))];
    };
    for (int rep = 0; rep < 20; ++rep) {
      const auto& [li, Li] = pick_line();
      const auto& [lj, Lj] = pick_line();
      const auto& [lk, Lk] = pick_line();
      const auto& [ll, Ll] = pick_line();
      Rational ai = pick(Li);
      Rational ak = pick(Lk);
      Rational aj = pick(Lj);
      Rational al = pick(Ll);
      auto fast = incidence_count(s, li, lj, lk, ll, ai, ak, aj, al);
      CHECK(fast == naive_incidence(s, li, lj, lk, ll, ai, ak, aj, al));
      CHECK(fast <= s.size() * s.size());
    }
  }
}

TEST_CASE("rich pair counts") {
  FiniteSet a = interval(1, 8);
  Rational li = 1, lj = 2, lk = q(1, 2), ll = q(3, 2);
  Rational aj = 1, al = 2;
  auto huge = rich_pair_count(a, li, lj, lk, ll, aj, al, 65);
  CHECK(huge.count == 0);
  CHECK(huge.ps_bound == pow(Rational(8), 4) / pow(Rational(65), 3) + Rational(64) / 65);

  auto d = decompose(a);
  std::uint64_t brute = 0;
  for (const auto& x : *d.find(li)) {
    for (const auto& y : *d.find(lk)) {
      if (naive_incidence(a, li, lj, lk, ll, x, y, aj, al) >= 2) ++brute;
    }
  }
  CHECK(rich_pair_count(a, li, lj, lk, ll, aj, al, 2).count == brute);

  std::uint64_t prev = rich_pair_count(a, li, lj, lk, ll, aj, al, 2).count;
  std::uint64_t cap = d.find(li)->size() * d.find(lk)->size();
  CHECK(prev <= cap);
  for (std::int64_t k = 3; k <= 12; ++k) {
    auto cur = rich_pair_count(a, li, lj, lk, ll, aj, al, k).count;
    CHECK(cur <= prev);
    prev = cur;
  }
  expect_error(ErrorKind::PreconditionViolation, [&] { rich_pair_count(a, li, lj, lk, ll, aj, al, 1); });
}

TEST_CASE("ordered slope chain holds across every line of an AP") {
  FiniteSet a = interval(1, 8);
  auto d = decompose(a);
  std::vector<Rational> lambdas;
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  for (const auto& [lambda, line] : d.lines) {
    lambdas.push_back(lambda);
    lo.push_back(line[0]);
    hi.push_back(line[line.size() - 1]);
  }
  CHECK(ordered_slope_chain(a, lambdas, lo));
  CHECK(ordered_slope_chain(a, lambdas, hi));
  std::vector<Rational> reversed(lambdas.rbegin(), lambdas.rend());
  CHECK_FALSE(ordered_slope_chain(a, reversed, lo));
}

TEST_CASE("cluster trace degrades at desk scale") {
  auto tr = cluster_trace(interval(1, 8), 1, 1, Budget{}, ClusterOptions{.compute_target = true});
  CHECK(tr.total_mass == 64);
  CHECK(tr.line_count == 43);
  CHECK(tr.selection.tau == q(32, 43));
  CHECK(tr.selection.S_tau.size() == 32);
  CHECK(tr.basic_bound == 248);
  CHECK(tr.M_formula == 0);
  CHECK(tr.degraded);
  CHECK_FALSE(tr.degraded_reason.empty());
  CHECK(tr.chain_ordered);
  CHECK_FALSE(tr.tau_bound_holds);
  REQUIRE(tr.target.has_value());
  CHECK(*tr.target == 3103);
  CHECK(tr.final_bound == Rational(248));
  CHECK(tr.final_bound <= Rational(static_cast<std::int64_t>(*tr.target)));

  auto small = cluster_trace({1, 2, 4}, 1, 1);
  CHECK(small.degraded);
  CHECK(small.basic_bound == 6);
  CHECK(small.final_bound == Rational(6));

  expect_error(ErrorKind::NonPositiveElement, [] { cluster_trace({0, 1, 2, 3}, 1, 1); });
  expect_error(ErrorKind::TooSmall, [] { cluster_trace({1}, 1, 1); });
  expect_error(ErrorKind::PreconditionViolation,
               [] { cluster_trace(interval(1, 8), 1, 1, Budget{}, ClusterOptions{.forced_M = 17}); });
}

TEST_CASE("cluster trace with forced M matches naive recomputation") {
  FiniteSet a = interval(1, 8);
  auto d = decompose(a);
  ClusterOptions opts{.forced_M = 2, .all_clusters = true, .compute_target = true};
  auto tr = cluster_trace(a, 1, 42, Budget{}, opts);
  CHECK_FALSE(tr.degraded);
  CHECK(tr.M == 2);
  CHECK(tr.M_forced);
  CHECK(*tr.B == q(8, 8));
  CHECK(tr.lll->n == 12);
  CHECK(tr.lll->d == 8);
  CHECK_FALSE(*tr.lll_is_feasible);
  CHECK(tr.cluster_count == 8);
  CHECK(tr.cluster_bound == Rational(4 * 8 / 2 * 8));
  REQUIRE(tr.clusters.size() == 8);

  std::uint64_t realized = 0;
  for (const auto& cs : tr.clusters) {
    CAPTURE(cs.t);
    const std::size_t m = 2;
    const std::size_t f = 2 * m * static_cast<std::size_t>(cs.t - 1);
    std::uint64_t e_max = 0;
    std::uint64_t e_sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(cs.T[i] == tr.selection.S_tau[f + i]);
      CHECK(cs.U[i] == tr.selection.S_tau[f + m + i]);
      for (std::size_t j = 0; j < m; ++j) CHECK(d.find(cs.T[i])->contains(cs.reps[i][j]));
    }
    std::set<Rational> slopes;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const Rational& aj = tr.alpha[f + m + j];
        for (const auto& x : a) {
          slopes.insert((cs.T[i] * cs.reps[i][j] + cs.U[j] * aj * x) / (cs.reps[i][j] + aj * x));
        }
        for (std::size_t k = 0; k < m; ++k) {
          for (std::size_t l = 0; l < m; ++l) {
            if (i == k && j == l) continue;
            auto e = naive_incidence(a, cs.T[i], cs.U[j], cs.T[k], cs.U[l], cs.reps[i][j], cs.reps[k][l], aj,
                                     tr.alpha[f + m + l]);
            e_max = std::max(e_max, e);
            e_sum += e;
          }
        }
      }
    }
    CHECK(cs.E_max == e_max);
    CHECK(cs.E_sum == e_sum);
    CHECK(cs.E_sum_unordered == cs.E_sum);
    CHECK(cs.r_Q == slopes.size());
    CHECK(cs.incex_bound <= static_cast<std::int64_t>(cs.r_Q));
    CHECK(cs.witnessed == (Rational(static_cast<std::int64_t>(cs.E_max)) <= *tr.B));
    realized += cs.r_Q;
  }
  // Clusters occupy disjoint slope intervals, so their r(Q) add up.
  CHECK(realized <= *tr.target);

  auto again = cluster_trace(a, 1, 42, Budget{}, opts);
  for (std::size_t t = 0; t < tr.clusters.size(); ++t) CHECK(again.clusters[t].reps == tr.clusters[t].reps);
  auto first_only = cluster_trace(a, 1, 42, Budget{}, ClusterOptions{.forced_M = 2});
  CHECK(first_only.clusters.size() == 1);
  CHECK(first_only.clusters[0].reps == tr.clusters[0].reps);
}

TEST_CASE("r(Q) is realized inside the target set") {
  testing::Gen gen(8);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = gen.integer_set(static_cast<std::size_t>(gen.integer(5, 8)), 1, 20);
    auto base = cluster_trace(a, 1, 0);
    if (base.selection.S_tau.size() < 4) continue;
    auto tr = cluster_trace(a, 1, static_cast<std::uint64_t>(trial), Budget{},
                            ClusterOptions{.forced_M = 2, .all_clusters = true, .compute_target = true});
    std::uint64_t realized = 0;
    for (const auto& cs : tr.clusters) realized += cs.r_Q;
    CHECK(realized <= *tr.target);
    CHECK(tr.basic_bound <= *tr.target);
    CHECK(tr.chain_ordered);
  }
}
