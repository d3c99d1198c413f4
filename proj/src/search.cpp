#include "expandlab/search.hpp"

#include <charconv>
#include <set>

#include "expandlab/detail/random.hpp"
#include "expandlab/error.hpp"

namespace expandlab {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    std::size_t end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "' in family spec");
  }
  return value;
}

Rational parse_rational(std::string_view text, std::string_view what) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "' in family spec");
  }
}

std::uint64_t objective_of(const SetExpr& expr, const FiniteSet& a, const Budget& budget) {
  Environment env{{"A", a}};
  return eval(expr, env, budget).size();
}

FiniteSet from_ints(const std::vector<std::int64_t>& values) {
  std::vector<Rational> v(values.begin(), values.end());
  return FiniteSet::from_values(std::move(v));
}

/// Distinct values the random kinds can produce, saturating for large grids.
std::uint64_t distinct_available(const FamilySpec& spec) {
  auto width = static_cast<std::uint64_t>(spec.hi - spec.lo) + 1;
  if (spec.kind == FamilyKind::RandomInt || spec.den_max == 1) return width;
  auto dens = static_cast<std::uint64_t>(spec.den_max);
  if (width >= static_cast<std::uint64_t>(spec.n)) return width;
  if (width * dens > (std::uint64_t{1} << 22)) return width * dens;
  std::set<Rational> values;
  for (std::int64_t p = spec.lo; p <= spec.hi; ++p) {
    for (std::int64_t q = 1; q <= spec.den_max; ++q) values.insert(Rational::normalize(p, q));
  }
  return values.size();
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  auto parts = split(text, ':');
  FamilySpec spec;
  std::string_view kind = parts[0];
  auto expect = [&](std::size_t count, const char* shape) {
    if (parts.size() != count) {
      throw Error(ErrorKind::ParseError, "family '" + std::string(text) + "' should look like " + shape);
    }
  };
  if (kind == "ap" || kind == "gp") {
    expect(4, kind == "ap" ? "ap:start:step:n" : "gp:start:ratio:n");
    spec.kind = kind == "ap" ? FamilyKind::AP : FamilyKind::GP;
    spec.start = parse_rational(parts[1], "start");
    spec.step = parse_rational(parts[2], kind == "ap" ? "step" : "ratio");
    spec.n = parse_int<std::int64_t>(parts[3], "n");
  } else if (kind == "rand") {
    expect(5, "rand:n:lo:hi:seed");
    spec.kind = FamilyKind::RandomInt;
    spec.n = parse_int<std::int64_t>(parts[1], "n");
    spec.lo = parse_int<std::int64_t>(parts[2], "lo");
    spec.hi = parse_int<std::int64_t>(parts[3], "hi");
    spec.seed = parse_int<std::uint64_t>(parts[4], "seed");
  } else if (kind == "rat") {
    expect(6, "rat:n:lo:hi:den_max:seed");
    spec.kind = FamilyKind::RandomRat;
    spec.n = parse_int<std::int64_t>(parts[1], "n");
    spec.lo = parse_int<std::int64_t>(parts[2], "lo");
    spec.hi = parse_int<std::int64_t>(parts[3], "hi");
    spec.den_max = parse_int<std::int64_t>(parts[4], "den_max");
    spec.seed = parse_int<std::uint64_t>(parts[5], "seed");
  } else {
    throw Error(ErrorKind::ParseError, "unknown family kind '" + std::string(kind) + "' (ap, gp, rand, rat)");
  }
  return spec;
}

std::string to_string(const FamilySpec& spec) {
  auto i = [](auto v) { return std::to_string(v); };
  switch (spec.kind) {
    case FamilyKind::AP: return "ap:" + spec.start.to_string() + ":" + spec.step.to_string() + ":" + i(spec.n);
    case FamilyKind::GP: return "gp:" + spec.start.to_string() + ":" + spec.step.to_string() + ":" + i(spec.n);
    case FamilyKind::RandomInt:
      return "rand:" + i(spec.n) + ":" + i(spec.lo) + ":" + i(spec.hi) + ":" + i(spec.seed);
    case FamilyKind::RandomRat:
      return "rat:" + i(spec.n) + ":" + i(spec.lo) + ":" + i(spec.hi) + ":" + i(spec.den_max) + ":" + i(spec.seed);
  }
  return "?";
}

FiniteSet generate(const FamilySpec& spec) {
  if (spec.n < 1) throw Error(ErrorKind::DegenerateFamily, "family size n must be >= 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(spec.n));
  switch (spec.kind) {
    case FamilyKind::AP: {
      if (spec.step.is_zero()) throw Error(ErrorKind::DegenerateFamily, "AP step must be nonzero");
      Rational v = spec.start;
      for (std::int64_t i = 0; i < spec.n; ++i, v = v + spec.step) out.push_back(v);
      break;
    }
    case FamilyKind::GP: {
      if (spec.start.is_zero()) throw Error(ErrorKind::DegenerateFamily, "GP start must be nonzero");
      if (spec.step.is_zero() || spec.step == Rational(1) || spec.step == Rational(-1)) {
        throw Error(ErrorKind::DegenerateFamily, "GP ratio must not be 0, 1 or -1");
      }
      Rational v = spec.start;
      for (std::int64_t i = 0; i < spec.n; ++i, v = v * spec.step) out.push_back(v);
      break;
    }
    case FamilyKind::RandomInt:
    case FamilyKind::RandomRat: {
      if (spec.kind == FamilyKind::RandomRat && spec.den_max < 1) {
        throw Error(ErrorKind::DegenerateFamily, "den_max must be >= 1");
      }
      if (spec.hi < spec.lo || distinct_available(spec) < static_cast<std::uint64_t>(spec.n)) {
        throw Error(ErrorKind::DegenerateFamily, "range [" + std::to_string(spec.lo) + ", " + std::to_string(spec.hi) +
                                                     "] cannot supply " + std::to_string(spec.n) + " distinct values");
      }
      std::mt19937_64 eng(spec.seed);
      std::set<Rational> seen;
      while (seen.size() < static_cast<std::size_t>(spec.n)) {
        Rational num(detail::uniform_between(eng, spec.lo, spec.hi));
        if (spec.kind == FamilyKind::RandomRat) num = num / Rational(detail::uniform_between(eng, 1, spec.den_max));
        seen.insert(num);
      }
      out.assign(seen.begin(), seen.end());
      break;
    }
  }
  FiniteSet s = FiniteSet::from_values(std::move(out));
  return s;
}

std::string_view to_string(SearchMethod m) { return m == SearchMethod::Exhaustive ? "exhaustive" : "local"; }

SearchResult exhaustive_min(const SetExpr& expr, std::int64_t m, const FiniteSet& universe, const Budget& budget) {
  if (universe.size() > 24) throw Error(ErrorKind::TooLarge, "exhaustive search needs |universe| <= 24");
  if (m < 1 || static_cast<std::size_t>(m) > universe.size()) {
    throw Error(ErrorKind::TooLarge, "subset size m=" + std::to_string(m) + " must lie in [1, |universe|=" +
                                         std::to_string(universe.size()) + "]");
  }
  const auto k = static_cast<std::size_t>(m);
  const std::size_t n = universe.size();
  SearchResult result;
  result.method = SearchMethod::Exhaustive;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Rational> members(k);
  bool have = false;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) members[i] = universe[idx[i]];
    FiniteSet candidate = FiniteSet::from_sorted_unique(members);
    std::uint64_t obj = objective_of(expr, candidate, budget);
    ++result.evaluations;
    // Lexicographic enumeration: the first subset reaching a value is the smallest.
    if (!have || obj < result.objective) {
      result.objective = obj;
      result.best_set = std::move(candidate);
      have = true;
    }
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + (pos - 1)) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return result;
}

SearchResult local_search_min(const SetExpr& expr, std::int64_t m, std::int64_t lo, std::int64_t hi,
                              std::int64_t iters, std::int64_t restarts, std::uint64_t seed, const Budget& budget) {
  if (m < 2 || iters < 1 || restarts < 1) {
    throw Error(ErrorKind::PreconditionViolation, "local search needs m >= 2, iters >= 1, restarts >= 1");
  }
  if (hi < lo || hi - lo + 1 < m) {
    throw Error(ErrorKind::PreconditionViolation, "range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                      "] has fewer than m integers");
  }
  const bool can_move = hi - lo + 1 > m;
  SearchResult result;
  result.method = SearchMethod::Local;
  result.seed = seed;
  for (std::int64_t r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 eng(seq);
    std::set<std::int64_t> current;
    while (current.size() < static_cast<std::size_t>(m)) current.insert(detail::uniform_between(eng, lo, hi));
    std::vector<std::int64_t> values(current.begin(), current.end());
    FiniteSet best = from_ints(values);
    std::uint64_t obj = objective_of(expr, best, budget);
    ++result.evaluations;
    RestartLog log;
    log.start_objective = obj;
    for (std::int64_t it = 0; it < iters && can_move; ++it) {
      auto slot = detail::uniform_below(eng, values.size());
      std::int64_t replacement = 0;
      do {
        replacement = detail::uniform_between(eng, lo, hi);
      } while (current.count(replacement) != 0);
      std::vector<std::int64_t> next = values;
      next[slot] = replacement;
      FiniteSet candidate = from_ints(next);
      std::uint64_t cand_obj = objective_of(expr, candidate, budget);
      ++result.evaluations;
      if (cand_obj < obj) {
        current.erase(values[slot]);
        current.insert(replacement);
        values = std::move(next);
        best = std::move(candidate);
        obj = cand_obj;
        log.accepted.push_back(obj);
      }
    }
    log.final_objective = obj;
    if (r == 0 || obj < result.objective) {
      result.objective = obj;
      result.best_set = std::move(best);
      result.best_restart = static_cast<int>(r);
    }
    result.restarts.push_back(std::move(log));
  }
  return result;
}

}  // namespace expandlab
