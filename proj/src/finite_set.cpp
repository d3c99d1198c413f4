#include "expandlab/finite_set.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <thread>

#include "expandlab/detail/collect.hpp"
#include "expandlab/error.hpp"

namespace expandlab {
namespace {

std::atomic<unsigned> g_max_workers{std::max(1U, std::thread::hardware_concurrency())};

}  // namespace

namespace detail {

void sort_unique(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

std::vector<Rational> merge_union(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void throw_budget(std::size_t count, const Budget& budget) {
  throw Error(ErrorKind::BudgetExceeded, "distinct element count " + std::to_string(count) +
                                             " exceeds budget " + std::to_string(budget.max_elements));
}

void RunStack::absorb(std::vector<Rational>& candidates) {
  if (candidates.empty()) return;
  std::vector<Rational> run;
  run.swap(candidates);
  sort_unique(run);
  push(std::move(run));
}

void RunStack::push(std::vector<Rational> run) {
  if (run.size() > budget_.max_elements) throw_budget(run.size(), budget_);
  runs_.push_back(std::move(run));
  while (runs_.size() >= 2 && runs_[runs_.size() - 2].size() <= 2 * runs_.back().size()) {
    auto merged = merge_union(runs_[runs_.size() - 2], runs_.back());
    runs_.pop_back();
    runs_.pop_back();
    if (merged.size() > budget_.max_elements) throw_budget(merged.size(), budget_);
    runs_.push_back(std::move(merged));
  }
}

std::vector<Rational> RunStack::finish() {
  while (runs_.size() >= 2) {
    auto merged = merge_union(runs_[runs_.size() - 2], runs_.back());
    runs_.pop_back();
    runs_.pop_back();
    if (merged.size() > budget_.max_elements) throw_budget(merged.size(), budget_);
    runs_.push_back(std::move(merged));
  }
  if (runs_.empty()) return {};
  auto out = std::move(runs_.back());
  runs_.clear();
  return out;
}

std::vector<Rational> merge_all(std::vector<std::vector<Rational>> parts, const Budget& budget) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<std::vector<Rational>> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      auto merged = merge_union(parts[i], parts[i + 1]);
      if (merged.size() > budget.max_elements) throw_budget(merged.size(), budget);
      next.push_back(std::move(merged));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace detail

FiniteSet::FiniteSet(std::initializer_list<Rational> values)
    : FiniteSet(from_values(std::vector<Rational>(values))) {}

FiniteSet FiniteSet::from_values(std::vector<Rational> values) {
  detail::sort_unique(values);
  return from_sorted_unique(std::move(values));
}

FiniteSet FiniteSet::from_sorted_unique(std::vector<Rational> values) {
  FiniteSet s;
  s.elements_ = std::move(values);
  return s;
}

bool FiniteSet::contains(const Rational& value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

bool FiniteSet::all_positive() const { return elements_.empty() || elements_.front().sign() > 0; }

std::string FiniteSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ", ";
    out += elements_[i].to_string();
  }
  return out + "}";
}

char symbol(SetOp op) {
  switch (op) {
    case SetOp::Add: return '+';
    case SetOp::Sub: return '-';
    case SetOp::Mul: return '*';
    case SetOp::Div: return '/';
  }
  return '?';
}

FiniteSet pairwise(SetOp op, const FiniteSet& s, const FiniteSet& t, const Budget& budget) {
  std::span<const Rational> left = s.elements();
  std::span<const Rational> right = t.elements();
  std::vector<Rational> out;
  switch (op) {
    case SetOp::Add:
      out = detail::collect_distinct(
          left.size(),
          [&](std::size_t i, std::vector<Rational>& buf) {
            for (const auto& v : right) buf.push_back(left[i] + v);
          },
          budget, right.size());
      break;
    case SetOp::Sub:
      out = detail::collect_distinct(
          left.size(),
          [&](std::size_t i, std::vector<Rational>& buf) {
            for (const auto& v : right) buf.push_back(left[i] - v);
          },
          budget, right.size());
      break;
    case SetOp::Mul:
      out = detail::collect_distinct(
          left.size(),
          [&](std::size_t i, std::vector<Rational>& buf) {
            for (const auto& v : right) buf.push_back(left[i] * v);
          },
          budget, right.size());
      break;
    case SetOp::Div: {
      std::vector<Rational> nonzero;
      nonzero.reserve(right.size());
      for (const auto& v : right) {
        if (!v.is_zero()) nonzero.push_back(v);
      }
      if (nonzero.empty()) {
        throw Error(ErrorKind::EmptyDenominator, "denominator set has no nonzero element");
      }
      out = detail::collect_distinct(
          left.size(),
          [&](std::size_t i, std::vector<Rational>& buf) {
            for (const auto& v : nonzero) buf.push_back(left[i] / v);
          },
          budget, nonzero.size());
      break;
    }
  }
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet kfold(SetOp op, const FiniteSet& s, int k, const Budget& budget) {
  if (k < 1) throw Error(ErrorKind::PreconditionViolation, "k-fold requires k >= 1");
  if (op != SetOp::Add && op != SetOp::Mul) {
    throw Error(ErrorKind::PreconditionViolation, "k-fold is defined for + and * only");
  }
  if (s.size() > budget.max_elements) detail::throw_budget(s.size(), budget);
  FiniteSet acc = s;
  for (int round = 2; round <= k; ++round) acc = pairwise(op, acc, s, budget);
  return acc;
}

FiniteSet affine(const FiniteSet& s, const Rational& scale, const Rational& shift) {
  if (scale.is_zero()) throw Error(ErrorKind::ZeroScale, "affine map needs a nonzero scale");
  std::vector<Rational> out;
  out.reserve(s.size());
  for (const auto& v : s) out.push_back(scale * v + shift);
  if (scale.sign() < 0) std::reverse(out.begin(), out.end());
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet triple_ratio_set(const FiniteSet& s, const Budget& budget) {
  if (s.size() < 2) {
    throw Error(ErrorKind::EmptyDenominator, "R[S] needs two distinct elements");
  }
  std::span<const Rational> e = s.elements();
  auto out = detail::collect_distinct(
      e.size(),
      [&](std::size_t i, std::vector<Rational>& buf) {
        const Rational& a = e[i];
        for (std::size_t j = 0; j < e.size(); ++j) {
          if (j == i) continue;
          Rational inv = Rational(1) / (a - e[j]);
          for (const auto& b : e) buf.push_back((a - b) * inv);
        }
      },
      budget, e.size() * e.size());
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Rational> left(a.begin(), a.end());
  std::vector<Rational> right(b.begin(), b.end());
  return FiniteSet::from_sorted_unique(detail::merge_union(left, right));
}

bool is_subset(const FiniteSet& sub, const FiniteSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

void set_max_workers(unsigned workers) { g_max_workers.store(std::max(1U, workers)); }

unsigned max_workers() { return g_max_workers.load(); }

FiniteSet parse_set_text(std::string_view text) {
  std::vector<Rational> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      values.push_back(Rational::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(e.position(), e.expected(), "set line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return FiniteSet::from_values(std::move(values));
}

FiniteSet read_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open set file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set_text(ss.str());
}

void write_set_text(std::ostream& os, const FiniteSet& s) {
  for (const auto& v : s) os << v.to_string() << '\n';
}

}  // namespace expandlab
