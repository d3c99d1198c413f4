#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expandlab/rational.hpp"

namespace expandlab {

/// Cap on the number of distinct elements any single set computation may
/// hold. Candidates enumerated are not counted; memory is the constraint.
struct Budget {
  static constexpr std::size_t kDefaultMaxElements = 10'000'000;

  std::size_t max_elements = kDefaultMaxElements;
};

/// Immutable finite set of rationals, stored strictly increasing.
class FiniteSet {
 public:
  using const_iterator = std::vector<Rational>::const_iterator;

  FiniteSet() = default;
  FiniteSet(std::initializer_list<Rational> values);

  static FiniteSet from_values(std::vector<Rational> values);
  /// Caller guarantees the input is strictly increasing.
  static FiniteSet from_sorted_unique(std::vector<Rational> values);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const_iterator begin() const noexcept { return elements_.begin(); }
  const_iterator end() const noexcept { return elements_.end(); }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const Rational> elements() const noexcept { return elements_; }

  bool contains(const Rational& value) const;
  /// True when every element is > 0 (vacuously true for the empty set).
  bool all_positive() const;

  std::string to_string() const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<Rational> elements_;
};

enum class SetOp { Add, Sub, Mul, Div };

char symbol(SetOp op);

/// {s op t : s in S, t in T}. Division skips t = 0 and throws EmptyDenominator
/// only if T has no nonzero element.
FiniteSet pairwise(SetOp op, const FiniteSet& s, const FiniteSet& t, const Budget& budget = {});

/// k-fold sumset (Add) or product set (Mul), by iterated pairwise with
/// dedup after each round.
FiniteSet kfold(SetOp op, const FiniteSet& s, int k, const Budget& budget = {});

/// {scale * s + shift}. Throws ZeroScale when scale == 0.
FiniteSet affine(const FiniteSet& s, const Rational& scale, const Rational& shift);

/// {(a - b) / (a - c) : a, b, c in S, a != c}, enumerated over triples.
FiniteSet triple_ratio_set(const FiniteSet& s, const Budget& budget = {});

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
bool is_subset(const FiniteSet& sub, const FiniteSet& super);

/// Upper bound on worker threads used by set evaluation. Results never
/// depend on this value.
void set_max_workers(unsigned workers);
unsigned max_workers();

// Set file format: one scalar per line, '#' comment lines, blank lines
// ignored, duplicates allowed.
FiniteSet parse_set_text(std::string_view text);
FiniteSet read_set_file(const std::string& path);
void write_set_text(std::ostream& os, const FiniteSet& s);

}  // namespace expandlab
