#pragma once

// Naive enumeration oracles. These deliberately avoid the engine in
// src/: plain nested loops over element vectors, results gathered into a
// std::set. They are slow and that is fine.

#include <set>
#include <vector>

#include "expandlab/finite_set.hpp"
#include "expandlab/rational.hpp"

namespace expandlab::oracle {

using Values = std::vector<Rational>;
using Set = std::set<Rational>;

inline Values values(const FiniteSet& s) { return Values(s.begin(), s.end()); }

inline Values to_values(const Set& s) { return Values(s.begin(), s.end()); }

inline bool same(const FiniteSet& engine, const Set& naive) {
  return Values(engine.begin(), engine.end()) == to_values(naive);
}

inline Set sums(const Values& a, const Values& b) {
  Set out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x + y);
  return out;
}

inline Set differences(const Values& a, const Values& b) {
  Set out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x - y);
  return out;
}

inline Set products(const Values& a, const Values& b) {
  Set out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x * y);
  return out;
}

inline Set ratios(const Values& a, const Values& b) {
  Set out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (!y.is_zero()) out.insert(x / y);
  return out;
}

/// R[A] = {(a-b)/(a-c) : a != c}.
inline Set r_triples(const Values& a) {
  Set out;
  for (const auto& x : a)
    for (const auto& y : a)
      for (const auto& z : a)
        if (x != z) out.insert((x - y) / (x - z));
  return out;
}

/// (A-A)(A-A)(A-A) over six independent variables.
inline Set ddd(const Values& a) {
  Set out;
  for (const auto& a1 : a)
    for (const auto& a2 : a)
      for (const auto& a3 : a)
        for (const auto& a4 : a)
          for (const auto& a5 : a)
            for (const auto& a6 : a) out.insert((a1 - a2) * (a3 - a4) * (a5 - a6));
  return out;
}

/// (A+A)/(A+A) + A/A.
inline Set ratio_sum_plus_ratio(const Values& a) {
  Set out;
  for (const auto& a1 : a)
    for (const auto& a2 : a)
      for (const auto& a3 : a)
        for (const auto& a4 : a) {
          if ((a3 + a4).is_zero()) continue;
          for (const auto& a5 : a)
            for (const auto& a6 : a) {
              if (a6.is_zero()) continue;
              out.insert((a1 + a2) / (a3 + a4) + a5 / a6);
            }
        }
  return out;
}

/// (AA+AA)/(A+A).
inline Set aa_sum_ratio(const Values& a) {
  Set out;
  for (const auto& a1 : a)
    for (const auto& a2 : a)
      for (const auto& a3 : a)
        for (const auto& a4 : a)
          for (const auto& a5 : a)
            for (const auto& a6 : a) {
              if ((a5 + a6).is_zero()) continue;
              out.insert((a1 * a2 + a3 * a4) / (a5 + a6));
            }
  return out;
}

/// (AA+A)/(AA+A).
inline Set aaa_ratio(const Values& a) {
  Set out;
  for (const auto& a1 : a)
    for (const auto& a2 : a)
      for (const auto& a3 : a)
        for (const auto& a4 : a)
          for (const auto& a5 : a)
            for (const auto& a6 : a) {
              if ((a4 * a5 + a6).is_zero()) continue;
              out.insert((a1 * a2 + a3) / (a4 * a5 + a6));
            }
  return out;
}

/// {(ab+c)/(ad+e)} with the same a in numerator and denominator.
inline Set five_var(const Values& a) {
  Set out;
  for (const auto& x : a)
    for (const auto& b : a)
      for (const auto& c : a)
        for (const auto& d : a)
          for (const auto& e : a) {
            if ((x * d + e).is_zero()) continue;
            out.insert((x * b + c) / (x * d + e));
          }
  return out;
}

}  // namespace expandlab::oracle
