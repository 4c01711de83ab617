#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cogrowth {

// A letter is a generator index k in 1..rank, or its inverse -k.
using Letter = std::int8_t;

class FreeGroupWord {
 public:
  FreeGroupWord() = default;
  FreeGroupWord(std::vector<Letter> letters);  // NOLINT(google-explicit-constructor)
  FreeGroupWord(std::initializer_list<int> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// No letter is immediately followed by its inverse.
  bool is_reduced() const;
  /// Reduced, and the last letter is not the inverse of the first.
  bool is_cyclically_reduced() const;

  FreeGroupWord inverse() const;
  /// Concatenation followed by free reduction.
  FreeGroupWord operator*(const FreeGroupWord& other) const;

  /// "x y X" style with x, y, z, w, ... and upper case for inverses
  /// (generators past 'w' print as g5, G5, ...).
  std::string to_string() const;
  /// Inverse of to_string; whitespace separated tokens.
  static FreeGroupWord parse(const std::string& text);

  friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;
  friend auto operator<=>(const FreeGroupWord&, const FreeGroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
FreeGroupWord freely_reduce(const std::vector<Letter>& letters);

struct CyclicDecomposition {
  FreeGroupWord core;            // cyclically reduced
  std::size_t conjugator_length;  // |u| in w = u core u^-1
};

/// Splits a reduced word as u * core * u^-1. Throws InvalidInput if w is not reduced.
CyclicDecomposition cyclic_reduce(const FreeGroupWord& w);

/// True iff w = x^2 for some x. The identity counts as a square.
bool is_square(const FreeGroupWord& w);

/// Largest q such that w = u^q. Throws InvalidInput on the empty word.
int proper_power_index(const FreeGroupWord& w);

/// Number of positive divisors of q >= 1.
int divisor_count(long q);

/// Upper bound on reduced words visited by a single profile enumeration.
inline constexpr std::uint64_t kEnumerationBudget = 50'000'000;

/// Number of reduced words of length t in the free group of the given rank:
/// 1 for t = 0, 2r (2r - 1)^{t-1} otherwise.
std::uint64_t reduced_word_count(int rank, int t);

/// Calls visit on every reduced word of length exactly t, in lexicographic
/// letter order. Throws BudgetExceeded if that would visit more than `budget`.
void for_each_reduced_word(int rank, int t, const std::function<void(const FreeGroupWord&)>& visit,
                           std::uint64_t budget = kEnumerationBudget);

}  // namespace cogrowth
