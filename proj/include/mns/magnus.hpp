#pragma once

// Reduced words in a free group of finite rank and their Magnus images
// x_i -> 1 + x_i in truncated power series over the free monoid.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mns/series.hpp"

namespace mns {

struct Letter {
  std::uint8_t symbol = 0;
  std::int8_t sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A reduced word; no letter is adjacent to its inverse.
class FreeWord {
 public:
  explicit FreeWord(int alphabet) : alphabet_(alphabet) {}

  /// Letters "a".."z", inverse marked with "'", e.g. "aba'b'". The empty
  /// word may be written "" or "1". Input is reduced.
  static FreeWord parse(std::string_view text, int alphabet);

  int alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool uses_inverses() const;

  FreeWord inverse() const;
  std::string to_string() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  friend FreeWord word_reduce(int alphabet, std::span<const Letter> raw);
  int alphabet_;
  std::vector<Letter> letters_;
};

/// Free cancellation with a stack; the result does not depend on the order
/// in which cancellations are performed.
FreeWord word_reduce(int alphabet, std::span<const Letter> raw);
/// Reduced product uv.
FreeWord word_multiply(const FreeWord& u, const FreeWord& v);

/// All reduced words of length <= max_length, each once, by length and then
/// lexicographically with a < a' < b < b' < ...
std::vector<FreeWord> enumerate_reduced_words(int alphabet, int max_length);
/// 1 + sum_{l=1..L} 2k (2k-1)^(l-1)
std::uint64_t reduced_word_count(int alphabet, int max_length);

SeriesContext magnus_context(int alphabet, int degree, const Field& field = Field::rationals());

/// The image of w under x_i -> 1 + x_i, x_i^-1 -> sum_{j<=D} (-x_i)^j,
/// multiplied left to right at degree D.
Series magnus_image(const FreeWord& w, int degree, const Field& field = Field::rationals());

struct InjectivityReport {
  int alphabet = 0;
  int max_length = 0;
  int degree = 0;
  std::size_t words = 0;
  std::size_t distinct_images = 0;
  std::optional<std::pair<FreeWord, FreeWord>> collision;

  bool injective() const { return !collision.has_value(); }
};

/// Pairwise distinctness of the degree-D images of every reduced word of
/// length <= L (requires D >= L).
InjectivityReport verify_magnus_injectivity(int alphabet, int max_length, int degree);

/// Distinctness of the images of an explicit word list.
InjectivityReport check_magnus_distinct(const std::vector<FreeWord>& words, int degree);

}  // namespace mns
