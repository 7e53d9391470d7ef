#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>

#include "falin/errors.hpp"

namespace falin {

/// Largest supported number of generators; letters are packed into chars.
inline constexpr std::size_t max_rank = 127;

/// Element of the free monoid on z_1..z_n. Letters are one-based generator
/// indices; the empty word is the unit. Ordered graded-lexicographically
/// (shorter words first, then letter by letter with z1 < z2 < ...).
class Word {
public:
  Word() = default;

  Word(std::initializer_list<int> letters) {
    for (int k : letters)
      push_back(k);
  }

  static Word letter(int k) {
    Word w;
    w.push_back(k);
    return w;
  }

  void push_back(int k) {
    if (k < 1 || static_cast<std::size_t>(k) > max_rank)
      throw DomainError("generator index " + std::to_string(k) + " out of range");
    letters_.push_back(static_cast<char>(k));
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const noexcept { return static_cast<int>(letters_[i]); }

  int max_letter() const noexcept {
    int m = 0;
    for (char c : letters_)
      m = std::max(m, static_cast<int>(c));
    return m;
  }

  /// Raw letter string, usable for plain lexicographic sorting.
  const std::string& key() const noexcept { return letters_; }

  /// Copy with the letter at pos replaced by the word piece (possibly empty).
  Word replaced(std::size_t pos, const Word& piece) const {
    Word w;
    w.letters_.reserve(size() + piece.size());
    w.letters_.append(letters_, 0, pos);
    w.letters_ += piece.letters_;
    w.letters_.append(letters_, pos + 1);
    return w;
  }

  friend Word operator+(const Word& a, const Word& b) {
    Word w;
    w.letters_.reserve(a.size() + b.size());
    w.letters_ = a.letters_;
    w.letters_ += b.letters_;
    return w;
  }

  friend bool operator==(const Word&, const Word&) = default;

  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size() <=> b.size(); c != 0)
      return c;
    return a.letters_.compare(b.letters_) <=> 0;
  }

private:
  std::string letters_;
};

} // namespace falin
