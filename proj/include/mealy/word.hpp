#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mealy/error.hpp"

namespace mealy {

using Letter = std::uint32_t;

// Letters are stored in reading order: position 0 is the first letter read.
using Word = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
      throw error(errc::alphabet_too_small,
                  "alphabet needs at least 2 letters, got " + std::to_string(symbols_.size()));
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) {
        throw error(errc::invalid_argument, "empty letter symbol");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[i] == symbols_[j]) {
          throw error(errc::duplicate_symbol, "letter '" + symbols_[i] + "' listed twice");
        }
      }
    }
  }

  // Alphabet {0, 1, ..., size-1} with decimal symbols.
  static Alphabet numeric(std::size_t size) {
    std::vector<std::string> symbols;
    symbols.reserve(size);
    for (std::size_t i = 0; i < size; ++i) symbols.push_back(std::to_string(i));
    return Alphabet(std::move(symbols));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(Letter x) const { return symbols_.at(x); }

  std::optional<Letter> find(std::string_view token) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), token);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<Letter>(it - symbols_.begin());
  }

  Letter letter(std::string_view token) const {
    if (auto x = find(token)) return *x;
    throw error(errc::letter_out_of_range, "'" + std::string(token) + "' is not a letter");
  }

  bool single_char_symbols() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  // Single-character alphabets read "0110"; otherwise letters are
  // whitespace separated.
  Word parse_word(std::string_view text) const {
    Word w;
    if (single_char_symbols()) {
      for (char c : text) {
        if (c == ' ' || c == '\t') continue;
        w.push_back(letter(std::string_view(&c, 1)));
      }
      return w;
    }
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) w.push_back(letter(token));
    return w;
  }

  std::string format(std::span<const Letter> w) const {
    std::string out;
    const bool compact = single_char_symbols();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i > 0) out += ' ';
      out += symbol(w[i]);
    }
    return out;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

inline void check_word(const Alphabet& alphabet, std::span<const Letter> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet.size()) {
      throw error(errc::letter_out_of_range,
                  "letter index " + std::to_string(w[i]) + " at position " + std::to_string(i) +
                      " exceeds alphabet size " + std::to_string(alphabet.size()));
    }
  }
}

inline Word prefix(std::span<const Letter> w, std::size_t length) {
  length = std::min(length, w.size());
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(length));
}

// Index of w among the k^|w| words of its length, position 0 being the least
// significant digit.
inline std::uint64_t word_index(std::span<const Letter> w, std::size_t k) {
  std::uint64_t index = 0;
  for (std::size_t i = w.size(); i-- > 0;) index = index * k + w[i];
  return index;
}

inline Word word_from_index(std::uint64_t index, std::size_t length, std::size_t k) {
  Word w(length);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = static_cast<Letter>(index % k);
    index /= k;
  }
  return w;
}

inline std::uint64_t word_count(std::size_t k, std::size_t length) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) n *= k;
  return n;
}

// Smallest p with w = u^(|w|/p) for some u of length p.
inline std::size_t primitive_root_length(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = w[i] == w[i - p];
    if (repeats) return p;
  }
  return n;
}

inline bool is_primitive(std::span<const Letter> w) {
  return !w.empty() && primitive_root_length(w) == w.size();
}

}  // namespace mealy
