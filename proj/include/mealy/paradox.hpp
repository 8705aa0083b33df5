#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mealy/automaton.hpp"
#include "mealy/counting.hpp"
#include "mealy/error.hpp"
#include "mealy/periodic.hpp"
#include "mealy/word.hpp"

namespace mealy {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::size_t minimal_block_factor = 8;

enum class ReportKind { ns_blocks, nc_period_classes };

// Counting certificate for one level: the coins the h_i can import into a
// region against a quarter of the region's size. All comparisons are exact.
struct ParadoxReport {
  ReportKind kind = ReportKind::ns_blocks;
  std::vector<Transformation> transformations;
  std::size_t level = 0;
  std::optional<std::size_t> block_factor;  // s, block reports only
  std::vector<BigInt> per_item;
  BigInt aggregate;
  Rational threshold;
  bool satisfied = false;
  std::optional<BigInt> period_classes;  // |T|, period-class reports only
  std::optional<std::size_t> period_bound;

  std::string conclusion() const {
    if (kind == ReportKind::ns_blocks) {
      return satisfied ? "coins imported into F from outside F' <= |F|/4; F ends with at most "
                         "3/2 |F| coins, so doubling fails at this level"
                       : "bound not reached at this level";
    }
    return satisfied ? "coins imported into each period class <= |X|^l / 4; the class cannot "
                       "double its coins at this level"
                     : "bound not reached at this level";
  }
};

namespace detail {

inline void check_family(std::span<const Transformation> hs) {
  if (hs.empty()) throw error(errc::invalid_argument, "need at least one transformation");
  for (const auto& h : hs) {
    if (!(h.alphabet() == hs.front().alphabet())) {
      throw error(errc::alphabet_mismatch, "all transformations must share one alphabet");
    }
  }
}

}  // namespace detail

// s * sum NS(h_i, l) <= s |X|^l / 4. NS(h_i, l) = NS(h_i^-1, l), so the
// counts are taken on the h_i themselves.
inline ParadoxReport theorem1_report(std::span<const Transformation> hs, std::size_t level,
                                     std::size_t block_factor = minimal_block_factor) {
  detail::check_family(hs);
  if (block_factor < minimal_block_factor) {
    throw error(errc::block_factor_too_small,
                "block factor must be at least 8, got " + std::to_string(block_factor));
  }
  ParadoxReport r;
  r.kind = ReportKind::ns_blocks;
  r.transformations.assign(hs.begin(), hs.end());
  r.level = level;
  r.block_factor = block_factor;
  BigInt sum = 0;
  for (const auto& h : hs) {
    r.per_item.push_back(ns(h, level));
    sum += r.per_item.back();
  }
  r.aggregate = sum * block_factor;
  r.threshold = Rational(BigInt(block_factor) * power(hs.front().alphabet().size(), level), 4);
  r.satisfied = Rational(r.aggregate) <= r.threshold;
  return r;
}

// Smallest level in 1..max_level where the block bound holds.
inline std::optional<std::size_t> find_minimal_level(std::span<const Transformation> hs,
                                                     std::size_t block_factor,
                                                     std::size_t max_level) {
  for (std::size_t l = 1; l <= max_level; ++l) {
    if (theorem1_report(hs, l, block_factor).satisfied) return l;
  }
  return std::nullopt;
}

// sum NC(h_i, l) <= |X|^l / 4 per period class. Both the imported coins and
// the class population carry the factor |T| = count_periods(k, m), so the
// comparison is made per class and |T| is reported alongside.
inline ParadoxReport theorem2_report(std::span<const Transformation> hs, std::size_t level,
                                     std::size_t period_bound) {
  detail::check_family(hs);
  if (period_bound == 0) throw error(errc::period_bound_invalid, "period bound must be positive");
  for (const auto& h : hs) {
    for (std::size_t n : reachable_uc_lengths(h, level)) {
      if (period_bound % n != 0) {
        throw error(errc::period_bound_invalid,
                    "period bound " + std::to_string(period_bound) +
                        " is not a multiple of UC length " + std::to_string(n) +
                        " reachable from '" + h.name() + "'");
      }
    }
  }
  ParadoxReport r;
  r.kind = ReportKind::nc_period_classes;
  r.transformations.assign(hs.begin(), hs.end());
  r.level = level;
  r.period_bound = period_bound;
  BigInt sum = 0;
  for (const auto& h : hs) {
    r.per_item.push_back(nc(h, level));
    sum += r.per_item.back();
  }
  const std::size_t k = hs.front().alphabet().size();
  r.aggregate = sum;
  r.threshold = Rational(power(k, level), 4);
  r.satisfied = Rational(r.aggregate) <= r.threshold;
  r.period_classes = count_periods(k, period_bound);
  return r;
}

// ---------------------------------------------------------------------------
// Coin audit
// ---------------------------------------------------------------------------

struct CoinAudit {
  std::size_t level = 0;
  std::vector<Transformation> transformations;
  // assignment[word_index(v)] = i means v is in A_i (0-based).
  std::vector<std::size_t> assignment;
  std::vector<std::uint64_t> coin_counts;  // by word index
  std::vector<Word> deficit;               // words with fewer than 2 coins

  std::uint64_t total_coins() const {
    std::uint64_t sum = 0;
    for (auto c : coin_counts) sum += c;
    return sum;
  }
  bool doubling() const { return deficit.empty(); }
};

// Every word of X^L starts with one coin; h_i sends the coin of each v in
// A_i to h_i(v). Reports which words end with fewer than two coins.
inline CoinAudit coin_audit(std::size_t level, std::span<const Transformation> hs,
                            std::span<const std::vector<Word>> parts) {
  detail::check_family(hs);
  if (parts.size() != hs.size()) {
    throw error(errc::invalid_argument, "need one part per transformation");
  }
  const std::size_t k = hs.front().alphabet().size();
  const std::uint64_t total = word_count(k, level);
  if (total > detail::enumeration_limit) {
    throw error(errc::invalid_argument, "audit level too large");
  }
  constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
  CoinAudit audit;
  audit.level = level;
  audit.transformations.assign(hs.begin(), hs.end());
  audit.assignment.assign(total, unassigned);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const Word& v : parts[i]) {
      if (v.size() != level) {
        throw error(errc::invalid_argument, "partition word '" +
                                                hs.front().alphabet().format(v) +
                                                "' has the wrong length");
      }
      check_word(hs.front().alphabet(), v);
      auto& slot = audit.assignment[word_index(v, k)];
      if (slot != unassigned) {
        throw error(errc::partition_overlap,
                    "word '" + hs.front().alphabet().format(v) + "' is assigned twice");
      }
      slot = i;
    }
  }
  for (std::uint64_t j = 0; j < total; ++j) {
    if (audit.assignment[j] == unassigned) {
      throw error(errc::partition_not_total,
                  "word '" + hs.front().alphabet().format(word_from_index(j, level, k)) +
                      "' is in no part");
    }
  }
  audit.coin_counts.assign(total, 0);
  for (std::uint64_t j = 0; j < total; ++j) {
    const Word v = word_from_index(j, level, k);
    ++audit.coin_counts[word_index(mealy::apply(hs[audit.assignment[j]], v), k)];
  }
  for (std::uint64_t j = 0; j < total; ++j) {
    if (audit.coin_counts[j] < 2) audit.deficit.push_back(word_from_index(j, level, k));
  }
  return audit;
}

// Parts A_1..A_d from a per-word assignment listed in word-index order.
inline std::vector<std::vector<Word>> parts_from_assignment(std::span<const std::size_t> assignment,
                                                            std::size_t parts, std::size_t level,
                                                            std::size_t k) {
  std::vector<std::vector<Word>> out(parts);
  for (std::uint64_t j = 0; j < assignment.size(); ++j) {
    if (assignment[j] >= parts) {
      throw error(errc::invalid_argument, "assignment names part " +
                                              std::to_string(assignment[j] + 1) + " of " +
                                              std::to_string(parts));
    }
    out[assignment[j]].push_back(word_from_index(j, level, k));
  }
  return out;
}

}  // namespace mealy
