#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/counting.hpp"
#include "mealy/error.hpp"
#include "mealy/word.hpp"

namespace mealy {

// prefix . period^omega. The prefix length is the presentation level and is
// part of the value; the period is always stored primitive and is read
// positionally from the letter after the prefix.
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord() = default;

  EventuallyPeriodicWord(Word prefix, Word period) : prefix_(std::move(prefix)) {
    if (period.empty()) throw error(errc::invalid_argument, "period must be non-empty");
    period.resize(primitive_root_length(period));
    period_ = std::move(period);
  }

  const Word& prefix() const noexcept { return prefix_; }
  const Word& period() const noexcept { return period_; }
  std::size_t level() const noexcept { return prefix_.size(); }
  std::size_t period_length() const noexcept { return period_.size(); }

  Letter at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  Word take(std::size_t n) const {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
    return w;
  }

  // Shortest prefix after which the word is periodic.
  std::size_t minimal_level() const {
    std::size_t p = prefix_.size();
    while (p > 0 && at(p - 1) == at(p - 1 + period_.size())) --p;
    return p;
  }

  bool is_almost_periodic_at(std::size_t level) const { return level >= minimal_level(); }

  // The same infinite word with its prefix cut at `level`.
  EventuallyPeriodicWord presented_at(std::size_t level) const {
    if (!is_almost_periodic_at(level)) {
      throw error(errc::invalid_argument, "word is not " + std::to_string(level) +
                                              "-almost periodic");
    }
    Word period(period_.size());
    for (std::size_t j = 0; j < period.size(); ++j) period[j] = at(level + j);
    return EventuallyPeriodicWord(take(level), std::move(period));
  }

  bool same_infinite_word(const EventuallyPeriodicWord& other) const {
    if (period_.size() != other.period_.size()) return false;
    const std::size_t level = std::max(minimal_level(), other.minimal_level());
    return presented_at(level) == other.presented_at(level);
  }

  bool operator==(const EventuallyPeriodicWord&) const = default;

 private:
  Word prefix_;
  Word period_;
};

inline void check_word(const Alphabet& alphabet, const EventuallyPeriodicWord& w) {
  check_word(alphabet, w.prefix());
  check_word(alphabet, w.period());
}

// Runs g over the infinite word exactly. After the prefix, the pair
// (state, position in period) is eventually periodic; the output prefix
// covers the input prefix plus the transient before the first repeated pair.
inline EventuallyPeriodicWord apply(const Transformation& g, const EventuallyPeriodicWord& w) {
  const Automaton& a = g.automaton;
  a.require_finite("applying to an infinite word");
  check_word(a.alphabet(), w);
  Word out = apply(a, g.initial, w.prefix());
  StateId q = run(a, g.initial, w.prefix());

  const std::size_t t = w.period_length();
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first_visit(a.state_count() * t, unseen);
  Word tail;
  for (std::size_t step = 0;; ++step) {
    const std::size_t phase = step % t;
    std::size_t& seen = first_visit[q * t + phase];
    if (seen != unseen) {
      Word period(tail.begin() + static_cast<std::ptrdiff_t>(seen), tail.end());
      out.insert(out.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(seen));
      return EventuallyPeriodicWord(std::move(out), std::move(period));
    }
    seen = step;
    const Letter x = w.period()[phase];
    tail.push_back(a.output(q, x));
    q = a.next(q, x);
  }
}

inline EventuallyPeriodicWord apply_to_ep_word(const Transformation& g,
                                               const EventuallyPeriodicWord& w) {
  return apply(g, w);
}

struct Lemma1Verdict {
  bool applicable = false;
  bool holds = false;
  std::size_t period_length = 0;    // t
  std::size_t cycle_length = 0;     // c
  std::size_t observed_period = 0;  // period of g(w) at the same level
  std::optional<EventuallyPeriodicWord> image;
};

// If w (presented at `level`) leads g into a UC of length c within `level`
// steps, g(w) must be level-almost periodic with period dividing lcm(t, c).
inline Lemma1Verdict check_lemma1(const Transformation& g, const EventuallyPeriodicWord& w,
                                  std::size_t level) {
  if (w.level() != level) {
    throw error(errc::invalid_argument, "word is presented at level " +
                                            std::to_string(w.level()) + ", expected " +
                                            std::to_string(level));
  }
  Lemma1Verdict v;
  v.period_length = w.period_length();
  const auto lengths = uc_lengths(g.automaton);
  const StateId reached = run(g.automaton, g.initial, w.prefix());
  if (lengths[reached] == 0) return v;
  v.applicable = true;
  v.cycle_length = lengths[reached];
  EventuallyPeriodicWord image = apply(g, w);
  if (image.is_almost_periodic_at(level)) {
    image = image.presented_at(level);
    v.observed_period = image.period_length();
    v.holds = std::lcm(v.period_length, v.cycle_length) % v.observed_period == 0;
  } else {
    v.observed_period = image.period_length();
  }
  v.image = std::move(image);
  return v;
}

struct Lemma2Verdict {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // samples in the NC-set
  std::size_t failed = 0;
  std::vector<EventuallyPeriodicWord> failures;
};

// g maps level-almost periodic words whose period divides m, and whose
// prefix brings g into a UC, back into the same class. `period_bound`
// stands in for c! and must be a multiple of every UC length g can reach.
inline Lemma2Verdict check_lemma2(const Transformation& g, std::size_t level,
                                  std::size_t cycle_bound, std::size_t period_bound,
                                  std::span<const EventuallyPeriodicWord> samples) {
  const auto reachable = reachable_uc_lengths(g, level);
  const std::size_t longest = reachable.empty() ? 0 : *reachable.rbegin();
  if (cycle_bound < longest) {
    throw error(errc::cycle_bound_too_small, "cycle bound " + std::to_string(cycle_bound) +
                                                 " is below the reachable UC length " +
                                                 std::to_string(longest));
  }
  if (period_bound == 0) throw error(errc::period_bound_invalid, "period bound must be positive");
  for (std::size_t n : reachable) {
    if (period_bound % n != 0) {
      throw error(errc::period_bound_invalid, "period bound " + std::to_string(period_bound) +
                                                  " is not a multiple of UC length " +
                                                  std::to_string(n));
    }
  }
  const auto lengths = uc_lengths(g.automaton);
  Lemma2Verdict v;
  for (const auto& w : samples) {
    if (w.level() != level || period_bound % w.period_length() != 0) {
      throw error(errc::invalid_argument, "sample is outside the class at level " +
                                              std::to_string(level) + " with period bound " +
                                              std::to_string(period_bound));
    }
    if (lengths[run(g.automaton, g.initial, w.prefix())] == 0) {
      ++v.skipped;
      continue;
    }
    ++v.checked;
    const auto image = apply(g, w);
    const bool in_class = image.is_almost_periodic_at(level) &&
                          period_bound % image.presented_at(level).period_length() == 0;
    if (!in_class) {
      ++v.failed;
      v.failures.push_back(w);
    }
  }
  return v;
}

// Number of primitive words over k letters whose length divides m:
// sum over d | m of the Moebius-inverted count sum_{e | d} mu(e) k^(d/e).
inline BigInt count_periods(std::size_t k, std::size_t m) {
  if (m == 0) throw error(errc::invalid_argument, "divisor bound must be positive");
  auto moebius = [](std::size_t n) {
    int sign = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
  };
  BigInt total = 0;
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    for (std::size_t e = 1; e <= d; ++e) {
      if (d % e != 0) continue;
      const int mu = moebius(e);
      if (mu > 0) total += power(k, d / e);
      if (mu < 0) total -= power(k, d / e);
    }
  }
  return total;
}

// Size of the slice of P_(T) at `level` whose first `level` letters keep g
// out of every UC. Explicit enumeration; small levels only.
inline BigInt count_nc_in_period_class(const Transformation& g, std::size_t level,
                                       const Word& period) {
  const auto lengths = uc_lengths(g.automaton);
  const std::size_t k = g.automaton.letter_count();
  const std::uint64_t total = word_count(k, level);
  BigInt count = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const EventuallyPeriodicWord w(word_from_index(i, level, k), period);
    if (lengths[run(g.automaton, g.initial, w.take(level))] == 0) ++count;
  }
  return count;
}

}  // namespace mealy
