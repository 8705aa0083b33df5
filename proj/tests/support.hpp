#pragma once

// Test-only oracles. Nothing here calls minimize, find_ucs or the counting
// DP; every expected value is computed by enumerating words directly.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mealy/mealy.hpp"

namespace mealy::testing {

// Odometer arithmetic on lowest-digit-first binary words.
inline std::uint64_t binary_value(const Word& w) {
  std::uint64_t v = 0;
  for (std::size_t i = w.size(); i-- > 0;) v = 2 * v + w[i];
  return v;
}

inline Word binary_word(std::uint64_t value, std::size_t length) {
  Word w(length);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = static_cast<Letter>(value & 1);
    value >>= 1;
  }
  return w;
}

// A state is trivial iff every state reachable from it copies its input.
inline bool oracle_trivial(const Automaton& a, StateId q) {
  std::vector<bool> seen(a.state_count(), false);
  std::vector<StateId> stack{q};
  seen[q] = true;
  while (!stack.empty()) {
    const StateId p = stack.back();
    stack.pop_back();
    for (Letter x = 0; x < a.letter_count(); ++x) {
      if (a.output(p, x) != x) return false;
      const StateId r = a.next(p, x);
      if (!seen[r]) {
        seen[r] = true;
        stack.push_back(r);
      }
    }
  }
  return true;
}

// q lies on a UC iff following input-independent successors returns to q.
inline std::size_t oracle_uc_length(const Automaton& a, StateId q) {
  StateId p = q;
  for (std::size_t step = 1; step <= a.state_count(); ++step) {
    const StateId target = a.next(p, 0);
    for (Letter x = 1; x < a.letter_count(); ++x) {
      if (a.next(p, x) != target) return 0;
    }
    p = target;
    if (p == q) return step;
  }
  return 0;
}

template <class Predicate>
std::uint64_t count_words(std::size_t k, std::size_t level, Predicate keep) {
  std::uint64_t count = 0;
  const std::uint64_t total = word_count(k, level);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (keep(word_from_index(i, level, k))) ++count;
  }
  return count;
}

inline std::uint64_t brute_ns(const Transformation& g, std::size_t level) {
  const Automaton& a = g.automaton;
  return count_words(a.letter_count(), level, [&](const Word& w) {
    StateId q = g.initial;
    for (Letter x : w) q = a.next(q, x);
    return !oracle_trivial(a, q);
  });
}

inline std::uint64_t brute_nc(const Transformation& g, std::size_t level) {
  const Automaton& a = g.automaton;
  return count_words(a.letter_count(), level, [&](const Word& w) {
    StateId q = g.initial;
    if (oracle_uc_length(a, q) > 0) return false;
    for (Letter x : w) {
      q = a.next(q, x);
      if (oracle_uc_length(a, q) > 0) return false;
    }
    return true;
  });
}

// u and v flip every letter; 0 leads to u, 1 leads to v. No UC, and the
// pair is closed under both letters.
inline Automaton uv_core() {
  return Automaton(Alphabet::numeric(2), {"u", "v"}, {0, 1, 0, 1}, {1, 0, 1, 0});
}

inline Automaton random_invertible(std::mt19937_64& rng, std::size_t states, std::size_t k) {
  std::vector<std::string> names;
  std::vector<StateId> next(states * k);
  std::vector<Letter> output(states * k);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(states - 1));
  for (std::size_t q = 0; q < states; ++q) {
    names.push_back("s" + std::to_string(q));
    std::vector<Letter> perm(k);
    for (Letter x = 0; x < k; ++x) perm[x] = x;
    // Bias towards identity rows so trivial states and UCs actually occur.
    if (rng() % 3 != 0) std::shuffle(perm.begin(), perm.end(), rng);
    const bool unconditional = rng() % 3 == 0;
    const StateId fixed = pick(rng);
    for (Letter x = 0; x < k; ++x) {
      next[q * k + x] = unconditional ? fixed : pick(rng);
      output[q * k + x] = perm[x];
    }
  }
  return Automaton(Alphabet::numeric(k), std::move(names), std::move(next), std::move(output));
}

inline Automaton random_invertible(std::mt19937_64& rng) {
  const std::size_t states = 1 + rng() % 5;
  const std::size_t k = 2 + rng() % 2;
  return random_invertible(rng, states, k);
}

struct CorpusEntry {
  std::string label;
  Transformation g;
};

// Named machines plus every state of each. remark_chain is materialized at
// depth 9 and only its q_1 is included, which is sound up to length 9.
inline std::vector<CorpusEntry> named_corpus() {
  std::vector<CorpusEntry> out;
  auto all_states = [&](const std::string& label, const Automaton& a) {
    for (StateId q = 0; q < a.state_count(); ++q) {
      out.push_back({label + ":" + a.state_name(q), Transformation(a, q)});
    }
  };
  all_states("adding", adding_machine());
  all_states("flip_all", flip_all());
  all_states("flip_alternator", flip_alternator());
  all_states("uv", uv_core());
  out.push_back({"remark_chain:q_1", Transformation(remark_chain({9, std::nullopt}), "q_1")});
  return out;
}

inline std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    Automaton a = random_invertible(rng);
    const auto q = static_cast<StateId>(rng() % a.state_count());
    out.push_back({"random" + std::to_string(i), Transformation(std::move(a), q)});
  }
  return out;
}

// Finite-state corpus members over the binary alphabet.
inline std::vector<CorpusEntry> binary_corpus(std::size_t random_count, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  for (auto& e : named_corpus()) {
    if (e.g.alphabet().size() == 2) out.push_back(std::move(e));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    Automaton a = random_invertible(rng, 1 + rng() % 5, 2);
    const auto q = static_cast<StateId>(rng() % a.state_count());
    out.push_back({"random2_" + std::to_string(i), Transformation(std::move(a), q)});
  }
  return out;
}

}  // namespace mealy::testing
