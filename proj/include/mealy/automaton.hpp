#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "mealy/error.hpp"
#include "mealy/word.hpp"

namespace mealy {

using StateId = std::uint32_t;

// Unvalidated tables keyed by symbol and state name, as read from a file.
struct RawTransition {
  std::string input;
  std::string next;
  std::string output;
};

struct RawState {
  std::string name;
  std::vector<RawTransition> transitions;
};

struct RawAutomaton {
  std::vector<std::string> alphabet;
  std::vector<RawState> states;
};

// An invertible letter-to-letter transducer (X, Q, pi, lambda). Immutable
// once constructed; every constructor checks totality and that each output
// row is a permutation of the alphabet.
class Automaton {
 public:
  Automaton() = default;

  Automaton(Alphabet alphabet, std::vector<std::string> state_names, std::vector<StateId> next,
            std::vector<Letter> output, std::vector<std::size_t> horizon = {})
      : alphabet_(std::move(alphabet)),
        names_(std::move(state_names)),
        next_(std::move(next)),
        output_(std::move(output)),
        horizon_(std::move(horizon)) {
    check();
  }

  static Automaton validate(const RawAutomaton& raw);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  std::size_t state_count() const noexcept { return names_.size(); }

  StateId next(StateId q, Letter x) const { return next_[q * letter_count() + x]; }
  Letter output(StateId q, Letter x) const { return output_[q * letter_count() + x]; }

  std::span<const StateId> next_row(StateId q) const {
    return {next_.data() + q * letter_count(), letter_count()};
  }
  std::span<const Letter> output_row(StateId q) const {
    return {output_.data() + q * letter_count(), letter_count()};
  }

  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }

  std::optional<StateId> find_state(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<StateId>(it - names_.begin());
  }

  StateId state(std::string_view name) const {
    if (auto q = find_state(name)) return *q;
    throw error(errc::unknown_state, "no state named '" + std::string(name) + "'");
  }

  // Depth-bounded materializations of infinite families only describe the
  // family faithfully for inputs up to a per-state horizon. The horizon list
  // is empty for genuinely finite automata.
  bool is_materialized() const noexcept { return !horizon_.empty(); }
  const std::vector<std::size_t>& horizons() const noexcept { return horizon_; }

  std::optional<std::size_t> sound_length(StateId q) const {
    if (horizon_.empty()) return std::nullopt;
    return horizon_.at(q);
  }

  void require_sound(StateId q, std::size_t length) const {
    if (auto h = sound_length(q); h && length > *h) {
      throw error(errc::not_materializable,
                  "materialized state '" + names_.at(q) + "' is sound up to length " +
                      std::to_string(*h) + ", requested " + std::to_string(length));
    }
  }

  void require_finite(std::string_view operation) const {
    if (is_materialized()) {
      throw error(errc::not_materializable,
                  std::string(operation) + " needs a finite automaton, not a materialized family");
    }
  }

  bool operator==(const Automaton&) const = default;

 private:
  void check() const;

  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<StateId> next_;
  std::vector<Letter> output_;
  std::vector<std::size_t> horizon_;
};

inline void Automaton::check() const {
  const std::size_t k = alphabet_.size();
  if (k < 2) throw error(errc::alphabet_too_small, "alphabet needs at least 2 letters");
  if (names_.empty()) throw error(errc::invalid_argument, "automaton has no states");
  const std::size_t n = names_.size();
  if (next_.size() != n * k || output_.size() != n * k) {
    throw error(errc::missing_transition, "tables must have one entry per state and letter");
  }
  if (!horizon_.empty() && horizon_.size() != n) {
    throw error(errc::invalid_argument, "horizon list must have one entry per state");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw error(errc::invalid_argument, "duplicate state '" + names_[i] + "'");
      }
    }
  }
  for (StateId q = 0; q < n; ++q) {
    std::vector<bool> seen(k, false);
    for (Letter x = 0; x < k; ++x) {
      const StateId p = next(q, x);
      const Letter y = output(q, x);
      if (p >= n) {
        throw error(errc::unknown_state, "transition from '" + names_[q] + "' on '" +
                                             alphabet_.symbol(x) + "' leaves the state set");
      }
      if (y >= k) {
        throw error(errc::letter_out_of_range, "output of '" + names_[q] + "' on '" +
                                                   alphabet_.symbol(x) + "' is not a letter");
      }
      if (seen[y]) {
        throw error(errc::non_bijective_output, "outputs of state '" + names_[q] +
                                                    "' repeat letter '" + alphabet_.symbol(y) +
                                                    "'");
      }
      seen[y] = true;
    }
  }
}

inline Automaton Automaton::validate(const RawAutomaton& raw) {
  Alphabet alphabet(raw.alphabet);
  const std::size_t k = alphabet.size();
  std::vector<std::string> names;
  for (const auto& s : raw.states) names.push_back(s.name);
  if (names.empty()) throw error(errc::invalid_argument, "automaton has no states");

  std::map<std::string, StateId, std::less<>> index;
  for (StateId q = 0; q < names.size(); ++q) {
    if (!index.emplace(names[q], q).second) {
      throw error(errc::invalid_argument, "duplicate state '" + names[q] + "'");
    }
  }

  constexpr StateId unset = std::numeric_limits<StateId>::max();
  std::vector<StateId> next(names.size() * k, unset);
  std::vector<Letter> output(names.size() * k, 0);
  for (StateId q = 0; q < names.size(); ++q) {
    for (const auto& t : raw.states[q].transitions) {
      const Letter x = alphabet.letter(t.input);
      auto target = index.find(t.next);
      if (target == index.end()) {
        throw error(errc::unknown_state, "state '" + names[q] + "' on '" + t.input +
                                             "' goes to undefined state '" + t.next + "'");
      }
      if (next[q * k + x] != unset) {
        throw error(errc::invalid_argument,
                    "state '" + names[q] + "' defines letter '" + t.input + "' twice");
      }
      next[q * k + x] = target->second;
      output[q * k + x] = alphabet.letter(t.output);
    }
    for (Letter x = 0; x < k; ++x) {
      if (next[q * k + x] == unset) {
        throw error(errc::missing_transition, "state '" + names[q] + "' has no transition on '" +
                                                  alphabet.symbol(x) + "'");
      }
    }
  }
  return Automaton(std::move(alphabet), std::move(names), std::move(next), std::move(output));
}

// An automaton with a fixed initial state; acts on words as a tree
// automorphism.
struct Transformation {
  Automaton automaton;
  StateId initial = 0;

  Transformation() = default;
  Transformation(Automaton a, StateId q) : automaton(std::move(a)), initial(q) {
    if (initial >= automaton.state_count()) {
      throw error(errc::unknown_state, "initial state index out of range");
    }
  }
  Transformation(Automaton a, std::string_view q) : automaton(std::move(a)) {
    initial = automaton.state(q);
  }

  const Alphabet& alphabet() const noexcept { return automaton.alphabet(); }
  const std::string& name() const { return automaton.state_name(initial); }
};

// Streaming form: consumes one letter, emits one letter.
class Runner {
 public:
  Runner(const Automaton& automaton, StateId start) : automaton_(&automaton), state_(start) {}

  Letter step(Letter x) {
    if (x >= automaton_->letter_count()) {
      throw error(errc::letter_out_of_range, "letter index " + std::to_string(x));
    }
    const Letter y = automaton_->output(state_, x);
    state_ = automaton_->next(state_, x);
    return y;
  }

  StateId state() const noexcept { return state_; }

 private:
  const Automaton* automaton_;
  StateId state_;
};

inline StateId run(const Automaton& a, StateId q, std::span<const Letter> w) {
  check_word(a.alphabet(), w);
  for (Letter x : w) q = a.next(q, x);
  return q;
}

inline Word apply(const Automaton& a, StateId q, std::span<const Letter> w) {
  check_word(a.alphabet(), w);
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = a.output(q, w[i]);
    q = a.next(q, w[i]);
  }
  return out;
}

// Templated on the word so that it outranks std::apply, which argument
// dependent lookup finds whenever the word is a std::vector.
template <class G, class W>
  requires std::same_as<std::remove_cvref_t<G>, Transformation> &&
           std::convertible_to<W&&, std::span<const Letter>>
Word apply(G&& g, W&& w) {
  return apply(g.automaton, g.initial, std::span<const Letter>(w));
}

inline std::string inverse_name(const std::string& name) {
  constexpr std::string_view suffix = "^-1";
  if (name.size() > suffix.size() && name.ends_with(suffix)) {
    return name.substr(0, name.size() - suffix.size());
  }
  return name + std::string(suffix);
}

// Swaps input and output labels; state q becomes q^-1 with the same index.
inline Automaton invert(const Automaton& a) {
  const std::size_t k = a.letter_count();
  const std::size_t n = a.state_count();
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& s : a.state_names()) names.push_back(inverse_name(s));
  std::vector<StateId> next(n * k);
  std::vector<Letter> output(n * k);
  for (StateId q = 0; q < n; ++q) {
    for (Letter x = 0; x < k; ++x) {
      const Letter y = a.output(q, x);
      next[q * k + y] = a.next(q, x);
      output[q * k + y] = x;
    }
  }
  return Automaton(a.alphabet(), std::move(names), std::move(next), std::move(output),
                   a.horizons());
}

inline Transformation invert(const Transformation& g) {
  return Transformation(invert(g.automaton), g.initial);
}

namespace detail {

constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

// Horizon of a product state; empty when both factors are finite.
inline std::vector<std::size_t> pair_horizons(
    const Automaton& a, const Automaton& b,
    std::span<const std::pair<StateId, StateId>> pairs) {
  if (!a.is_materialized() && !b.is_materialized()) return {};
  std::vector<std::size_t> out;
  out.reserve(pairs.size());
  for (auto [q, s] : pairs) {
    out.push_back(std::min(a.sound_length(q).value_or(unbounded),
                           b.sound_length(s).value_or(unbounded)));
  }
  return out;
}

inline std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

}  // namespace detail

// Full product automaton: state (q, s) has index q * |S| + s and acts as
// the q-machine followed by the s-machine.
inline Automaton compose(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw error(errc::alphabet_mismatch, "composed automata must share one alphabet");
  }
  const std::size_t k = a.letter_count();
  const std::size_t na = a.state_count();
  const std::size_t nb = b.state_count();
  std::vector<std::string> names;
  names.reserve(na * nb);
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<StateId> next(na * nb * k);
  std::vector<Letter> output(na * nb * k);
  for (StateId q = 0; q < na; ++q) {
    for (StateId s = 0; s < nb; ++s) {
      const std::size_t pair = q * nb + s;
      pairs.emplace_back(q, s);
      names.push_back(detail::pair_name(a.state_name(q), b.state_name(s)));
      for (Letter x = 0; x < k; ++x) {
        const Letter mid = a.output(q, x);
        next[pair * k + x] = static_cast<StateId>(a.next(q, x) * nb + b.next(s, mid));
        output[pair * k + x] = b.output(s, mid);
      }
    }
  }
  return Automaton(a.alphabet(), std::move(names), std::move(next), std::move(output),
                   detail::pair_horizons(a, b, pairs));
}

// Product restricted to pairs reachable from (g.initial, h.initial); the
// result acts as g first, then h.
inline Transformation compose(const Transformation& g, const Transformation& h) {
  const Automaton& a = g.automaton;
  const Automaton& b = h.automaton;
  if (!(a.alphabet() == b.alphabet())) {
    throw error(errc::alphabet_mismatch, "composed automata must share one alphabet");
  }
  const std::size_t k = a.letter_count();
  const std::size_t nb = b.state_count();
  std::map<std::size_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> order;
  std::deque<std::size_t> queue;
  auto visit = [&](StateId q, StateId s) {
    const std::size_t key = q * nb + s;
    auto [it, fresh] = index.emplace(key, static_cast<StateId>(order.size()));
    if (fresh) {
      order.emplace_back(q, s);
      queue.push_back(key);
    }
    return it->second;
  };
  visit(g.initial, h.initial);
  while (!queue.empty()) {
    const std::size_t key = queue.front();
    queue.pop_front();
    const auto q = static_cast<StateId>(key / nb);
    const auto s = static_cast<StateId>(key % nb);
    for (Letter x = 0; x < k; ++x) visit(a.next(q, x), b.next(s, a.output(q, x)));
  }

  const std::size_t n = order.size();
  std::vector<std::string> names;
  std::vector<StateId> next(n * k);
  std::vector<Letter> output(n * k);
  for (StateId i = 0; i < n; ++i) {
    const auto [q, s] = order[i];
    names.push_back(detail::pair_name(a.state_name(q), b.state_name(s)));
    for (Letter x = 0; x < k; ++x) {
      const Letter mid = a.output(q, x);
      next[i * k + x] = index.at(a.next(q, x) * nb + b.next(s, mid));
      output[i * k + x] = b.output(s, mid);
    }
  }
  return Transformation(Automaton(a.alphabet(), std::move(names), std::move(next),
                                  std::move(output), detail::pair_horizons(a, b, order)),
                        0);
}

struct Minimized {
  Automaton automaton;
  // Old state index -> class index in `automaton`.
  std::vector<StateId> class_of;
};

// Quotient by the coarsest behavioral congruence. Classes start as groups
// of equal output rows and are split by successor classes until stable;
// each class takes the name of its lowest-index member and classes are
// ordered by that member.
inline Minimized minimize(const Automaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.letter_count();

  std::vector<StateId> block(n);
  {
    std::map<std::vector<Letter>, StateId> by_row;
    for (StateId q = 0; q < n; ++q) {
      auto row = a.output_row(q);
      auto [it, fresh] = by_row.emplace(std::vector<Letter>(row.begin(), row.end()),
                                        static_cast<StateId>(by_row.size()));
      block[q] = it->second;
    }
  }
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<StateId>, StateId> by_signature;
    std::vector<StateId> refined(n);
    for (StateId q = 0; q < n; ++q) {
      std::vector<StateId> signature;
      signature.reserve(k + 1);
      signature.push_back(block[q]);
      for (Letter x = 0; x < k; ++x) signature.push_back(block[a.next(q, x)]);
      auto [it, fresh] =
          by_signature.emplace(std::move(signature), static_cast<StateId>(by_signature.size()));
      refined[q] = it->second;
    }
    const std::size_t count = by_signature.size();
    block = std::move(refined);
    if (count == blocks) break;
    blocks = count;
  }

  // Renumber classes by lowest member.
  std::vector<StateId> renumber(n, std::numeric_limits<StateId>::max());
  std::vector<StateId> representative;
  for (StateId q = 0; q < n; ++q) {
    if (renumber[block[q]] == std::numeric_limits<StateId>::max()) {
      renumber[block[q]] = static_cast<StateId>(representative.size());
      representative.push_back(q);
    }
  }
  std::vector<StateId> class_of(n);
  for (StateId q = 0; q < n; ++q) class_of[q] = renumber[block[q]];

  const std::size_t m = representative.size();
  std::vector<std::size_t> horizon;
  if (a.is_materialized()) {
    horizon.assign(m, detail::unbounded);
    for (StateId q = 0; q < n; ++q) {
      horizon[class_of[q]] = std::min(horizon[class_of[q]], *a.sound_length(q));
    }
  }
  std::vector<std::string> names;
  std::vector<StateId> next(m * k);
  std::vector<Letter> output(m * k);
  for (StateId c = 0; c < m; ++c) {
    const StateId q = representative[c];
    names.push_back(a.state_name(q));
    for (Letter x = 0; x < k; ++x) {
      next[c * k + x] = class_of[a.next(q, x)];
      output[c * k + x] = a.output(q, x);
    }
  }
  return {Automaton(a.alphabet(), std::move(names), std::move(next), std::move(output),
                    std::move(horizon)),
          std::move(class_of)};
}

// Identity output row and self-loops on every letter.
inline bool is_trivial_sink(const Automaton& a, StateId q) {
  for (Letter x = 0; x < a.letter_count(); ++x) {
    if (a.output(q, x) != x || a.next(q, x) != q) return false;
  }
  return true;
}

inline bool is_trivial_state(const Automaton& a, StateId q) {
  if (q >= a.state_count()) throw error(errc::unknown_state, "state index out of range");
  const Minimized m = minimize(a);
  return is_trivial_sink(m.automaton, m.class_of[q]);
}

inline bool is_trivial_state(const Automaton& a, std::string_view q) {
  return is_trivial_state(a, a.state(q));
}

// Structural equality up to a renaming of states, with `root_a` matched to
// `root_b` and only the parts reachable from the roots compared.
inline bool isomorphic_from(const Automaton& a, StateId root_a, const Automaton& b,
                            StateId root_b) {
  if (!(a.alphabet() == b.alphabet())) return false;
  constexpr StateId unset = std::numeric_limits<StateId>::max();
  std::vector<StateId> to_b(a.state_count(), unset);
  std::vector<StateId> to_a(b.state_count(), unset);
  std::deque<std::pair<StateId, StateId>> queue{{root_a, root_b}};
  to_b[root_a] = root_b;
  to_a[root_b] = root_a;
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < a.letter_count(); ++x) {
      if (a.output(p, x) != b.output(q, x)) return false;
      const StateId np = a.next(p, x);
      const StateId nq = b.next(q, x);
      if (to_b[np] == unset && to_a[nq] == unset) {
        to_b[np] = nq;
        to_a[nq] = np;
        queue.emplace_back(np, nq);
      } else if (to_b[np] != nq || to_a[nq] != np) {
        return false;
      }
    }
  }
  return true;
}

// Isomorphism of whole automata matching states by name.
inline bool isomorphic_by_name(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet()) || a.state_count() != b.state_count()) return false;
  for (StateId q = 0; q < a.state_count(); ++q) {
    auto p = b.find_state(a.state_name(q));
    if (!p) return false;
    for (Letter x = 0; x < a.letter_count(); ++x) {
      if (a.output(q, x) != b.output(*p, x)) return false;
      if (a.state_name(a.next(q, x)) != b.state_name(b.next(*p, x))) return false;
    }
  }
  return true;
}

}  // namespace mealy
