#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/error.hpp"

namespace mealy {

// How a parametric (infinite) family is cut down to finitely many states.
struct MaterializationPolicy {
  std::size_t depth = 1;
  // Longest input the caller intends to process; must not exceed depth.
  std::optional<std::size_t> requested_length;
};

inline const std::vector<std::string>& builtin_families() {
  static const std::vector<std::string> names{"adding", "flip_all", "flip_alternator",
                                              "remark_chain"};
  return names;
}

inline Automaton identity_automaton(const Alphabet& alphabet, std::string name = "e") {
  const std::size_t k = alphabet.size();
  std::vector<Letter> output(k);
  for (Letter x = 0; x < k; ++x) output[x] = x;
  return Automaton(alphabet, {std::move(name)}, std::vector<StateId>(k, 0), std::move(output));
}

// Binary odometer: q adds 1 to a number written lowest digit first.
inline Automaton adding_machine() {
  // q: 0 -> e | 1, 1 -> q | 0;  e: identity
  return Automaton(Alphabet::numeric(2), {"q", "e"}, {1, 0, 1, 1}, {1, 0, 0, 1});
}

inline Automaton flip_all() {
  return Automaton(Alphabet::numeric(2), {"r"}, {0, 0}, {1, 0});
}

// a flips the letter and hands over to b; b copies and hands back to a.
inline Automaton flip_alternator() {
  return Automaton(Alphabet::numeric(2), {"a", "b"}, {1, 1, 0, 0}, {1, 0, 0, 1});
}

// States q_1..q_D and e over {0,1,2,3}. Letter 0 drops to e, letter 1 steps
// down to q_{i-1} (q_0 = e), letters 2 and 3 step up to q_{i+1}; every q_i
// swaps 0 and 1 and fixes 2 and 3. The chain is infinite; q_D loops back to
// itself on 2 and 3, so q_i only matches the infinite chain on words of
// length <= D - i + 1; that bound is recorded as the state's horizon.
inline Automaton remark_chain(const MaterializationPolicy& policy) {
  const std::size_t depth = policy.depth;
  if (depth < 1) throw error(errc::invalid_argument, "remark_chain depth must be at least 1");
  if (policy.requested_length && *policy.requested_length > depth) {
    throw error(errc::depth_too_small,
                "remark_chain depth " + std::to_string(depth) + " cannot serve length " +
                    std::to_string(*policy.requested_length));
  }
  constexpr std::size_t k = 4;
  const auto e = static_cast<StateId>(depth);
  std::vector<std::string> names;
  std::vector<StateId> next((depth + 1) * k);
  std::vector<Letter> output((depth + 1) * k);
  std::vector<std::size_t> horizon(depth + 1, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 1; i <= depth; ++i) {
    const auto q = static_cast<StateId>(i - 1);
    const StateId down = i == 1 ? e : static_cast<StateId>(i - 2);
    const StateId up = i == depth ? q : static_cast<StateId>(i);
    names.push_back("q_" + std::to_string(i));
    horizon[q] = depth - i + 1;
    next[q * k + 0] = e;
    next[q * k + 1] = down;
    next[q * k + 2] = up;
    next[q * k + 3] = up;
    output[q * k + 0] = 1;
    output[q * k + 1] = 0;
    output[q * k + 2] = 2;
    output[q * k + 3] = 3;
  }
  names.push_back("e");
  for (Letter x = 0; x < k; ++x) {
    next[e * k + x] = e;
    output[e * k + x] = x;
  }
  return Automaton(Alphabet::numeric(k), std::move(names), std::move(next), std::move(output),
                   std::move(horizon));
}

inline Automaton generate_builtin(std::string_view family,
                                  const MaterializationPolicy& policy = {}) {
  if (family == "adding") return adding_machine();
  if (family == "flip_all") return flip_all();
  if (family == "flip_alternator") return flip_alternator();
  if (family == "remark_chain") return remark_chain(policy);
  throw error(errc::unknown_family, "no builtin family '" + std::string(family) + "'");
}

}  // namespace mealy
