#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mealy/automaton.hpp"
#include "mealy/error.hpp"
#include "mealy/word.hpp"

namespace mealy {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt power(std::size_t base, std::size_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

// ---------------------------------------------------------------------------
// Unconditional cycles
// ---------------------------------------------------------------------------

// States g_1 -> ... -> g_n -> g_1 whose successor ignores the input letter.
struct UnconditionalCycle {
  std::vector<StateId> states;  // starts at the lowest index
  std::size_t length() const noexcept { return states.size(); }
};

// The successor of q when it is the same for every letter.
inline std::optional<StateId> unconditional_successor(const Automaton& a, StateId q) {
  const StateId first = a.next(q, 0);
  for (Letter x = 1; x < a.letter_count(); ++x) {
    if (a.next(q, x) != first) return std::nullopt;
  }
  return first;
}

inline std::vector<UnconditionalCycle> find_ucs(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<std::optional<StateId>> sigma(n);
  for (StateId q = 0; q < n; ++q) sigma[q] = unconditional_successor(a, q);

  std::vector<UnconditionalCycle> cycles;
  std::vector<bool> on_cycle(n, false);
  for (StateId start = 0; start < n; ++start) {
    if (on_cycle[start]) continue;
    // Walk sigma for at most n steps; start lies on a cycle iff it returns.
    std::vector<StateId> path{start};
    std::optional<StateId> cur = sigma[start];
    while (cur && *cur != start && path.size() <= n) {
      path.push_back(*cur);
      cur = sigma[*cur];
    }
    if (!cur || *cur != start) continue;
    // start is the lowest index on its cycle, since lower ones were handled.
    for (StateId q : path) on_cycle[q] = true;
    cycles.push_back({std::move(path)});
  }
  return cycles;
}

// Length of the unconditional cycle containing each state, 0 if none.
inline std::vector<std::size_t> uc_lengths(const Automaton& a) {
  std::vector<std::size_t> out(a.state_count(), 0);
  for (const auto& c : find_ucs(a)) {
    for (StateId q : c.states) out[q] = c.length();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path counting
// ---------------------------------------------------------------------------

enum class CountKind { ns, nc };

struct CountTable {
  Transformation transformation;
  CountKind kind = CountKind::ns;
  std::vector<BigInt> counts;  // counts[l] for l = 0..L
};

namespace detail {

// counts[l] = number of words of length l whose path from `start` ends
// outside `absorbing`. Absorbing states must be closed under transitions.
inline std::vector<BigInt> count_avoiding(const Automaton& a, StateId start,
                                          const std::vector<bool>& absorbing,
                                          std::size_t max_level) {
  const std::size_t n = a.state_count();
  std::vector<BigInt> current(n), next(n);
  current[start] = 1;
  std::vector<BigInt> counts;
  counts.reserve(max_level + 1);
  for (std::size_t l = 0;; ++l) {
    BigInt total = 0;
    for (StateId q = 0; q < n; ++q) {
      if (!absorbing[q]) total += current[q];
    }
    counts.push_back(std::move(total));
    if (l == max_level) break;
    std::fill(next.begin(), next.end(), BigInt(0));
    for (StateId q = 0; q < n; ++q) {
      if (absorbing[q] || current[q].is_zero()) continue;
      for (StateId p : a.next_row(q)) {
        if (!absorbing[p]) next[p] += current[q];
      }
    }
    std::swap(current, next);
  }
  return counts;
}

inline std::vector<bool> trivial_mask(const Automaton& minimized) {
  std::vector<bool> mask(minimized.state_count());
  for (StateId q = 0; q < minimized.state_count(); ++q) {
    mask[q] = is_trivial_sink(minimized, q);
  }
  return mask;
}

inline std::vector<bool> uc_mask(const Automaton& a) {
  std::vector<bool> mask(a.state_count(), false);
  for (const auto& c : find_ucs(a)) {
    for (StateId q : c.states) mask[q] = true;
  }
  return mask;
}

}  // namespace detail

// NS(g, l) for l = 0..max_level: words of length l that leave g in a
// nontrivial state. Computed on the minimized automaton so that triviality
// is semantic.
inline CountTable count_ns(const Transformation& g, std::size_t max_level) {
  g.automaton.require_sound(g.initial, max_level);
  const Minimized m = minimize(g.automaton);
  return {g, CountKind::ns,
          detail::count_avoiding(m.automaton, m.class_of[g.initial],
                                 detail::trivial_mask(m.automaton), max_level)};
}

// NC(g, l) for l = 0..max_level: words of length l that never bring g into
// an unconditional cycle. Uses the automaton exactly as given, because
// being a UC is a property of the tables, not of the transformation.
inline CountTable count_nc(const Transformation& g, std::size_t max_level) {
  g.automaton.require_sound(g.initial, max_level);
  return {g, CountKind::nc,
          detail::count_avoiding(g.automaton, g.initial, detail::uc_mask(g.automaton),
                                 max_level)};
}

inline BigInt ns(const Transformation& g, std::size_t level) {
  return count_ns(g, level).counts.back();
}

inline BigInt nc(const Transformation& g, std::size_t level) {
  return count_nc(g, level).counts.back();
}

// Explicit word sets S, NS and the finite NC-set for small levels.
namespace detail {

constexpr std::uint64_t enumeration_limit = std::uint64_t{1} << 24;

template <class Keep>
std::vector<Word> enumerate_words(const Automaton& a, std::size_t level, Keep keep) {
  const std::uint64_t total = word_count(a.letter_count(), level);
  if (total > enumeration_limit) {
    throw error(errc::invalid_argument, "level too large for explicit enumeration");
  }
  std::vector<Word> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    Word w = word_from_index(i, level, a.letter_count());
    if (keep(w)) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

inline std::vector<Word> ns_set(const Transformation& g, std::size_t level) {
  g.automaton.require_sound(g.initial, level);
  const Minimized m = minimize(g.automaton);
  const auto trivial = detail::trivial_mask(m.automaton);
  return detail::enumerate_words(g.automaton, level, [&](const Word& w) {
    return !trivial[m.class_of[run(g.automaton, g.initial, w)]];
  });
}

inline std::vector<Word> s_set(const Transformation& g, std::size_t level) {
  g.automaton.require_sound(g.initial, level);
  const Minimized m = minimize(g.automaton);
  const auto trivial = detail::trivial_mask(m.automaton);
  return detail::enumerate_words(g.automaton, level, [&](const Word& w) {
    return trivial[m.class_of[run(g.automaton, g.initial, w)]];
  });
}

// Prefixes of length `level` that keep g out of every UC.
inline std::vector<Word> nc_set(const Transformation& g, std::size_t level) {
  g.automaton.require_sound(g.initial, level);
  const auto uc = detail::uc_mask(g.automaton);
  return detail::enumerate_words(g.automaton, level, [&](const Word& w) {
    return !uc[run(g.automaton, g.initial, w)];
  });
}

// ---------------------------------------------------------------------------
// Reachable cycle lengths
// ---------------------------------------------------------------------------

// Lengths of UCs g can enter within at most `level` steps.
inline std::set<std::size_t> reachable_uc_lengths(const Transformation& g, std::size_t level) {
  const Automaton& a = g.automaton;
  const auto lengths = uc_lengths(a);
  std::vector<bool> seen(a.state_count(), false);
  std::vector<StateId> frontier{g.initial};
  seen[g.initial] = true;
  std::set<std::size_t> out;
  for (std::size_t step = 0;; ++step) {
    for (StateId q : frontier) {
      if (lengths[q] > 0) out.insert(lengths[q]);
    }
    if (step == level || frontier.empty()) break;
    std::vector<StateId> next;
    for (StateId q : frontier) {
      for (StateId p : a.next_row(q)) {
        if (!seen[p]) {
          seen[p] = true;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// n(l): the longest UC reachable from g within l steps, 0 if none.
inline std::size_t max_uc_length(const Transformation& g, std::size_t level) {
  const auto lengths = reachable_uc_lengths(g, level);
  return lengths.empty() ? 0 : *lengths.rbegin();
}

// ---------------------------------------------------------------------------
// Growth classification
// ---------------------------------------------------------------------------

enum class GrowthClass { bounded, polynomial, exponential };

constexpr std::string_view name(GrowthClass c) noexcept {
  switch (c) {
    case GrowthClass::bounded: return "bounded";
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::exponential: return "exponential";
  }
  return "unknown";
}

struct GrowthReport {
  GrowthClass growth = GrowthClass::bounded;
  std::optional<std::size_t> degree;  // polynomial only
  std::optional<double> rate;         // exponential only
};

namespace detail {

// Subgraph of states outside `absorbing` reachable from `start`, as a
// letter-multiplicity edge list.
struct ActiveGraph {
  std::vector<StateId> states;                   // original indices
  std::vector<std::vector<std::size_t>> edges;   // local index -> local successors
};

inline ActiveGraph active_graph(const Automaton& a, StateId start,
                                const std::vector<bool>& absorbing) {
  ActiveGraph g;
  if (absorbing[start]) return g;
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> local(a.state_count(), unset);
  std::deque<StateId> queue{start};
  local[start] = 0;
  g.states.push_back(start);
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (StateId p : a.next_row(q)) {
      if (absorbing[p] || local[p] != unset) continue;
      local[p] = g.states.size();
      g.states.push_back(p);
      queue.push_back(p);
    }
  }
  g.edges.resize(g.states.size());
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    for (StateId p : a.next_row(g.states[i])) {
      if (!absorbing[p]) g.edges[i].push_back(local[p]);
    }
  }
  return g;
}

// Tarjan's algorithm; component ids come out in reverse topological order.
inline std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& edges,
                                                   std::size_t& component_count) {
  const std::size_t n = edges.size();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), component(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  component_count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component[w] = component_count;
      } while (w != v);
      ++component_count;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == unset) visit(v);
  }
  return component;
}

// Perron root of one irreducible block. Power iteration runs on A + I,
// which is primitive, and stops once the Collatz-Wielandt bounds agree.
inline double block_spectral_radius(const std::vector<std::vector<std::size_t>>& edges,
                                    const std::vector<std::size_t>& members,
                                    const std::vector<std::size_t>& component, std::size_t id) {
  const std::size_t n = members.size();
  std::vector<std::size_t> local(edges.size(), 0);
  for (std::size_t i = 0; i < n; ++i) local[members[i]] = i;
  std::vector<double> x(n, 1.0), y(n);
  double lower = 0.0, upper = 0.0;
  for (int iteration = 0; iteration < 10000; ++iteration) {
    y = x;  // the identity shift
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t w : edges[members[i]]) {
        if (component[w] == id) y[local[w]] += x[i];
      }
    }
    // y = (A^T + I) x has the same spectrum as A + I; the bounds use y / x.
    lower = std::numeric_limits<double>::infinity();
    upper = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = y[i] / x[i];
      lower = std::min(lower, ratio);
      upper = std::max(upper, ratio);
      norm = std::max(norm, y[i]);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (upper - lower < 1e-9) break;
  }
  return 0.5 * (lower + upper) - 1.0;
}

struct Structure {
  ActiveGraph graph;
  std::vector<std::size_t> component;
  std::size_t component_count = 0;
};

inline Structure analyze(const Automaton& a, StateId start, const std::vector<bool>& absorbing) {
  Structure s;
  s.graph = active_graph(a, start, absorbing);
  s.component = strongly_connected(s.graph.edges, s.component_count);
  return s;
}

inline double spectral_radius(const Structure& s) {
  std::vector<std::vector<std::size_t>> members(s.component_count);
  for (std::size_t v = 0; v < s.component.size(); ++v) members[s.component[v]].push_back(v);
  double rate = 0.0;
  for (std::size_t c = 0; c < s.component_count; ++c) {
    bool has_internal_edge = false;
    for (std::size_t v : members[c]) {
      for (std::size_t w : s.graph.edges[v]) has_internal_edge |= s.component[w] == c;
    }
    if (!has_internal_edge) continue;
    rate = std::max(rate, block_spectral_radius(s.graph.edges, members[c], s.component, c));
  }
  return rate;
}

}  // namespace detail

// Estimated growth base of NS(g, l): the spectral radius of the
// letter-multiplicity adjacency among nontrivial states reachable from g.
inline double ns_growth_rate(const Transformation& g) {
  const Minimized m = minimize(g.automaton);
  const auto s = detail::analyze(m.automaton, m.class_of[g.initial],
                                 detail::trivial_mask(m.automaton));
  return std::min(detail::spectral_radius(s), static_cast<double>(g.automaton.letter_count()));
}

// Cycle-structure rule on the nontrivial part reachable from g: a state on
// two distinct cycles means exponential growth; otherwise the degree is the
// largest number of cycles met along one path, minus one.
inline GrowthReport classify_growth(const Transformation& g) {
  const Minimized m = minimize(g.automaton);
  const auto s = detail::analyze(m.automaton, m.class_of[g.initial],
                                 detail::trivial_mask(m.automaton));
  const std::size_t n = s.graph.states.size();

  std::vector<std::size_t> nodes(s.component_count, 0), internal(s.component_count, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++nodes[s.component[v]];
    for (std::size_t w : s.graph.edges[v]) {
      if (s.component[w] == s.component[v]) ++internal[s.component[v]];
    }
  }
  for (std::size_t c = 0; c < s.component_count; ++c) {
    if (internal[c] > nodes[c]) {
      return {GrowthClass::exponential, std::nullopt,
              std::min(detail::spectral_radius(s),
                       static_cast<double>(g.automaton.letter_count()))};
    }
  }

  // Tarjan numbers components in reverse topological order, so every edge
  // goes from a higher id to a lower or equal one.
  std::vector<std::vector<std::size_t>> successors(s.component_count);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : s.graph.edges[v]) {
      if (s.component[w] != s.component[v]) successors[s.component[v]].push_back(s.component[w]);
    }
  }
  std::vector<std::size_t> best(s.component_count, 0);
  std::size_t cycles = 0;
  for (std::size_t c = 0; c < s.component_count; ++c) {
    std::size_t tail = 0;
    for (std::size_t d : successors[c]) tail = std::max(tail, best[d]);
    best[c] = tail + (internal[c] > 0 ? 1 : 0);
    cycles = std::max(cycles, best[c]);
  }
  if (cycles <= 1) return {GrowthClass::bounded, std::nullopt, std::nullopt};
  return {GrowthClass::polynomial, cycles - 1, std::nullopt};
}

// ---------------------------------------------------------------------------
// Membership in G0 / G1
// ---------------------------------------------------------------------------

struct Membership {
  bool member = false;
  // When not a member: a word leading g into the full-degree core, so that
  // the count is at least |X|^(l - |witness|).
  std::optional<Word> witness;
};

namespace detail {

// Largest set of active states whose every transition stays inside it.
inline std::vector<bool> full_degree_core(const Automaton& a, const std::vector<bool>& absorbing) {
  const std::size_t n = a.state_count();
  std::vector<bool> core(n);
  for (StateId q = 0; q < n; ++q) core[q] = !absorbing[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (!core[q]) continue;
      for (StateId p : a.next_row(q)) {
        if (!core[p]) {
          core[q] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return core;
}

inline Membership decide_membership(const Automaton& a, StateId start,
                                    const std::vector<bool>& absorbing) {
  const auto core = full_degree_core(a, absorbing);
  constexpr StateId unset = std::numeric_limits<StateId>::max();
  std::vector<StateId> parent(a.state_count(), unset);
  std::vector<Letter> via(a.state_count(), 0);
  std::deque<StateId> queue{start};
  parent[start] = start;
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    if (core[q]) {
      Word witness;
      for (StateId v = q; v != start; v = parent[v]) witness.push_back(via[v]);
      std::reverse(witness.begin(), witness.end());
      return {false, std::move(witness)};
    }
    for (Letter x = 0; x < a.letter_count(); ++x) {
      const StateId p = a.next(q, x);
      if (parent[p] != unset) continue;
      parent[p] = q;
      via[p] = x;
      queue.push_back(p);
    }
  }
  return {true, std::nullopt};
}

}  // namespace detail

// NS(g, l) = o(|X|^l) exactly when no full-degree core of nontrivial states
// is reachable from g.
inline Membership decide_g0(const Transformation& g) {
  g.automaton.require_finite("decide_g0");
  const Minimized m = minimize(g.automaton);
  return detail::decide_membership(m.automaton, m.class_of[g.initial],
                                   detail::trivial_mask(m.automaton));
}

inline Membership decide_g1(const Transformation& g) {
  g.automaton.require_finite("decide_g1");
  return detail::decide_membership(g.automaton, g.initial, detail::uc_mask(g.automaton));
}

}  // namespace mealy
