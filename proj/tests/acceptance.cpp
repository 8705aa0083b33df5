// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace mealy;
using namespace mealy::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::optional<double> time_limit;  // seconds
  std::function<Outcome()> run;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " violation(s); first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

// The acceptance corpus: every state of the named machines, remark_chain at
// depth 9 from q_1, and 100 random invertible machines (<= 5 states, k <= 3)
// with every state as an initial state.
struct Corpus {
  std::vector<CorpusEntry> named;
  std::vector<CorpusEntry> random;
  std::vector<const CorpusEntry*> all() const {
    std::vector<const CorpusEntry*> out;
    for (const auto& e : named) out.push_back(&e);
    for (const auto& e : random) out.push_back(&e);
    return out;
  }
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus c;
    c.named = named_corpus();
    std::mt19937_64 rng(20181028);
    for (int i = 0; i < 100; ++i) {
      const Automaton a = random_invertible(rng);
      for (StateId q = 0; q < a.state_count(); ++q) {
        c.random.push_back({"random" + std::to_string(i) + ":" + a.state_name(q),
                            Transformation(a, q)});
      }
    }
    return c;
  }();
  return c;
}

constexpr std::size_t max_level = 8;

Outcome adding_machine_semantics() {
  Checker check;
  const Transformation q(adding_machine(), "q");
  std::uint64_t words = 0;
  for (std::size_t l = 0; l <= 12; ++l) {
    const std::uint64_t modulus = std::uint64_t{1} << l;
    for (std::uint64_t v = 0; v < modulus; ++v) {
      ++words;
      check.expect(apply(q, binary_word(v, l)) == binary_word((v + 1) % modulus, l),
                   "q(" + std::to_string(v) + ") at l=" + std::to_string(l));
    }
  }
  return check.outcome(std::to_string(words) + " words checked");
}

Outcome oracle_equivalence() {
  Checker check;
  std::size_t comparisons = 0;
  for (const auto* e : corpus().all()) {
    const std::size_t max_len = max_level;
    const auto ns_table = count_ns(e->g, max_len);
    const auto nc_table = count_nc(e->g, max_len);
    for (std::size_t l = 0; l <= max_len; ++l) {
      comparisons += 2;
      check.expect(ns_table.counts[l] == brute_ns(e->g, l),
                   "NS " + e->label + " l=" + std::to_string(l));
      check.expect(nc_table.counts[l] == brute_nc(e->g, l),
                   "NC " + e->label + " l=" + std::to_string(l));
    }
  }
  return check.outcome(std::to_string(corpus().all().size()) + " transformations, " +
                       std::to_string(comparisons) + " counts match enumeration");
}

Outcome subadditivity_and_symmetry() {
  Checker check;
  // One initial state per machine keeps the pair count near 10^4.
  std::vector<const CorpusEntry*> members;
  for (const auto& e : corpus().named) members.push_back(&e);
  const Automaton* last = nullptr;
  for (const auto& e : corpus().random) {
    if (last && *last == e.g.automaton) continue;
    last = &e.g.automaton;
    members.push_back(&e);
  }
  std::vector<CountTable> ns_tables, nc_tables;
  for (const auto* e : members) {
    const std::size_t L = max_level;
    ns_tables.push_back(count_ns(e->g, L));
    nc_tables.push_back(count_nc(e->g, L));
    const Transformation inv = invert(e->g);
    check.expect(count_ns(inv, L).counts == ns_tables.back().counts, "NS(g^-1) " + e->label);
    check.expect(count_nc(inv, L).counts == nc_tables.back().counts, "NC(g^-1) " + e->label);
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      const auto& g = members[i]->g;
      const auto& h = members[j]->g;
      if (!(g.alphabet() == h.alphabet())) continue;
      ++pairs;
      const std::size_t L = max_level;
      const Transformation gh = compose(g, h);
      const auto ns_gh = count_ns(gh, L);
      const auto nc_gh = count_nc(gh, L);
      for (std::size_t l = 0; l <= L; ++l) {
        check.expect(ns_gh.counts[l] <= ns_tables[i].counts[l] + ns_tables[j].counts[l],
                     "NS(gh) " + members[i]->label + " * " + members[j]->label);
        check.expect(nc_gh.counts[l] <= nc_tables[i].counts[l] + nc_tables[j].counts[l],
                     "NC(gh) " + members[i]->label + " * " + members[j]->label);
      }
    }
  }
  return check.outcome(std::to_string(members.size()) + " transformations, " +
                       std::to_string(pairs) + " ordered pairs, l <= 8");
}

Outcome uc_product_lengths() {
  Checker check;
  const Transformation q(adding_machine(), "q");
  const Transformation a(flip_alternator(), "a");
  struct Case {
    Transformation g, h;
    Word w;
    std::size_t n, m;
  };
  const std::vector<Case> cases{{q, q, {0, 0}, 1, 1}, {q, a, {0}, 1, 2}, {a, a, {0, 1}, 2, 2}};
  std::ostringstream summary;
  for (const auto& c : cases) {
    const std::size_t n = oracle_uc_length(c.g.automaton, run(c.g.automaton, c.g.initial, c.w));
    const std::size_t m =
        oracle_uc_length(c.h.automaton, run(c.h.automaton, c.h.initial, apply(c.g, c.w)));
    check.expect(n == c.n && m == c.m, "constructed case does not reach the intended UCs");
    const Automaton product = compose(c.g.automaton, c.h.automaton);
    const StateId start =
        static_cast<StateId>(c.g.initial * c.h.automaton.state_count() + c.h.initial);
    const std::size_t got = uc_lengths(product)[run(product, start, c.w)];
    check.expect(got == std::lcm(n, m), "(" + std::to_string(n) + "," + std::to_string(m) +
                                            ") gave " + std::to_string(got));
    summary << "(" << n << "," << m << ")->" << got << " ";
  }
  return check.outcome(summary.str());
}

Outcome remark_bounds() {
  Checker check;
  const Transformation q1(remark_chain({20, std::nullopt}), "q_1");
  const auto table = count_ns(q1, 20);
  for (std::size_t l = 0; l <= 20; ++l) {
    check.expect(power(2, l) <= table.counts[l] && table.counts[l] <= power(3, l),
                 "bound at l=" + std::to_string(l));
  }
  check.expect(table.counts[1] == 2 && table.counts[2] == 6 && table.counts[3] == 16,
               "pinned NS(q_1, 1..3) = 2, 6, 16");
  return check.outcome("NS(q_1,20) = " + table.counts[20].str());
}

Outcome theorem1_certificate() {
  Checker check;
  const std::vector<Transformation> chain{Transformation(remark_chain({8, std::nullopt}), "q_1")};
  check.expect(find_minimal_level(chain, 8, 16) == 3u, "remark_chain q_1 minimal level");
  const std::vector<Transformation> flip{Transformation(flip_all(), "r")};
  check.expect(!find_minimal_level(flip, 8, 12), "flip_all must have no certified level");
  std::size_t members = 0, worst = 0;
  for (const auto* e : corpus().all()) {
    if (e->g.automaton.is_materialized() || !decide_g0(e->g).member) continue;
    ++members;
    const std::vector<Transformation> hs{e->g};
    const auto level = find_minimal_level(hs, 8, 64);
    check.expect(level.has_value(), e->label + " has no level <= 64");
    if (level) worst = std::max(worst, *level);
  }
  return check.outcome(std::to_string(members) + " G0 members certified, largest level " +
                       std::to_string(worst));
}

Outcome lemma_suites() {
  Checker check;
  std::mt19937_64 rng(1729);
  std::vector<const CorpusEntry*> finite;
  for (const auto* e : corpus().all()) {
    if (!e->g.automaton.is_materialized()) finite.push_back(e);
  }
  std::size_t applicable = 0, not_applicable = 0, lemma2_checked = 0, lemma2_skipped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& g = finite[rng() % finite.size()]->g;
    const std::size_t k = g.alphabet().size();
    const std::size_t level = rng() % 7;
    std::size_t m = 1;
    for (std::size_t n : reachable_uc_lengths(g, level)) m = std::lcm(m, n);
    m *= 1 + rng() % 3;
    std::vector<std::size_t> divisors;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d == 0) divisors.push_back(d);
    }
    Word prefix_letters(level), period(divisors[rng() % divisors.size()]);
    for (auto& x : prefix_letters) x = static_cast<Letter>(rng() % k);
    for (auto& x : period) x = static_cast<Letter>(rng() % k);
    const EventuallyPeriodicWord w(prefix_letters, period);

    // Independent NC-set membership: the path never touches a UC state.
    bool in_nc_set = true;
    StateId s = g.initial;
    if (oracle_uc_length(g.automaton, s) > 0) in_nc_set = false;
    for (Letter x : prefix_letters) {
      s = g.automaton.next(s, x);
      if (oracle_uc_length(g.automaton, s) > 0) in_nc_set = false;
    }

    const auto v1 = check_lemma1(g, w, level);
    check.expect(v1.applicable == !in_nc_set, "check_lemma1 applicability disagrees with NC-set");
    if (v1.applicable) {
      ++applicable;
      check.expect(v1.holds, "check_lemma1 failed");
    } else {
      ++not_applicable;
    }

    const std::vector<EventuallyPeriodicWord> sample{w};
    const auto v2 = check_lemma2(g, level, max_uc_length(g, level), m, sample);
    check.expect(v2.failed == 0, "check_lemma2 failed");
    check.expect(v2.skipped == (in_nc_set ? 1u : 0u), "check_lemma2 skip disagrees with NC-set");
    lemma2_checked += v2.checked;
    lemma2_skipped += v2.skipped;
  }
  return check.outcome("check_lemma1: " + std::to_string(applicable) + " applicable, " +
                       std::to_string(not_applicable) + " not applicable; check_lemma2: " +
                       std::to_string(lemma2_checked) + " checked, " +
                       std::to_string(lemma2_skipped) + " skipped");
}

Outcome period_class_identity() {
  Checker check;
  std::vector<Word> periods;
  for (std::size_t d : {1, 2, 3, 6}) {
    for (std::uint64_t i = 0; i < word_count(2, d); ++i) {
      Word t = word_from_index(i, d, 2);
      if (is_primitive(t)) periods.push_back(std::move(t));
    }
  }
  check.expect(count_periods(2, 6) == periods.size(), "count_periods(2, 6)");
  std::size_t checks = 0;
  for (const auto* e : corpus().all()) {
    if (e->g.alphabet().size() != 2 || e->g.automaton.is_materialized()) continue;
    for (std::size_t l = 0; l <= 6; ++l) {
      const BigInt expected = brute_nc(e->g, l);
      for (const auto& t : periods) {
        ++checks;
        check.expect(count_nc_in_period_class(e->g, l, t) == expected,
                     e->label + " l=" + std::to_string(l));
      }
    }
  }
  return check.outcome(std::to_string(periods.size()) + " periods, " + std::to_string(checks) +
                       " slices");
}

Outcome coin_audits() {
  Checker check;
  std::mt19937_64 rng(50);
  std::vector<const CorpusEntry*> binary, ternary;
  for (const auto* e : corpus().all()) {
    if (e->g.alphabet().size() == 2) binary.push_back(e);
    if (e->g.alphabet().size() == 3) ternary.push_back(e);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const bool use_binary = trial % 2 == 0;
    const auto& pool = use_binary ? binary : ternary;
    const std::size_t k = use_binary ? 2 : 3;
    const std::size_t level = 1 + rng() % (use_binary ? 8 : 6);
    const std::size_t d = 1 + rng() % 4;
    std::vector<Transformation> hs;
    for (std::size_t i = 0; i < d; ++i) hs.push_back(pool[rng() % pool.size()]->g);
    std::vector<std::size_t> assignment(word_count(k, level));
    for (auto& a : assignment) a = rng() % d;
    const auto audit = coin_audit(level, hs, parts_from_assignment(assignment, d, level, k));
    check.expect(audit.total_coins() == word_count(k, level), "coins not conserved");
    check.expect(!audit.deficit.empty(), "audit reported doubling");
  }
  return check.outcome("50 audits, all with deficit and conserved coins");
}

Outcome g0_closure() {
  Checker check;
  std::vector<const CorpusEntry*> members;
  for (const auto* e : corpus().all()) {
    if (!e->g.automaton.is_materialized() && decide_g0(e->g).member &&
        !is_trivial_state(e->g.automaton, e->g.initial)) {
      members.push_back(e);
    }
  }
  std::mt19937_64 rng(20);
  int pairs = 0;
  for (int attempt = 0; pairs < 20 && attempt < 10000; ++attempt) {
    const auto* a = members[rng() % members.size()];
    const auto* b = members[rng() % members.size()];
    if (!(a->g.alphabet() == b->g.alphabet())) continue;
    ++pairs;
    const std::string label = a->label + " * " + b->label;
    check.expect(decide_g0(compose(a->g, b->g)).member, label + " product");
    check.expect(decide_g0(invert(a->g)).member, a->label + " inverse");
    check.expect(decide_g0(compose(invert(a->g), invert(b->g))).member, label + " inverses");
  }
  check.expect(pairs == 20, "fewer than 20 G0 pairs available");
  return check.outcome(std::to_string(pairs) + " pairs from " + std::to_string(members.size()) +
                       " nontrivial G0 members");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "adding machine adds 1 mod 2^l, l <= 12", 5.0, adding_machine_semantics},
      {2, "count_ns / count_nc match enumeration, l <= 8", 60.0, oracle_equivalence},
      {3, "NS and NC subadditive and inverse-symmetric, l <= 8", std::nullopt,
       subadditivity_and_symmetry},
      {4, "product of UCs of lengths n, m is a UC of length lcm(n, m)", std::nullopt,
       uc_product_lengths},
      {5, "2^l <= NS(q_1, l) <= 3^l for remark_chain, l <= 20", 5.0, remark_bounds},
      {6, "block-bound certificate levels", std::nullopt, theorem1_certificate},
      {7, "check_lemma1 / check_lemma2 on 1000 random cases", std::nullopt, lemma_suites},
      {8, "period-class slices count NC, k = 2, l <= 6, |T| | 6", std::nullopt,
       period_class_identity},
      {9, "coin audits never double", std::nullopt, coin_audits},
      {10, "G0 closed under products and inverses", std::nullopt, g0_closure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit && seconds >= *c.time_limit) {
      outcome.pass = false;
      outcome.detail += " (over the " + std::to_string(*c.time_limit) + " s limit)";
    }
    if (!outcome.pass) ++failed;
    std::printf("[%s] %2d %s (%.2f s): %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), seconds, outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
