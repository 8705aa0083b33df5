#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mealy;
using namespace mealy::testing;

namespace {

using EPW = EventuallyPeriodicWord;

// Primitive words of length dividing m, by brute force.
std::vector<Word> primitive_periods(std::size_t k, std::size_t m) {
  std::vector<Word> out;
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    for (std::uint64_t i = 0; i < word_count(k, d); ++i) {
      Word w = word_from_index(i, d, k);
      bool primitive = true;
      for (std::size_t p = 1; p < d && primitive; ++p) {
        if (d % p != 0) continue;
        bool repeats = true;
        for (std::size_t j = p; j < d && repeats; ++j) repeats = w[j] == w[j - p];
        primitive = !repeats;
      }
      if (primitive) out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("eventually periodic words keep a primitive period", "[periodic]") {
  const EPW w({1, 2, 3}, {0, 1, 0, 1});
  CHECK(w.period() == Word{0, 1});
  CHECK(w.take(9) == Word{1, 2, 3, 0, 1, 0, 1, 0, 1});
  const EPW at4 = w.presented_at(4);
  CHECK(at4.prefix() == Word{1, 2, 3, 0});
  CHECK(at4.period() == Word{1, 0});
  CHECK(at4.same_infinite_word(w));
  CHECK_FALSE(at4 == w);
  CHECK(EPW({0, 1, 1}, {1}).minimal_level() == 1);
  CHECK_THROWS_AS(EPW({0}, {}), error);
}

TEST_CASE("apply to eventually periodic words", "[periodic]") {
  const Transformation q(adding_machine(), "q");
  CHECK(apply(q, EPW({}, {1})) == EPW({}, {0}));
  CHECK(apply(q, EPW({0}, {1})) == EPW({1}, {1}));
  CHECK(apply_to_ep_word(Transformation(flip_alternator(), "a"), EPW({}, {0})) ==
        EPW({}, {1, 0}));
}

TEST_CASE("apply to eventually periodic words agrees with streaming", "[periodic][property]") {
  std::mt19937_64 rng(2024);
  for (const auto& [label, g] : random_corpus(150, 31)) {
    const std::size_t k = g.alphabet().size();
    Word pre(rng() % 6), per(1 + rng() % 5);
    for (auto& x : pre) x = static_cast<Letter>(rng() % k);
    for (auto& x : per) x = static_cast<Letter>(rng() % k);
    const EPW w(pre, per);
    const EPW image = apply(g, w);
    INFO(label);
    REQUIRE(is_primitive(image.period()));
    REQUIRE(image.take(200) == apply(g, w.take(200)));
  }
}

TEST_CASE("check_lemma1 verdicts", "[periodic][lemma1]") {
  const Transformation q(adding_machine(), "q");
  auto v = check_lemma1(q, EPW({0}, {1}), 1);
  CHECK(v.applicable);
  CHECK(v.holds);
  CHECK(v.cycle_length == 1);
  CHECK(v.period_length == 1);
  CHECK(v.observed_period == 1);

  v = check_lemma1(Transformation(flip_alternator(), "a"), EPW({}, {0}), 0);
  CHECK(v.applicable);
  CHECK(v.holds);
  CHECK(v.cycle_length == 2);
  CHECK(v.period_length == 1);
  CHECK(v.observed_period == 2);

  v = check_lemma1(q, EPW({1}, {1}), 1);
  CHECK_FALSE(v.applicable);
  CHECK_THROWS_AS(check_lemma1(q, EPW({1, 1}, {1}), 1), error);
}

TEST_CASE("check_lemma2 verdicts", "[periodic][lemma2]") {
  const Transformation q(adding_machine(), "q");
  const std::vector<EPW> in_class{EPW({0}, {1}), EPW({0}, {0})};
  auto v = check_lemma2(q, 1, 1, 1, in_class);
  CHECK(v.checked == 2);
  CHECK(v.failed == 0);
  CHECK(v.skipped == 0);

  const std::vector<EPW> nc{EPW({1}, {1})};
  v = check_lemma2(q, 1, 1, 1, nc);
  CHECK(v.skipped == 1);
  CHECK(v.checked == 0);

  const Transformation a(flip_alternator(), "a");
  const std::vector<EPW> any{EPW({}, {0}), EPW({}, {1}), EPW({}, {0, 1})};
  v = check_lemma2(a, 0, 2, 2, any);
  CHECK(v.checked == 3);
  CHECK(v.failed == 0);

  try {
    check_lemma2(a, 0, 1, 2, any);
    FAIL("expected CycleBoundTooSmall");
  } catch (const error& e) {
    CHECK(e.code() == errc::cycle_bound_too_small);
  }
  try {
    check_lemma2(a, 0, 2, 3, std::vector<EPW>{});
    FAIL("expected PeriodBoundInvalid");
  } catch (const error& e) {
    CHECK(e.code() == errc::period_bound_invalid);
  }
}

TEST_CASE("count_periods", "[periodic][periods]") {
  CHECK(count_periods(2, 1) == 2);
  CHECK(count_periods(2, 2) == 4);
  CHECK(count_periods(2, 3) == 8);
  for (std::size_t k = 2; k <= 3; ++k) {
    for (std::size_t m = 1; m <= 8; ++m) {
      INFO("k=" << k << " m=" << m);
      CHECK(count_periods(k, m) == primitive_periods(k, m).size());
    }
  }
}

TEST_CASE("period-class slices count NC", "[periodic][property]") {
  const auto periods = primitive_periods(2, 6);
  for (const auto& [label, g] : binary_corpus(10, 5)) {
    INFO(label);
    for (std::size_t l = 0; l <= 5; ++l) {
      const BigInt expected = brute_nc(g, l);
      for (const auto& t : periods) REQUIRE(count_nc_in_period_class(g, l, t) == expected);
    }
  }
}
