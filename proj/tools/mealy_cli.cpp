// mealy: command-line front end.
//
// Exit status: 0 on success (including false verdicts), 1 on domain errors,
// 2 on usage and parse errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mealy/mealy.hpp"

namespace {

using namespace mealy;
using nlohmann::json;

// Bad input that is not a domain error (unreadable file, malformed word).
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Automaton sources
// ---------------------------------------------------------------------------

struct Source {
  std::string gen;
  std::string file;
  std::optional<std::size_t> depth;
  std::string state;
  std::vector<std::string> with;  // SOURCE@STATE
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// `needed` is the longest input the command will feed; it sizes parametric
// families when --depth is absent and is checked against --depth otherwise.
Automaton load(const std::string& gen, const std::string& file, const Source& s,
               std::optional<std::size_t> needed) {
  if (!gen.empty()) {
    MaterializationPolicy policy;
    policy.depth = s.depth.value_or(std::max<std::size_t>(needed.value_or(8), 1));
    policy.requested_length = needed;
    return generate_builtin(gen, policy);
  }
  if (!file.empty()) return parse_automaton(read_file(file));
  throw usage_error("one of --gen or --file is required");
}

Automaton load_primary(const Source& s, std::optional<std::size_t> needed = {}) {
  return load(s.gen, s.file, s, needed);
}

Transformation primary(const Source& s, std::optional<std::size_t> needed = {}) {
  Automaton a = load_primary(s, needed);
  if (s.state.empty()) return Transformation(std::move(a), StateId{0});
  return Transformation(std::move(a), s.state);
}

Transformation from_spec(const std::string& spec, const Source& s,
                         std::optional<std::size_t> needed) {
  const auto at = spec.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == spec.size()) {
    throw usage_error("--with expects SOURCE@STATE, got '" + spec + "'");
  }
  const std::string source = spec.substr(0, at);
  const auto& families = builtin_families();
  const bool builtin = std::find(families.begin(), families.end(), source) != families.end();
  return Transformation(load(builtin ? source : "", builtin ? "" : source, s, needed),
                        spec.substr(at + 1));
}

std::vector<Transformation> family(const Source& s, std::optional<std::size_t> needed) {
  std::vector<Transformation> hs{primary(s, needed)};
  for (const auto& spec : s.with) hs.push_back(from_spec(spec, s, needed));
  return hs;
}

void add_source(CLI::App* cmd, Source& s, bool multi = false) {
  auto* gen = cmd->add_option("--gen", s.gen, "builtin family")
                  ->check(CLI::IsMember(builtin_families()));
  auto* file = cmd->add_option("--file,-f", s.file, "automaton file (DSL or JSON)");
  gen->excludes(file);
  cmd->add_option("--depth", s.depth, "materialization depth for parametric families")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--state", s.state, "initial state (default: first state)");
  if (multi) {
    cmd->add_option("--with", s.with, "further transformation, SOURCE@STATE (repeatable)");
  }
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

Word parse_word(const Alphabet& alphabet, const std::string& text) {
  try {
    return alphabet.parse_word(text);
  } catch (const error& e) {
    throw usage_error("bad word '" + text + "': " + e.what());
  }
}

// "PREFIX(PERIOD)", e.g. 01(10).
EventuallyPeriodicWord parse_ep_word(const Alphabet& alphabet, const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.empty() || text.back() != ')') {
    throw usage_error("expected PREFIX(PERIOD), got '" + text + "'");
  }
  const Word period = parse_word(alphabet, text.substr(open + 1, text.size() - open - 2));
  if (period.empty()) throw usage_error("empty period in '" + text + "'");
  return EventuallyPeriodicWord(parse_word(alphabet, text.substr(0, open)), period);
}

std::string format_ep_word(const Alphabet& alphabet, const EventuallyPeriodicWord& w) {
  return alphabet.format(w.prefix()) + "(" + alphabet.format(w.period()) + ")";
}

std::vector<std::string> words_or_stdin(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> lines;
  for (std::string line; std::getline(std::cin, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

struct Output {
  bool json = false;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json counts_json(const std::vector<BigInt>& counts) {
  json out = json::array();
  for (const auto& c : counts) out.push_back(c.str());
  return out;
}

std::string rational_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

void print_automaton(const Automaton& a, const Output& out,
                     const std::optional<std::string>& name = {},
                     const std::optional<std::string>& description = {}) {
  if (out.json) {
    std::cout << render_json(a, name, description);
  } else {
    std::cout << render_dsl(a, name, description);
  }
}

std::vector<std::string> names_of(const std::vector<Transformation>& hs) {
  std::vector<std::string> out;
  for (const auto& h : hs) out.push_back(h.name());
  return out;
}

json report_json(const ParadoxReport& r) {
  json j{{"level", r.level},
         {"transformations", names_of(r.transformations)},
         {"per_item", counts_json(r.per_item)},
         {"aggregate", r.aggregate.str()},
         {"threshold", rational_string(r.threshold)},
         {"satisfied", r.satisfied},
         {"conclusion", r.conclusion()}};
  if (r.block_factor) j["block_factor"] = *r.block_factor;
  if (r.period_bound) j["period_bound"] = *r.period_bound;
  if (r.period_classes) j["period_classes"] = r.period_classes->str();
  return j;
}

void print_report(const ParadoxReport& r, const std::string& item_label) {
  std::cout << "level " << r.level << '\n';
  for (std::size_t i = 0; i < r.per_item.size(); ++i) {
    std::cout << "  " << item_label << "(" << r.transformations[i].name() << ") = " << r.per_item[i]
              << '\n';
  }
  if (r.block_factor) std::cout << "block factor s = " << *r.block_factor << '\n';
  if (r.period_bound) std::cout << "period bound m = " << *r.period_bound << '\n';
  if (r.period_classes) std::cout << "period classes |T| = " << *r.period_classes << '\n';
  std::cout << "aggregate " << r.aggregate << " vs threshold " << r.threshold << ": "
            << (r.satisfied ? "satisfied" : "not satisfied") << '\n'
            << r.conclusion() << '\n';
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Options {
  Source source;
  Output out;
  std::vector<std::string> words;
  std::size_t max_level = 10;
  std::size_t level = 0;
  bool list = false;
  std::size_t block_factor = minimal_block_factor;
  std::size_t l_max = 64;
  std::size_t period_bound = 1;
  std::optional<std::size_t> cycle_bound;
  std::optional<std::string> periodic;
  std::vector<std::string> samples;
  std::size_t k = 2;
  std::optional<std::size_t> seed;
  std::string assignment;
  std::size_t show = 32;
  std::string family_name;
};

void cmd_validate(const Options& o) {
  const Automaton a = load_primary(o.source);
  if (o.out.json) {
    emit({{"valid", true}, {"states", a.state_count()}, {"letters", a.letter_count()}});
    return;
  }
  std::cout << "valid: " << a.state_count() << " states over " << a.letter_count()
            << " letters\n";
}

void cmd_apply(const Options& o) {
  if (o.periodic) {
    const Transformation g = primary(o.source);
    const auto w = parse_ep_word(g.alphabet(), *o.periodic);
    const auto image = apply(g, w);
    if (o.out.json) {
      emit({{"input", format_ep_word(g.alphabet(), w)},
            {"output", format_ep_word(g.alphabet(), image)}});
    } else {
      std::cout << format_ep_word(g.alphabet(), image) << '\n';
    }
    return;
  }
  const auto inputs = words_or_stdin(o.words);
  std::size_t longest = 0;
  for (const auto& w : inputs) longest = std::max(longest, w.size());
  const Transformation g = primary(o.source, longest);
  json results = json::array();
  for (const auto& text : inputs) {
    const Word w = parse_word(g.alphabet(), text);
    const std::string image = g.alphabet().format(apply(g, w));
    if (o.out.json) {
      results.push_back({{"input", g.alphabet().format(w)}, {"output", image}});
    } else {
      std::cout << image << '\n';
    }
  }
  if (o.out.json) emit(results);
}

void cmd_invert(const Options& o) {
  const Transformation g = primary(o.source);
  const Transformation inv = invert(g);
  print_automaton(inv.automaton, o.out, std::nullopt, "initial state " + inv.name());
}

void cmd_compose(const Options& o) {
  if (o.source.with.size() != 1) throw usage_error("compose needs exactly one --with");
  const auto hs = family(o.source, std::nullopt);
  const Transformation gh = compose(hs[0], hs[1]);
  print_automaton(gh.automaton, o.out, std::nullopt,
                  "initial state " + gh.name() + "; " + hs[0].name() + " acts first");
}

void cmd_minimize(const Options& o) {
  const Automaton a = load_primary(o.source);
  const Minimized m = minimize(a);
  if (o.out.json) {
    json classes = json::object();
    for (StateId q = 0; q < a.state_count(); ++q) {
      classes[a.state_name(q)] = m.automaton.state_name(m.class_of[q]);
    }
    emit({{"automaton", to_json(m.automaton)}, {"class_of", classes}});
    return;
  }
  std::cout << render_dsl(m.automaton);
  for (StateId q = 0; q < a.state_count(); ++q) {
    std::cout << "# " << a.state_name(q) << " -> " << m.automaton.state_name(m.class_of[q])
              << '\n';
  }
}

void cmd_ucs(const Options& o) {
  const Automaton a = load_primary(o.source);
  json out = json::array();
  for (const auto& c : find_ucs(a)) {
    std::vector<std::string> names;
    for (StateId q : c.states) names.push_back(a.state_name(q));
    if (o.out.json) {
      out.push_back({{"length", c.length()}, {"states", names}});
      continue;
    }
    std::cout << "length " << c.length() << ":";
    for (const auto& n : names) std::cout << ' ' << n;
    std::cout << '\n';
  }
  if (o.out.json) emit(out);
}

void cmd_count(const Options& o, CountKind kind) {
  const Transformation g = primary(o.source, o.max_level);
  const CountTable t = kind == CountKind::ns ? count_ns(g, o.max_level) : count_nc(g, o.max_level);
  const std::string label = kind == CountKind::ns ? "NS" : "NC";
  std::vector<Word> listed;
  if (o.list) listed = kind == CountKind::ns ? ns_set(g, o.max_level) : nc_set(g, o.max_level);
  if (o.out.json) {
    std::vector<BigInt> from_one(t.counts.begin() + 1, t.counts.end());
    json j{{"state", g.name()}, {"kind", label}, {"levels_from", 1}, {"counts", counts_json(from_one)}};
    if (o.list) {
      std::vector<std::string> words;
      for (const auto& w : listed) words.push_back(g.alphabet().format(w));
      j["words"] = words;
    }
    emit(j);
    return;
  }
  std::cout << "# l " << label << "(" << g.name() << ",l)\n";
  for (std::size_t l = 1; l <= o.max_level; ++l) std::cout << l << ' ' << t.counts[l] << '\n';
  if (o.list) {
    std::cout << "# " << label << " words at l = " << o.max_level << '\n';
    for (const auto& w : listed) std::cout << g.alphabet().format(w) << '\n';
  }
}

void cmd_classify(const Options& o) {
  const Transformation g = primary(o.source);
  const GrowthReport r = classify_growth(g);
  if (o.out.json) {
    json j{{"state", g.name()}, {"growth", std::string(name(r.growth))}};
    if (r.degree) j["degree"] = *r.degree;
    if (r.rate) j["rate"] = *r.rate;
    emit(j);
    return;
  }
  std::cout << name(r.growth);
  if (r.degree) std::cout << " (degree " << *r.degree << ")";
  if (r.rate) std::cout << " (rate " << *r.rate << ")";
  std::cout << '\n';
}

void cmd_member(const Options& o, bool g1) {
  const Transformation g = primary(o.source);
  const Membership m = g1 ? decide_g1(g) : decide_g0(g);
  const std::string group = g1 ? "G1" : "G0";
  if (o.out.json) {
    json j{{"state", g.name()}, {"group", group}, {"member", m.member}};
    if (m.witness) j["witness"] = g.alphabet().format(*m.witness);
    emit(j);
    return;
  }
  if (m.member) {
    std::cout << g.name() << " is in " << group << '\n';
  } else {
    std::cout << g.name() << " is not in " << group << " (witness prefix '"
              << g.alphabet().format(*m.witness) << "')\n";
  }
}

void cmd_lemma1(const Options& o) {
  if (!o.periodic) throw usage_error("lemma1 needs --word PREFIX(PERIOD)");
  const Transformation g = primary(o.source);
  const auto w = parse_ep_word(g.alphabet(), *o.periodic);
  const Lemma1Verdict v = check_lemma1(g, w, w.level());
  if (o.out.json) {
    json j{{"level", w.level()}, {"applicable", v.applicable}};
    if (v.applicable) {
      j["holds"] = v.holds;
      j["period_length"] = v.period_length;
      j["cycle_length"] = v.cycle_length;
      j["observed_period"] = v.observed_period;
      j["image"] = format_ep_word(g.alphabet(), *v.image);
    }
    emit(j);
    return;
  }
  if (!v.applicable) {
    std::cout << "not applicable: the prefix keeps " << g.name() << " out of every UC\n";
    return;
  }
  std::cout << "image " << format_ep_word(g.alphabet(), *v.image) << '\n'
            << "period " << v.period_length << ", UC length " << v.cycle_length
            << ", image period " << v.observed_period << ": " << (v.holds ? "holds" : "FAILS")
            << '\n';
}

// Every word of the class: all prefixes of length `level`, every primitive
// period whose length divides m.
std::vector<EventuallyPeriodicWord> whole_class(std::size_t k, std::size_t level, std::size_t m) {
  std::vector<Word> periods;
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    if (word_count(k, d) > (std::uint64_t{1} << 16)) throw usage_error("period bound too large to enumerate");
    for (std::uint64_t i = 0; i < word_count(k, d); ++i) {
      Word t = word_from_index(i, d, k);
      if (is_primitive(t)) periods.push_back(std::move(t));
    }
  }
  const std::uint64_t prefixes = word_count(k, level);
  if (prefixes * periods.size() > (std::uint64_t{1} << 20)) {
    throw usage_error("class too large to enumerate; pass --sample");
  }
  std::vector<EventuallyPeriodicWord> out;
  for (std::uint64_t i = 0; i < prefixes; ++i) {
    for (const auto& t : periods) out.emplace_back(word_from_index(i, level, k), t);
  }
  return out;
}

void cmd_lemma2(const Options& o) {
  const Transformation g = primary(o.source);
  const std::size_t c = o.cycle_bound.value_or(max_uc_length(g, o.level));
  std::vector<EventuallyPeriodicWord> samples;
  for (const auto& s : o.samples) samples.push_back(parse_ep_word(g.alphabet(), s));
  if (o.samples.empty()) samples = whole_class(g.alphabet().size(), o.level, o.period_bound);
  const Lemma2Verdict v = check_lemma2(g, o.level, c, o.period_bound, samples);
  if (o.out.json) {
    std::vector<std::string> failures;
    for (const auto& w : v.failures) failures.push_back(format_ep_word(g.alphabet(), w));
    emit({{"level", o.level},
          {"cycle_bound", c},
          {"period_bound", o.period_bound},
          {"checked", v.checked},
          {"skipped", v.skipped},
          {"failed", v.failed},
          {"failures", failures}});
    return;
  }
  std::cout << "checked " << v.checked << ", skipped " << v.skipped << " (prefix avoids UCs), failed "
            << v.failed << '\n';
  for (const auto& w : v.failures) std::cout << "  failure: " << format_ep_word(g.alphabet(), w) << '\n';
}

void cmd_periods(const Options& o) {
  const BigInt count = count_periods(o.k, o.period_bound);
  if (o.out.json) {
    emit({{"k", o.k}, {"m", o.period_bound}, {"periods", count.str()}});
    return;
  }
  std::cout << count << '\n';
}

void cmd_t1(const Options& o) {
  const auto hs = family(o.source, o.level);
  const ParadoxReport r = theorem1_report(hs, o.level, o.block_factor);
  if (o.out.json) {
    emit(report_json(r));
  } else {
    print_report(r, "NS");
  }
}

void cmd_t2(const Options& o) {
  const auto hs = family(o.source, o.level);
  const ParadoxReport r = theorem2_report(hs, o.level, o.period_bound);
  if (o.out.json) {
    emit(report_json(r));
  } else {
    print_report(r, "NC");
  }
}

void cmd_min_level(const Options& o) {
  const auto hs = family(o.source, std::nullopt);
  const auto level = find_minimal_level(hs, o.block_factor, o.l_max);
  if (o.out.json) {
    emit({{"block_factor", o.block_factor},
          {"l_max", o.l_max},
          {"level", level ? json(*level) : json(nullptr)}});
    return;
  }
  if (level) {
    std::cout << *level << '\n';
  } else {
    std::cout << "none up to " << o.l_max << '\n';
  }
}

void cmd_audit(const Options& o) {
  const auto hs = family(o.source, o.level);
  const std::size_t k = hs.front().alphabet().size();
  const std::uint64_t total = word_count(k, o.level);
  std::vector<std::size_t> assignment;
  if (!o.assignment.empty()) {
    std::istringstream in(o.assignment);
    for (std::string part; std::getline(in, part, ',');) {
      try {
        const std::size_t i = std::stoul(part);
        if (i == 0) throw usage_error("parts are numbered from 1");
        assignment.push_back(i - 1);
      } catch (const std::logic_error&) {
        throw usage_error("bad part number '" + part + "' in --assign");
      }
    }
    if (assignment.size() != total) {
      throw error(errc::partition_not_total, "--assign lists " + std::to_string(assignment.size()) +
                                                 " words, need " + std::to_string(total));
    }
  } else {
    std::mt19937_64 rng(o.seed.value_or(0));
    assignment.resize(total);
    for (auto& a : assignment) a = rng() % hs.size();
  }
  const auto audit =
      coin_audit(o.level, hs, parts_from_assignment(assignment, hs.size(), o.level, k));
  const Alphabet& alphabet = hs.front().alphabet();
  if (o.out.json) {
    std::vector<std::string> deficit;
    for (const auto& w : audit.deficit) deficit.push_back(alphabet.format(w));
    emit({{"level", o.level},
          {"transformations", names_of(hs)},
          {"total_coins", audit.total_coins()},
          {"words", total},
          {"doubling", audit.doubling()},
          {"coin_counts", audit.coin_counts},
          {"deficit", deficit}});
    return;
  }
  std::cout << "words " << total << ", coins " << audit.total_coins() << ", deficit "
            << audit.deficit.size() << (audit.doubling() ? " (doubling!)" : "") << '\n';
  for (std::size_t i = 0; i < audit.deficit.size() && i < o.show; ++i) {
    const Word& w = audit.deficit[i];
    std::cout << "  " << alphabet.format(w) << ": " << audit.coin_counts[word_index(w, k)]
              << " coin(s)\n";
  }
  if (audit.deficit.size() > o.show) {
    std::cout << "  ... " << audit.deficit.size() - o.show << " more\n";
  }
}

void cmd_export_dot(const Options& o) { std::cout << render_dot(load_primary(o.source)); }

void cmd_gen(const Options& o) {
  MaterializationPolicy policy;
  policy.depth = o.source.depth.value_or(8);
  print_automaton(generate_builtin(o.family_name, policy), o.out, o.family_name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mealy automata: counting, periodic words and paradox certificates"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.out.json, "machine-readable output");

  auto sub = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_flag("--json", o.out.json, "machine-readable output");
    return c;
  };

  auto* validate = sub("validate", "check an automaton file or builtin");
  add_source(validate, o.source);

  auto* apply_cmd = sub("apply", "apply a transformation to words (arguments or stdin)");
  add_source(apply_cmd, o.source);
  apply_cmd->add_option("words", o.words, "input words");
  apply_cmd->add_option("--word", o.periodic, "eventually periodic word PREFIX(PERIOD)");

  auto* invert_cmd = sub("invert", "print the inverse automaton");
  add_source(invert_cmd, o.source);

  auto* compose_cmd = sub("compose", "print the product; the first transformation acts first");
  add_source(compose_cmd, o.source, true);

  auto* minimize_cmd = sub("minimize", "print the minimized automaton");
  add_source(minimize_cmd, o.source);

  auto* ucs = sub("ucs", "list unconditional cycles");
  add_source(ucs, o.source);

  for (const char* name : {"ns", "nc"}) {
    auto* c = sub(name, std::string(name) == "ns" ? "NS(g, l) for l = 1..max-level"
                                                  : "NC(g, l) for l = 1..max-level");
    add_source(c, o.source);
    c->add_option("--max-level,-l", o.max_level, "largest level")->capture_default_str();
    c->add_flag("--list", o.list, "also list the counted words at max-level");
  }

  auto* classify = sub("classify", "growth class of NS(g, l)");
  add_source(classify, o.source);

  auto* g0 = sub("member-g0", "decide NS(g, l) = o(|X|^l)");
  add_source(g0, o.source);
  auto* g1 = sub("member-g1", "decide NC(g, l) = o(|X|^l)");
  add_source(g1, o.source);

  auto* lemma1 = sub("lemma1", "period of the image of an eventually periodic word");
  add_source(lemma1, o.source);
  lemma1->add_option("--word", o.periodic, "PREFIX(PERIOD); the prefix length is the level")
      ->required();

  auto* lemma2 = sub("lemma2", "invariance of a periodic class");
  add_source(lemma2, o.source);
  lemma2->add_option("--level,-l", o.level, "prefix length")->required();
  lemma2->add_option("-m,--period-bound", o.period_bound, "period lengths divide m")->required();
  lemma2->add_option("-c,--cycle-bound", o.cycle_bound, "UC length bound (default: longest reachable)");
  lemma2->add_option("--sample", o.samples, "PREFIX(PERIOD) (repeatable; default: whole class)");

  auto* periods = sub("periods", "number of primitive periods with length dividing m");
  periods->add_option("-k", o.k, "alphabet size")->check(CLI::Range(2, 1 << 16))->capture_default_str();
  periods->add_option("-m,--period-bound", o.period_bound, "divisor bound")->required()->check(CLI::PositiveNumber);

  auto* t1 = sub("t1-report", "block counting certificate at one level");
  add_source(t1, o.source, true);
  t1->add_option("--level,-l", o.level, "level")->required();
  t1->add_option("-s,--block-factor", o.block_factor, "block factor")->capture_default_str();

  auto* t2 = sub("t2-report", "period-class counting certificate at one level");
  add_source(t2, o.source, true);
  t2->add_option("--level,-l", o.level, "level")->required();
  t2->add_option("-m,--period-bound", o.period_bound, "period bound")->required();

  auto* min_level = sub("min-level", "least level where the block certificate holds");
  add_source(min_level, o.source, true);
  min_level->add_option("-s,--block-factor", o.block_factor, "block factor")->capture_default_str();
  min_level->add_option("--l-max", o.l_max, "largest level to try")->capture_default_str();

  auto* audit = sub("audit", "coin audit over a partition of X^L");
  add_source(audit, o.source, true);
  audit->add_option("--level,-l", o.level, "word length L")->required();
  auto* assign = audit->add_option("--assign", o.assignment,
                                   "comma-separated part numbers (1-based), words in index order");
  audit->add_option("--seed", o.seed, "random partition seed")->excludes(assign);
  audit->add_option("--show", o.show, "deficit words to print")->capture_default_str();

  auto* dot = sub("export-dot", "Moore diagram as Graphviz DOT");
  add_source(dot, o.source);

  auto* gen = sub("gen", "print a builtin family in the DSL");
  gen->add_option("family", o.family_name, "family name")
      ->required()
      ->check(CLI::IsMember(builtin_families()));
  gen->add_option("--depth", o.source.depth, "materialization depth")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) cmd_validate(o);
    else if (*apply_cmd) cmd_apply(o);
    else if (*invert_cmd) cmd_invert(o);
    else if (*compose_cmd) cmd_compose(o);
    else if (*minimize_cmd) cmd_minimize(o);
    else if (*ucs) cmd_ucs(o);
    else if (app.got_subcommand("ns")) cmd_count(o, CountKind::ns);
    else if (app.got_subcommand("nc")) cmd_count(o, CountKind::nc);
    else if (*classify) cmd_classify(o);
    else if (*g0) cmd_member(o, false);
    else if (*g1) cmd_member(o, true);
    else if (*lemma1) cmd_lemma1(o);
    else if (*lemma2) cmd_lemma2(o);
    else if (*periods) cmd_periods(o);
    else if (*t1) cmd_t1(o);
    else if (*t2) cmd_t2(o);
    else if (*min_level) cmd_min_level(o);
    else if (*audit) cmd_audit(o);
    else if (*dot) cmd_export_dot(o);
    else if (*gen) cmd_gen(o);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == errc::syntax_error ? 2 : 1;
  }
  return 0;
}
