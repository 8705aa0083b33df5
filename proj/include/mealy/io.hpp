#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mealy/automaton.hpp"
#include "mealy/error.hpp"
#include "mealy/word.hpp"

namespace mealy {

struct AutomatonDocument {
  Automaton automaton;
  std::optional<std::string> name;
  std::optional<std::string> description;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] inline void syntax(std::size_t line, std::size_t column, const std::string& what) {
  throw error(errc::syntax_error,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '|' || c == '#') {
      return false;
    }
  }
  return s.find("->") == std::string_view::npos;
}

// Column (1-based) of `part` inside `line`, both views into the same buffer.
inline std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace detail

// Line-oriented format:
//
//   alphabet: 0 1
//   state q:
//     0 -> e | 1
//     1 -> q | 0
//
// `#` starts a comment. Optional `name:` and `description:` lines may
// precede the alphabet.
inline AutomatonDocument parse_dsl(std::string_view text) {
  AutomatonDocument doc;
  RawAutomaton raw;
  bool have_alphabet = false;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view full = text.substr(start, end - start);
    start = end + 1;
    ++line_number;

    std::string_view line = full.substr(0, full.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t col = detail::column_of(full, line);

    auto keyword = [&](std::string_view key) -> std::optional<std::string_view> {
      if (line.size() > key.size() && line.starts_with(key) && line[key.size()] == ':') {
        return detail::trim(line.substr(key.size() + 1));
      }
      return std::nullopt;
    };

    if (auto value = keyword("name")) {
      doc.name = std::string(*value);
    } else if (auto value = keyword("description")) {
      doc.description = std::string(*value);
    } else if (auto value = keyword("alphabet")) {
      if (have_alphabet) detail::syntax(line_number, col, "duplicate alphabet");
      std::istringstream in{std::string(*value)};
      std::string token;
      while (in >> token) raw.alphabet.push_back(token);
      have_alphabet = true;
    } else if (line.starts_with("state") && line.size() > 5 &&
               std::isspace(static_cast<unsigned char>(line[5]))) {
      if (!have_alphabet) detail::syntax(line_number, col, "state before alphabet");
      if (line.back() != ':') {
        detail::syntax(line_number, col + line.size(), "expected ':' after state name");
      }
      const std::string_view ident = detail::trim(line.substr(5, line.size() - 6));
      if (!detail::valid_identifier(ident)) {
        detail::syntax(line_number, col + 6, "invalid state name '" + std::string(ident) + "'");
      }
      for (const auto& s : raw.states) {
        if (s.name == ident) {
          detail::syntax(line_number, detail::column_of(full, ident),
                         "duplicate state '" + std::string(ident) + "'");
        }
      }
      raw.states.push_back({std::string(ident), {}});
    } else {
      const std::size_t arrow = line.find("->");
      const std::size_t bar = line.rfind('|');
      if (arrow == std::string_view::npos) detail::syntax(line_number, col, "expected '->'");
      if (bar == std::string_view::npos || bar < arrow) {
        detail::syntax(line_number, col + arrow, "expected '| output' after next state");
      }
      if (raw.states.empty()) detail::syntax(line_number, col, "transition outside a state block");
      const auto input = detail::trim(line.substr(0, arrow));
      const auto target = detail::trim(line.substr(arrow + 2, bar - arrow - 2));
      const auto output = detail::trim(line.substr(bar + 1));
      if (input.empty()) detail::syntax(line_number, col, "missing input letter");
      if (!detail::valid_identifier(target)) {
        detail::syntax(line_number, col + arrow + 2, "invalid next state");
      }
      if (output.empty()) detail::syntax(line_number, col + bar + 1, "missing output letter");
      for (auto [part, what] : {std::pair{input, "input"}, std::pair{output, "output"}}) {
        if (std::find(raw.alphabet.begin(), raw.alphabet.end(), part) == raw.alphabet.end()) {
          detail::syntax(line_number, detail::column_of(full, part),
                         std::string(what) + " '" + std::string(part) + "' is not a letter");
        }
      }
      auto& transitions = raw.states.back().transitions;
      for (const auto& t : transitions) {
        if (t.input == input) {
          detail::syntax(line_number, col, "letter '" + std::string(input) +
                                               "' defined twice in state '" +
                                               raw.states.back().name + "'");
        }
      }
      transitions.push_back({std::string(input), std::string(target), std::string(output)});
    }
  }
  if (!have_alphabet) detail::syntax(line_number, 1, "missing alphabet");
  if (raw.states.empty()) detail::syntax(line_number, 1, "no states defined");
  doc.automaton = Automaton::validate(raw);
  return doc;
}

// {"alphabet": [...], "states": {"q": {"0": ["e", "1"], ...}, ...}}
inline AutomatonDocument parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::syntax_error, e.what());
  }
  AutomatonDocument doc;
  RawAutomaton raw;
  try {
    for (const auto& s : j.at("alphabet")) raw.alphabet.push_back(s.get<std::string>());
    for (const auto& [name, row] : j.at("states").items()) {
      RawState state{name, {}};
      for (const auto& [input, cell] : row.items()) {
        if (!cell.is_array() || cell.size() != 2) {
          throw error(errc::syntax_error, "state '" + name + "' letter '" + input +
                                              "' needs [next, output]");
        }
        state.transitions.push_back(
            {input, cell[0].get<std::string>(), cell[1].get<std::string>()});
      }
      raw.states.push_back(std::move(state));
    }
    if (j.contains("name")) doc.name = j["name"].get<std::string>();
    if (j.contains("description")) doc.description = j["description"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::syntax_error, e.what());
  }
  doc.automaton = Automaton::validate(raw);
  return doc;
}

inline AutomatonDocument parse_document(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(text);
  return parse_dsl(text);
}

inline Automaton parse_automaton(std::string_view text) {
  return parse_document(text).automaton;
}

inline std::string render_dsl(const Automaton& a, const std::optional<std::string>& name = {},
                              const std::optional<std::string>& description = {}) {
  std::ostringstream out;
  if (name) out << "name: " << *name << '\n';
  if (description) out << "description: " << *description << '\n';
  out << "alphabet:";
  for (const auto& s : a.alphabet().symbols()) out << ' ' << s;
  out << '\n';
  for (StateId q = 0; q < a.state_count(); ++q) {
    out << "state " << a.state_name(q) << ":\n";
    for (Letter x = 0; x < a.letter_count(); ++x) {
      out << "  " << a.alphabet().symbol(x) << " -> " << a.state_name(a.next(q, x)) << " | "
          << a.alphabet().symbol(a.output(q, x)) << '\n';
    }
  }
  return out.str();
}

inline nlohmann::json to_json(const Automaton& a) {
  nlohmann::json states = nlohmann::json::object();
  for (StateId q = 0; q < a.state_count(); ++q) {
    nlohmann::json row = nlohmann::json::object();
    for (Letter x = 0; x < a.letter_count(); ++x) {
      row[a.alphabet().symbol(x)] = {a.state_name(a.next(q, x)),
                                     a.alphabet().symbol(a.output(q, x))};
    }
    states[a.state_name(q)] = std::move(row);
  }
  return {{"alphabet", a.alphabet().symbols()}, {"states", std::move(states)}};
}

inline std::string render_json(const Automaton& a, const std::optional<std::string>& name = {},
                               const std::optional<std::string>& description = {}) {
  nlohmann::json j = to_json(a);
  if (name) j["name"] = *name;
  if (description) j["description"] = *description;
  return j.dump(2) + "\n";
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Moore diagram: one edge q -> pi(q, x) labelled "x|lambda(q, x)" per state
// and letter, in state order then letter order.
inline std::string render_dot(const Automaton& a, std::string_view graph_name = "automaton") {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(graph_name) << " {\n";
  out << "  rankdir=LR;\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    out << "  " << detail::dot_quote(a.state_name(q)) << ";\n";
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (Letter x = 0; x < a.letter_count(); ++x) {
      out << "  " << detail::dot_quote(a.state_name(q)) << " -> "
          << detail::dot_quote(a.state_name(a.next(q, x))) << " [label="
          << detail::dot_quote(a.alphabet().symbol(x) + "|" +
                               a.alphabet().symbol(a.output(q, x)))
          << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace mealy
