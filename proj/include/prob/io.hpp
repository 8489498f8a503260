#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "prob/bundle.hpp"
#include "prob/errors.hpp"
#include "prob/label.hpp"
#include "prob/partition.hpp"
#include "prob/random.hpp"
#include "prob/rational.hpp"
#include "prob/scheme.hpp"

namespace prob::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

enum class DocKind { scheme, rv, rf, bundle, partition, pairs };

inline const char* kind_name(DocKind k) {
  switch (k) {
    case DocKind::scheme: return "scheme";
    case DocKind::rv: return "rv";
    case DocKind::rf: return "rf";
    case DocKind::bundle: return "bundle";
    case DocKind::partition: return "partition";
    case DocKind::pairs: return "pairs";
  }
  return "?";
}

// One parsed document of the bit-exact text format. Payload order matches
// the DocKind enumeration.
struct Document {
  std::variant<Scheme, RandomVariable, RandomFunction, Bundle, Partition,
               std::vector<Scheme>>
      payload;

  DocKind kind() const { return static_cast<DocKind>(payload.index()); }

  const Scheme& scheme() const { return expect<Scheme>(DocKind::scheme); }
  const RandomVariable& rv() const { return expect<RandomVariable>(DocKind::rv); }
  const RandomFunction& rf() const { return expect<RandomFunction>(DocKind::rf); }
  const Bundle& bundle() const { return expect<Bundle>(DocKind::bundle); }
  const Partition& partition() const { return expect<Partition>(DocKind::partition); }
  const std::vector<Scheme>& pairs() const {
    return expect<std::vector<Scheme>>(DocKind::pairs);
  }

 private:
  template <class T>
  const T& expect(DocKind want) const {
    require(std::holds_alternative<T>(payload), errc::semantic_error,
            std::string("expected a ") + kind_name(want) + " document, got " +
                kind_name(kind()));
    return std::get<T>(payload);
  }
};

enum class Style { canonical, pretty };

namespace detail {

[[noreturn]] inline void syntax_fail(const std::string& text, std::size_t byte,
                                     const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  fail(errc::syntax_error, "line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": " + what);
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    syntax_fail(text, e.byte, e.what());
  }
}

[[noreturn]] inline void semantic_fail(const std::string& where,
                                       const std::string& what) {
  fail(errc::semantic_error, "at " + where + ": " + what);
}

inline OutcomeLabel label_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return OutcomeLabel::atom(j.get<std::string>());
    } catch (const Error& e) {
      semantic_fail(where, e.what());
    }
  }
  if (j.is_array()) {
    if (j.size() < 2) semantic_fail(where, "tuple label needs arity >= 2");
    std::vector<OutcomeLabel> parts;
    parts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
      parts.push_back(
          label_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return OutcomeLabel::tuple(std::move(parts));
  }
  semantic_fail(where, "a label must be a string or an array");
}

inline ordered_json label_to_json(const OutcomeLabel& l) {
  if (l.is_atom()) return l.text();
  ordered_json arr = ordered_json::array();
  for (const auto& p : l.parts()) arr.push_back(label_to_json(p));
  return arr;
}

inline OutcomeLabel label_from_key(const std::string& key, const std::string& where) {
  try {
    return OutcomeLabel::parse(key);
  } catch (const Error& e) {
    semantic_fail(where + "['" + key + "']", e.what());
  }
}

inline Rational rational_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const Error& e) {
    semantic_fail(where, e.what());
  }
  semantic_fail(where, "a rational must be a string \"p/q\" or an integer");
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    semantic_fail(where, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline Scheme scheme_from_payload(const json& j, const std::string& where) {
  const json& outcomes = member(j, "outcomes", where);
  const json& mass = member(j, "mass", where);
  if (!outcomes.is_array()) semantic_fail(where + ".outcomes", "expected an array");
  if (!mass.is_object()) semantic_fail(where + ".mass", "expected an object");
  std::vector<OutcomeLabel> labels;
  labels.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    labels.push_back(label_from_json(
        outcomes[i], where + ".outcomes[" + std::to_string(i) + "]"));
  if (mass.size() != labels.size())
    semantic_fail(where + ".mass",
                  "mass must have exactly one entry per outcome");
  std::vector<Rational> masses;
  masses.reserve(labels.size());
  for (const auto& l : labels) {
    std::string key = l.str();
    if (!mass.contains(key))
      semantic_fail(where + ".mass", "no mass for outcome '" + key + "'");
    masses.push_back(rational_from_json(mass.at(key), where + ".mass['" + key + "']"));
  }
  try {
    return Scheme::make(std::move(labels), std::move(masses));
  } catch (const Error& e) {
    semantic_fail(where, e.what());
  }
}

// A scheme position may inline the payload or name a file (path string).
inline Scheme scheme_from_ref(const json& j, const std::string& where,
                              const std::filesystem::path& base_dir);

inline ordered_json scheme_to_payload(const Scheme& s) {
  ordered_json out;
  ordered_json outcomes = ordered_json::array();
  for (const auto& w : s.outcomes()) outcomes.push_back(label_to_json(w));
  out["outcomes"] = std::move(outcomes);
  ordered_json mass = ordered_json::object();
  for (std::size_t i = 0; i < s.size(); ++i)
    mass[s.outcome(i).str()] = s.mass_at(i).str();
  out["mass"] = std::move(mass);
  return out;
}

template <class T, class FromJson>
std::map<OutcomeLabel, T> label_map_from_json(const json& j, const std::string& where,
                                              FromJson from) {
  if (!j.is_object()) semantic_fail(where, "expected an object");
  std::map<OutcomeLabel, T> out;
  for (const auto& [key, value] : j.items())
    out.emplace(label_from_key(key, where), from(value, where + "['" + key + "']"));
  return out;
}

}  // namespace detail

inline Document parse_document(const std::string& text,
                               const std::filesystem::path& base_dir = ".");

inline Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), errc::syntax_error, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.parent_path());
}

namespace detail {

inline Scheme scheme_from_ref(const json& j, const std::string& where,
                              const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    Document doc = load_document(p);
    require(doc.kind() == DocKind::scheme, errc::semantic_error,
            "at " + where + ": '" + p.string() + "' is not a scheme document");
    return doc.scheme();
  }
  if (j.is_object() && j.contains("kind")) {
    if (!j.at("kind").is_string() || j.at("kind").get<std::string>() != "scheme")
      semantic_fail(where, "nested document must be a scheme");
  }
  return scheme_from_payload(j, where);
}

}  // namespace detail

inline Document parse_document(const std::string& text,
                               const std::filesystem::path& base_dir) {
  using namespace detail;
  json j = parse_json(text);
  if (!j.is_object()) semantic_fail("$", "a document is a JSON object");
  const json& kind_j = member(j, "kind", "$");
  if (!kind_j.is_string()) semantic_fail("$.kind", "expected a string");
  std::string kind = kind_j.get<std::string>();

  if (kind == "scheme") {
    return Document{scheme_from_payload(j, "$")};
  }
  if (kind == "rv" || kind == "rf") {
    Scheme s = scheme_from_ref(member(j, "scheme", "$"), "$.scheme", base_dir);
    const json& values = member(j, "values", "$");
    if (kind == "rv") {
      auto m = label_map_from_json<Rational>(values, "$.values", rational_from_json);
      try {
        return Document{RandomVariable(s, m)};
      } catch (const Error& e) {
        semantic_fail("$.values", e.what());
      }
    }
    auto m = label_map_from_json<OutcomeLabel>(values, "$.values", label_from_json);
    try {
      return Document{RandomFunction(s, m)};
    } catch (const Error& e) {
      semantic_fail("$.values", e.what());
    }
  }
  if (kind == "bundle") {
    Scheme total = scheme_from_ref(member(j, "total", "$"), "$.total", base_dir);
    Scheme base = scheme_from_ref(member(j, "base", "$"), "$.base", base_dir);
    auto m = label_map_from_json<OutcomeLabel>(member(j, "map", "$"), "$.map",
                                               label_from_json);
    try {
      return Document{Bundle::make(std::move(total), std::move(base), m)};
    } catch (const Error& e) {
      semantic_fail("$.map", e.what());
    }
  }
  if (kind == "partition") {
    Scheme s = scheme_from_ref(member(j, "scheme", "$"), "$.scheme", base_dir);
    const json& blocks_j = member(j, "blocks", "$");
    if (!blocks_j.is_array()) semantic_fail("$.blocks", "expected an array");
    std::vector<std::vector<OutcomeLabel>> blocks;
    for (std::size_t b = 0; b < blocks_j.size(); ++b) {
      std::string where = "$.blocks[" + std::to_string(b) + "]";
      if (!blocks_j[b].is_array()) semantic_fail(where, "expected an array");
      std::vector<OutcomeLabel> block;
      for (std::size_t i = 0; i < blocks_j[b].size(); ++i)
        block.push_back(label_from_json(blocks_j[b][i],
                                        where + "[" + std::to_string(i) + "]"));
      blocks.push_back(std::move(block));
    }
    try {
      return Document{Partition::make(std::move(s), std::move(blocks))};
    } catch (const Error& e) {
      semantic_fail("$.blocks", e.what());
    }
  }
  if (kind == "pairs") {
    const json& schemes_j = member(j, "schemes", "$");
    if (!schemes_j.is_array()) semantic_fail("$.schemes", "expected an array");
    std::vector<Scheme> schemes;
    for (std::size_t i = 0; i < schemes_j.size(); ++i)
      schemes.push_back(scheme_from_ref(
          schemes_j[i], "$.schemes[" + std::to_string(i) + "]", base_dir));
    require(!schemes.empty(), errc::semantic_error,
            "at $.schemes: a pairs document lists at least one scheme");
    return Document{std::move(schemes)};
  }
  fail(errc::semantic_error, "unknown document kind '" + kind + "'");
}

inline ordered_json document_to_json(const Document& doc) {
  using namespace detail;
  ordered_json out;
  out["kind"] = kind_name(doc.kind());
  switch (doc.kind()) {
    case DocKind::scheme: {
      ordered_json payload = scheme_to_payload(doc.scheme());
      out.update(payload);
      break;
    }
    case DocKind::rv: {
      const auto& x = doc.rv();
      out["scheme"] = scheme_to_payload(x.domain());
      ordered_json values = ordered_json::object();
      for (std::size_t i = 0; i < x.domain().size(); ++i)
        values[x.domain().outcome(i).str()] = x.value_at(i).str();
      out["values"] = std::move(values);
      break;
    }
    case DocKind::rf: {
      const auto& x = doc.rf();
      out["scheme"] = scheme_to_payload(x.domain());
      ordered_json values = ordered_json::object();
      for (std::size_t i = 0; i < x.domain().size(); ++i)
        values[x.domain().outcome(i).str()] = label_to_json(x.value_at(i));
      out["values"] = std::move(values);
      break;
    }
    case DocKind::bundle: {
      const auto& b = doc.bundle();
      out["total"] = scheme_to_payload(b.total());
      out["base"] = scheme_to_payload(b.base());
      ordered_json map = ordered_json::object();
      for (std::size_t i = 0; i < b.total().size(); ++i)
        map[b.total().outcome(i).str()] = label_to_json(b.map_at(i));
      out["map"] = std::move(map);
      break;
    }
    case DocKind::partition: {
      const auto& p = doc.partition();
      out["scheme"] = scheme_to_payload(p.domain());
      ordered_json blocks = ordered_json::array();
      for (const auto& block : p.blocks()) {
        ordered_json arr = ordered_json::array();
        for (const auto& w : block) arr.push_back(label_to_json(w));
        blocks.push_back(std::move(arr));
      }
      out["blocks"] = std::move(blocks);
      break;
    }
    case DocKind::pairs: {
      ordered_json schemes = ordered_json::array();
      for (const auto& s : doc.pairs()) schemes.push_back(scheme_to_payload(s));
      out["schemes"] = std::move(schemes);
      break;
    }
  }
  return out;
}

inline std::string render(const ordered_json& j, Style style) {
  return (style == Style::canonical ? j.dump() : j.dump(2)) + "\n";
}

inline std::string serialize_document(const Document& doc,
                                      Style style = Style::canonical) {
  return render(document_to_json(doc), style);
}

}  // namespace prob::io
