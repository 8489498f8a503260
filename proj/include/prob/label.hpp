#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "prob/errors.hpp"

namespace prob {

// An outcome is named by an opaque atomic token or by a tuple of labels.
// Tuples name points of product constructions (joint values, fiber products)
// and nest exactly as the construction brackets them.
//
// Total order: atoms lexicographically, tuples componentwise, atom < tuple.
// Schemes keep their outcomes sorted in this order.
class OutcomeLabel {
 public:
  static OutcomeLabel atom(std::string text) {
    require(!text.empty(), errc::bad_label, "empty atomic label");
    for (char c : text)
      require(c != '(' && c != ')' && c != ',', errc::bad_label,
              "atomic label '" + text + "' contains a tuple delimiter");
    OutcomeLabel l;
    l.rep_ = std::move(text);
    return l;
  }

  static OutcomeLabel tuple(std::vector<OutcomeLabel> parts) {
    require(parts.size() >= 2, errc::bad_label, "tuple label needs arity >= 2");
    OutcomeLabel l;
    l.rep_ = std::move(parts);
    return l;
  }

  static OutcomeLabel pair(OutcomeLabel a, OutcomeLabel b) {
    return tuple({std::move(a), std::move(b)});
  }

  bool is_atom() const { return rep_.index() == 0; }
  bool is_tuple() const { return rep_.index() == 1; }

  const std::string& text() const { return std::get<0>(rep_); }
  const std::vector<OutcomeLabel>& parts() const { return std::get<1>(rep_); }

  std::size_t arity() const { return is_atom() ? 1 : parts().size(); }

  const OutcomeLabel& component(std::size_t i) const {
    require(is_tuple(), errc::bad_label, "component of atomic label");
    require(i < parts().size(), errc::bad_label, "tuple component out of range");
    return parts()[i];
  }

  // Text encoding: atoms verbatim, tuples "(a,b,...)". Unambiguous because
  // atoms may not contain '(' ')' ','. Used wherever a label must be a map
  // key in the document format.
  std::string str() const {
    if (is_atom()) return text();
    std::string out = "(";
    const auto& ps = parts();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ',';
      out += ps[i].str();
    }
    out += ')';
    return out;
  }

  static OutcomeLabel parse(std::string_view text) {
    std::size_t pos = 0;
    OutcomeLabel l = parse_at(text, pos);
    require(pos == text.size(), errc::bad_label,
            "trailing characters in label '" + std::string(text) + "'");
    return l;
  }

  friend bool operator==(const OutcomeLabel& a, const OutcomeLabel& b) {
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const OutcomeLabel& a, const OutcomeLabel& b) {
    return !(a == b);
  }
  friend bool operator<(const OutcomeLabel& a, const OutcomeLabel& b) {
    if (a.rep_.index() != b.rep_.index()) return a.is_atom();
    if (a.is_atom()) return a.text() < b.text();
    return a.parts() < b.parts();
  }
  friend bool operator>(const OutcomeLabel& a, const OutcomeLabel& b) { return b < a; }
  friend bool operator<=(const OutcomeLabel& a, const OutcomeLabel& b) { return !(b < a); }
  friend bool operator>=(const OutcomeLabel& a, const OutcomeLabel& b) { return !(a < b); }

  std::size_t hash() const {
    if (is_atom()) return std::hash<std::string>{}(text());
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& p : parts()) h = h * 1099511628211ull ^ p.hash();
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const OutcomeLabel& l);

 private:
  OutcomeLabel() : rep_(std::string()) {}

  static OutcomeLabel parse_at(std::string_view text, std::size_t& pos) {
    require(pos < text.size(), errc::bad_label, "empty label");
    if (text[pos] != '(') {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
             text[pos] != ',')
        ++pos;
      return atom(std::string(text.substr(start, pos - start)));
    }
    ++pos;  // '('
    std::vector<OutcomeLabel> parts;
    while (true) {
      parts.push_back(parse_at(text, pos));
      require(pos < text.size(), errc::bad_label,
              "unterminated tuple in label '" + std::string(text) + "'");
      char c = text[pos++];
      if (c == ')') break;
      require(c == ',', errc::bad_label,
              "malformed tuple in label '" + std::string(text) + "'");
    }
    return tuple(std::move(parts));
  }

  std::variant<std::string, std::vector<OutcomeLabel>> rep_;
};

inline std::ostream& operator<<(std::ostream& os, const OutcomeLabel& l) {
  return os << l.str();
}

}  // namespace prob

template <>
struct std::hash<prob::OutcomeLabel> {
  std::size_t operator()(const prob::OutcomeLabel& l) const { return l.hash(); }
};
