#pragma once

// Concrete syntax for models (.ccm), views (.ccv) and witnesses (.ccw).
//
//   model   ::= "model" Name "{" (compDecl | connDecl)* "}"
//   view    ::= "view" Name "{" (compDecl | connDecl)* "}"
//   compDecl::= "component" Name ( "{" (portDecl | compDecl | connDecl)* "}" | ";" )
//   portDecl::= "port" ("in" | "out") Type Name ";"
//   connDecl::= "connect" Endpoint "->" Endpoint ";"
//   Endpoint::= Name ( "." Name )?
//
// In views a port's Type and Name may be `*` (unknown) and connector
// endpoints may omit the port. `//` starts a comment running to the end of
// the line. Witness files are views preceded by comment lines.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccview/verify.hpp"

namespace ccview {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  SourceSpan span;
  std::string message;
  Severity severity = Severity::Error;
};

inline std::string format(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << d.span.file << ":" << d.span.line << ":" << d.span.column << ": "
     << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

template <class T>
struct Parsed {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

namespace detail {

enum class Tok { Ident, Star, LBrace, RBrace, Semi, Dot, Arrow, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Bad, std::string(1, c), line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Arrow;
      t.text = "->";
    } else {
      switch (c) {
        case '*': t.kind = Tok::Star; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ';': t.kind = Tok::Semi; break;
        case '.': t.kind = Tok::Dot; break;
        default: break;
      }
    }
    out.push_back(t);
    advance(t.text.size());
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct SyntaxError {
  std::size_t token;
  std::string message;
};

// Recursive-descent parser for both document kinds. Stops at the first
// syntax error.
class Parser {
 public:
  Parser(std::string_view text, std::string file, bool view) : toks_(lex(text)), file_(std::move(file)), view_(view) {}

  template <class Arch>
  Parsed<Arch> run() {
    Parsed<Arch> out;
    Arch doc;
    try {
      expect_keyword(view_ ? "view" : "model");
      doc_name_ = pos_ - 1;
      doc.name = expect_ident("document name");
      doc_name_ = pos_ - 1;
      expect(Tok::LBrace, "'{'");
      body(doc, "");
      if (peek().kind != Tok::End) fail("unexpected text after end of document");
    } catch (const SyntaxError& e) {
      out.diagnostics.push_back({span(e.token), e.message, Severity::Error});
      return out;
    }
    std::vector<Violation> violations;
    if constexpr (std::is_same_v<Arch, CncModel>) {
      violations = validate_model(doc);
    } else {
      violations = validate_view(doc);
    }
    for (const auto& v : violations) out.diagnostics.push_back({span(locate(v)), v.rule + ": " + v.message, Severity::Error});
    if (out.diagnostics.empty()) out.value = canonicalize(doc);
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void fail(std::string msg) const { throw SyntaxError{pos_, std::move(msg)}; }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what) + ", found " + describe_token(peek()));
    ++pos_;
  }
  void expect_keyword(std::string_view kw) {
    if (peek().kind != Tok::Ident || peek().text != kw) {
      fail("expected '" + std::string(kw) + "', found " + describe_token(peek()));
    }
    ++pos_;
  }
  std::string expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail("expected " + std::string(what) + ", found " + describe_token(peek()));
    return toks_[pos_++].text;
  }
  // Identifier, or `*` (unknown) where views allow it.
  std::optional<std::string> ident_or_star(std::string_view what) {
    if (view_ && peek().kind == Tok::Star) {
      ++pos_;
      return std::nullopt;
    }
    return expect_ident(what);
  }

  static std::string describe_token(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  template <class Arch>
  void body(Arch& doc, const std::string& owner) {
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::RBrace) {
        ++pos_;
        return;
      }
      if (t.kind != Tok::Ident) fail("expected a declaration or '}', found " + describe_token(t));
      if (t.text == "component") {
        component(doc, owner);
      } else if (t.text == "connect") {
        connector(doc);
      } else if (t.text == "port") {
        if (owner.empty()) fail("ports must be declared inside a component");
        port(doc);
      } else {
        fail("expected 'component', 'port', 'connect' or '}', found " + describe_token(t));
      }
    }
  }

  template <class Arch>
  void component(Arch& doc, const std::string& parent) {
    ++pos_;
    component_spans_.push_back(pos_);
    typename Arch::component_type c;
    c.name = expect_ident("component name");
    c.parent = parent;
    doc.components.push_back(c);
    port_spans_.emplace_back();
    current_.push_back(doc.components.size() - 1);
    if (peek().kind == Tok::Semi) {
      ++pos_;
    } else {
      expect(Tok::LBrace, "'{' or ';'");
      body(doc, c.name);
    }
    current_.pop_back();
  }

  template <class Arch>
  void port(Arch& doc) {
    ++pos_;
    std::size_t at = pos_;
    Direction dir;
    if (peek().kind == Tok::Ident && peek().text == "in") {
      dir = Direction::In;
    } else if (peek().kind == Tok::Ident && peek().text == "out") {
      dir = Direction::Out;
    } else {
      fail("expected 'in' or 'out', found " + describe_token(peek()));
    }
    ++pos_;
    auto type = ident_or_star("port type");
    if (peek().kind == Tok::Ident || peek().kind == Tok::Star) at = pos_;
    auto name = ident_or_star("port name");
    expect(Tok::Semi, "';'");
    auto& owner = doc.components[current_.back()];
    if constexpr (std::is_same_v<Arch, CncModel>) {
      owner.ports.push_back({*name, dir, *type});
    } else {
      owner.ports.push_back({name, dir, type});
    }
    port_spans_[current_.back()].push_back(at);
  }

  template <class Arch>
  void connector(Arch& doc) {
    std::size_t at = pos_;
    ++pos_;
    auto [sc, sp] = endpoint();
    expect(Tok::Arrow, "'->'");
    auto [tc, tp] = endpoint();
    expect(Tok::Semi, "';'");
    connector_spans_.push_back(at);
    if constexpr (std::is_same_v<Arch, CncModel>) {
      doc.connectors.push_back({sc, *sp, tc, *tp});
    } else {
      doc.connectors.push_back({sc, sp, tc, tp});
    }
  }

  std::pair<std::string, std::optional<std::string>> endpoint() {
    std::string cmp = expect_ident("component name");
    std::optional<std::string> port;
    if (peek().kind == Tok::Dot) {
      ++pos_;
      port = expect_ident("port name");
    } else if (!view_) {
      fail("expected '.' and a port name (model connectors join ports)");
    }
    return {cmp, port};
  }

  std::size_t locate(const Violation& v) const {
    switch (v.element) {
      case ElementKind::Component: return component_spans_.at(v.index);
      case ElementKind::Port: return port_spans_.at(v.index).at(v.port);
      case ElementKind::Connector: return connector_spans_.at(v.index);
      case ElementKind::Document: break;
    }
    return doc_name_;
  }

  SourceSpan span(std::size_t tok) const {
    const Token& t = toks_[std::min(tok, toks_.size() - 1)];
    return {file_, t.line, t.column, static_cast<int>(t.text.size())};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  bool view_;
  std::size_t doc_name_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> component_spans_;
  std::vector<std::vector<std::size_t>> port_spans_;
  std::vector<std::size_t> connector_spans_;
};

}  // namespace detail

/// Parses and validates a model document. On success the model is in
/// canonical order.
inline Parsed<CncModel> parse_model(std::string_view text, std::string file = "<input>") {
  return detail::Parser(text, std::move(file), false).run<CncModel>();
}

/// Parses and validates a view document (also accepts witness files).
inline Parsed<CncView> parse_view(std::string_view text, std::string file = "<input>") {
  return detail::Parser(text, std::move(file), true).run<CncView>();
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_port(std::ostream& os, const Port& p) {
  os << "port " << to_string(p.direction) << " " << p.type << " " << p.name << ";\n";
}
inline void print_port(std::ostream& os, const ViewPort& p) {
  os << "port " << to_string(p.direction) << " " << p.type.value_or("*") << " " << p.name.value_or("*") << ";\n";
}

inline std::string endpoint_text(const std::string& cmp, const std::optional<std::string>& port) {
  return port ? cmp + "." + *port : cmp;
}

template <class Arch, class OwnedConnectors>
void print_component(std::ostream& os, const Hierarchy<Arch>& h, std::size_t i, int depth,
                     const OwnedConnectors& owned) {
  const auto& c = h.arch().components[i];
  std::string indent(2 * depth, ' ');
  const auto& kids = h.children(i);
  const auto& conns = owned[i];
  if (c.ports.empty() && kids.empty() && conns.empty()) {
    os << indent << "component " << c.name << ";\n";
    return;
  }
  os << indent << "component " << c.name << " {\n";
  for (const auto& p : c.ports) {
    os << indent << "  ";
    print_port(os, p);
  }
  for (std::size_t k : kids) print_component(os, h, k, depth + 1, owned);
  for (const auto* conn : conns) {
    os << indent << "  connect " << conn->src_component << "." << conn->src_port << " -> " << conn->tgt_component
       << "." << conn->tgt_port << ";\n";
  }
  os << indent << "}\n";
}

}  // namespace detail

/// Canonical text: components nested in declaration order, each body
/// listing ports, then subcomponents, then the connectors it owns.
inline std::string print_model(const CncModel& m) {
  Hierarchy h(m);
  std::vector<std::vector<const Connector*>> owned(h.size());
  std::vector<const Connector*> loose;
  for (const auto& c : m.connectors) {
    std::size_t o = detail::connector_owner(h, c);
    if (o == npos) {
      loose.push_back(&c);
    } else {
      owned[o].push_back(&c);
    }
  }
  std::ostringstream os;
  os << "model " << m.name << " {\n";
  for (std::size_t r : h.roots()) detail::print_component(os, h, r, 1, owned);
  for (const auto* c : loose) {
    os << "  connect " << c->src_component << "." << c->src_port << " -> " << c->tgt_component << "." << c->tgt_port
       << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// Canonical text: nested components, then all abstract connectors.
inline std::string print_view(const CncView& v) {
  Hierarchy h(v);
  std::vector<std::vector<const Connector*>> none(h.size());
  std::ostringstream os;
  os << "view " << v.name << " {\n";
  for (std::size_t r : h.roots()) detail::print_component(os, h, r, 1, none);
  for (const auto& c : v.connectors) {
    os << "  connect " << detail::endpoint_text(c.src_component, c.src_port) << " -> "
       << detail::endpoint_text(c.tgt_component, c.tgt_port) << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// Witness in view syntax, preceded by its kind and explanation as comments.
inline std::string print_witness(const Witness& w) {
  std::string out = "// witness kind: " + std::string(to_string(w.kind)) + "\n";
  for (const auto& a : w.annotations) out += "// " + a.text + "\n";
  return out + print_view(witness_as_view(w));
}

/// Result as JSON with keys in fixed order.
inline std::string export_json(const VerificationResult& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model_name;
  j["view"] = r.view_name;
  j["satisfied"] = r.satisfied;
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::ordered_json e;
    e["kind"] = to_string(w.kind);
    e["text"] = w.explanation();
    e["fragment"] = print_view(witness_as_view(w));
    j["witnesses"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Specification files: one `<mode> <view-path>` per line, where mode is
// `mandatory`, `negative` or `alt:<group>`. Blank lines and lines starting
// with `#` or `//` are ignored.

struct SpecLine {
  Mode mode = Mode::Mandatory;
  std::string group;
  std::string path;
  int line = 0;
};

inline Parsed<std::vector<SpecLine>> parse_spec_lines(std::string_view text, std::string file = "<input>") {
  Parsed<std::vector<SpecLine>> out;
  std::vector<SpecLine> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::istringstream ls(raw);
    std::vector<std::string> words;
    for (std::string w; ls >> w && !w.starts_with("#") && !w.starts_with("//");) words.push_back(w);
    if (words.empty()) continue;
    auto diag = [&](std::string msg) {
      out.diagnostics.push_back({{file, n, 1, static_cast<int>(raw.size())}, std::move(msg), Severity::Error});
    };
    if (words.size() == 1) {
      diag("expected '<mode> <view-path>'");
      continue;
    }
    if (words.size() > 2) {
      diag("unexpected text after view path: '" + words[2] + "'");
      continue;
    }
    const std::string& mode = words[0];
    SpecLine sl{Mode::Mandatory, "", words[1], n};
    if (mode == "mandatory") {
      sl.mode = Mode::Mandatory;
    } else if (mode == "negative") {
      sl.mode = Mode::Negative;
    } else if (mode.starts_with("alt:") && mode.size() > 4) {
      sl.mode = Mode::Alternative;
      sl.group = mode.substr(4);
    } else {
      diag("unknown mode '" + mode + "' (expected mandatory, negative or alt:<group>)");
      continue;
    }
    lines.push_back(std::move(sl));
  }
  if (out.diagnostics.empty()) out.value = std::move(lines);
  return out;
}

}  // namespace ccview
