#include "ulpa/dsl.hpp"

#include <cctype>
#include <sstream>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {

struct Token {
  enum class Kind { ident, number, punct, newline, end };
  Kind kind = Kind::end;
  std::string text;
  std::uint64_t value = 0;  // Kind::number
  std::size_t line = 1, column = 1;
};

struct LexError {
  std::size_t line, column;
  std::string found;
};

std::variant<std::vector<Token>, LexError> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Token::Kind k, std::string s, std::uint64_t v = 0) {
    out.push_back(Token{k, std::move(s), v, line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      if (!out.empty() && out.back().kind != Token::Kind::newline)
        push(Token::Kind::newline, "end of line");
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i, start_col = col;
      std::uint64_t v = 0;
      bool overflow = false;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (v > (UINT64_MAX - 9) / 10) overflow = true;
        if (!overflow) v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        ++i;
        ++col;
      }
      if (overflow) return LexError{line, start_col, "oversized number"};
      out.push_back(Token{Token::Kind::number, text.substr(start, i - start),
                          v, line, start_col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i, start_col = col;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        ++i;
        ++col;
      }
      out.push_back(Token{Token::Kind::ident, text.substr(start, i - start),
                          0, line, start_col});
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Token::Kind::punct, "->");
      i += 2;
      col += 2;
      continue;
    }
    if (std::string("{}(),:=").find(c) != std::string::npos) {
      push(Token::Kind::punct, std::string(1, c));
      ++i;
      ++col;
      continue;
    }
    return LexError{line, col, "character '" + std::string(1, c) + "'"};
  }
  if (!out.empty() && out.back().kind != Token::Kind::newline)
    out.push_back(Token{Token::Kind::newline, "end of line", 0, line, col});
  out.push_back(Token{Token::Kind::end, "end of input", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::variant<ParsedSpec, SyntaxError> run() {
    ParsedSpec spec;
    skip_newlines();
    if (!expect_ident("vertices")) return err_;
    if (!expect_punct(":")) return err_;
    if (at_ident("nat")) {
      advance();
      spec.graph.universe = Universe::nat();
    } else if (at_ident("finite")) {
      advance();
      if (!expect_punct("(")) return err_;
      std::uint64_t m;
      if (!expect_number(m)) return err_;
      if (!expect_punct(")")) return err_;
      spec.graph.universe = Universe::bounded(m);
    } else {
      fail({"nat", "finite"});
      return err_;
    }
    if (!expect_newline()) return err_;

    while (true) {
      skip_newlines();
      if (cur().kind == Token::Kind::end) break;
      if (at_ident("edge")) {
        advance();
        if (cur().kind != Token::Kind::ident) {
          fail({"edge identifier"});
          return err_;
        }
        std::string id = cur().text;
        advance();
        if (!expect_punct(":")) return err_;
        std::uint64_t src;
        if (!expect_number(src)) return err_;
        if (!expect_punct("->")) return err_;
        UPSet range;
        if (!parse_upset(range)) return err_;
        if (!expect_newline()) return err_;
        spec.graph.edges.push_back(Edge{id, src, range});
      } else if (at_ident("ring")) {
        if (spec.ring_specified) {
          fail({"at most one ring line"});
          return err_;
        }
        advance();
        if (!expect_punct(":")) return err_;
        std::vector<FieldDescriptor> factors;
        if (!parse_factor(factors)) return err_;
        while (at_ident("x")) {
          advance();
          if (!parse_factor(factors)) return err_;
        }
        if (!expect_newline()) return err_;
        spec.ring = RingDescriptor{factors};
        spec.ring_specified = true;
      } else {
        fail({"edge", "ring"});
        return err_;
      }
    }
    return spec;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }
  void skip_newlines() {
    while (cur().kind == Token::Kind::newline) advance();
  }
  bool at_ident(const std::string& s) const {
    return cur().kind == Token::Kind::ident && cur().text == s;
  }
  bool at_punct(const std::string& s) const {
    return cur().kind == Token::Kind::punct && cur().text == s;
  }
  bool fail(std::vector<std::string> expected) {
    err_ = SyntaxError{cur().line, cur().column,
                       cur().kind == Token::Kind::number
                           ? "number " + cur().text
                           : cur().text,
                       std::move(expected)};
    return false;
  }
  bool expect_ident(const std::string& s) {
    if (at_ident(s)) {
      advance();
      return true;
    }
    return fail({s});
  }
  bool expect_punct(const std::string& s) {
    if (at_punct(s)) {
      advance();
      return true;
    }
    return fail({"'" + s + "'"});
  }
  bool expect_number(std::uint64_t& out) {
    if (cur().kind == Token::Kind::number) {
      out = cur().value;
      advance();
      return true;
    }
    return fail({"number"});
  }
  bool expect_newline() {
    if (cur().kind == Token::Kind::newline || cur().kind == Token::Kind::end) {
      if (cur().kind == Token::Kind::newline) advance();
      return true;
    }
    return fail({"end of line"});
  }

  bool parse_natlist(std::vector<std::uint64_t>& out) {
    if (!expect_punct("{")) return false;
    if (at_punct("}")) {
      advance();
      return true;
    }
    std::uint64_t v;
    if (!expect_number(v)) return false;
    out.push_back(v);
    while (at_punct(",")) {
      advance();
      if (!expect_number(v)) return false;
      out.push_back(v);
    }
    return expect_punct("}");
  }

  bool parse_keyed_natlist(const std::string& key,
                           std::vector<std::uint64_t>& out) {
    if (!expect_ident(key)) return false;
    if (!expect_punct("=")) return false;
    return parse_natlist(out);
  }

  bool parse_upset(UPSet& out) {
    if (at_punct("{")) {
      std::vector<std::uint64_t> elems;
      if (!parse_natlist(elems)) return false;
      out = UPSet::finite_set(elems);
      return true;
    }
    if (at_ident("cofinite")) {
      advance();
      std::vector<std::uint64_t> excluded;
      if (!parse_natlist(excluded)) return false;
      out = UPSet::cofinite(excluded);
      return true;
    }
    if (at_ident("all")) {
      advance();
      out = UPSet::all();
      return true;
    }
    if (at_ident("empty")) {
      advance();
      out = UPSet::empty();
      return true;
    }
    if (at_ident("periodic")) {
      advance();
      if (!expect_punct("(")) return false;
      if (!expect_ident("N")) return false;
      if (!expect_punct("=")) return false;
      std::uint64_t threshold;
      if (!expect_number(threshold)) return false;
      if (!expect_punct(",")) return false;
      if (!expect_ident("p")) return false;
      if (!expect_punct("=")) return false;
      std::uint64_t period;
      if (!expect_number(period)) return false;
      if (period == 0) return fail({"positive period"});
      if (!expect_punct(",")) return false;
      std::vector<std::uint64_t> residues, extra;
      if (!parse_keyed_natlist("r", residues)) return false;
      if (at_punct(",")) {
        advance();
        if (!parse_keyed_natlist("extra", extra)) return false;
      }
      if (!expect_punct(")")) return false;
      for (std::uint64_t r : residues)
        if (r >= period) return fail({"residues below the period"});
      out = UPSet::periodic(threshold, period, residues, extra);
      return true;
    }
    fail({"'{'", "cofinite", "periodic", "all", "empty"});
    return false;
  }

  bool parse_factor(std::vector<FieldDescriptor>& out) {
    if (cur().kind != Token::Kind::ident) return fail({"Q", "F<p>"});
    const std::string& t = cur().text;
    if (t == "Q") {
      advance();
      out.push_back(FieldDescriptor::rationals());
      return true;
    }
    if (t.size() >= 2 && t[0] == 'F' &&
        t.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::uint64_t p = 0;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (p > (UINT64_MAX - 9) / 10) return fail({"smaller prime"});
        p = p * 10 + static_cast<std::uint64_t>(t[i] - '0');
      }
      try {
        out.push_back(FieldDescriptor::prime_field(p));
      } catch (const InvalidInput&) {
        return fail({"prime modulus"});
      }
      advance();
      return true;
    }
    return fail({"Q", "F<p>"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SyntaxError err_;
};

std::string join_list(const std::vector<std::uint64_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << (i ? ", " : "") << xs[i];
  return os.str();
}

}  // namespace

std::string SyntaxError::message() const {
  std::ostringstream os;
  os << "syntax error at line " << line << ", column " << column
     << ": found " << found << "; expected ";
  for (std::size_t i = 0; i < expected.size(); ++i)
    os << (i ? " | " : "") << expected[i];
  return os.str();
}

std::variant<ParsedSpec, SyntaxError> parse_spec(const std::string& text) {
  auto lexed = lex(text);
  if (auto* e = std::get_if<LexError>(&lexed))
    return SyntaxError{e->line, e->column, e->found, {"a document token"}};
  return Parser(std::get<std::vector<Token>>(std::move(lexed))).run();
}

ParsedSpec parse_spec_or_throw(const std::string& text) {
  auto r = parse_spec(text);
  if (auto* e = std::get_if<SyntaxError>(&r)) throw InvalidInput(e->message());
  return std::get<ParsedSpec>(std::move(r));
}

std::string render_upset(const UPSet& s) {
  if (s.is_empty()) return "{}";
  if (!s.cardinality().infinite) return "{" + join_list(s.elements()) + "}";
  if (s.period() == 1 && s.residues() == std::vector<std::uint64_t>{0}) {
    // Everything from the threshold onward is in; list what is missing.
    std::vector<std::uint64_t> missing;
    for (std::uint64_t v = 0; v < s.threshold(); ++v)
      if (!s.contains(v)) missing.push_back(v);
    if (missing.empty()) return "all";
    return "cofinite{" + join_list(missing) + "}";
  }
  std::ostringstream os;
  os << "periodic(N=" << s.threshold() << ", p=" << s.period() << ", r={"
     << join_list(s.residues()) << "}";
  if (!s.finite_part().empty()) os << ", extra={" << join_list(s.finite_part()) << "}";
  os << ")";
  return os.str();
}

std::string render_spec(const ParsedSpec& spec) {
  std::ostringstream os;
  if (spec.graph.universe.finite)
    os << "vertices: finite(" << spec.graph.universe.size << ")\n";
  else
    os << "vertices: nat\n";
  for (const Edge& e : spec.graph.edges)
    os << "edge " << e.id << ": " << e.source << " -> "
       << render_upset(e.range) << "\n";
  os << "ring: " << spec.ring.to_string() << "\n";
  return os.str();
}

}  // namespace ulpa
