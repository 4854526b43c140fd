#include "fairb/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace fairb::dsl {

std::string Diagnostic::to_string() const {
  return std::to_string(span.line) + ":" + std::to_string(span.col) + ": " +
         (severity == Severity::Error ? "error: " : "warning: ") + message;
}

namespace {

template <typename T>
std::size_t count_items(const Document& d) {
  std::size_t n = 0;
  for (const auto& item : d.items) n += std::holds_alternative<T>(item) ? 1 : 0;
  return n;
}

}  // namespace

std::size_t Document::system_count() const { return count_items<SystemDecl>(*this); }
std::size_t Document::refinement_count() const { return count_items<RefinementDecl>(*this); }
std::size_t Document::property_count() const { return count_items<PropertyDecl>(*this); }
std::size_t Document::proof_count() const { return count_items<ProofDecl>(*this); }

namespace {

enum class Tok {
  Ident, Int, End,
  Colon, DotDot, LBrace, RBrace, LParen, RParen, Comma, Assign, Choose, Bar2,
  Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star,
  And, Or, Not, Implies, In,
};

struct Token {
  Tok kind;
  std::string text;
  long value = 0;
  Span span;
};

struct SyntaxError : std::runtime_error {
  Span span;
  SyntaxError(Span s, const std::string& m) : std::runtime_error(m), span(s) {}
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const Span at{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", 0, at});
        return out;
      }
      try {
        out.push_back(next(at));
      } catch (const SyntaxError& e) {
        diags.push_back({Diagnostic::Severity::Error, e.span, e.what()});
        advance(1);
      }
    }
  }

 private:
  bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      const auto c = static_cast<unsigned char>(src_[pos_++]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#' || starts("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  Token next(Span at) {
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym symbols[] = {
        {"..", Tok::DotDot}, {":=", Tok::Assign}, {"::", Tok::Choose}, {"||", Tok::Bar2}, {"=>", Tok::Implies},
        {"⇒", Tok::Implies}, {"!=", Tok::Ne},     {"/=", Tok::Ne},     {"≠", Tok::Ne},      {"<=", Tok::Le},
        {"≤", Tok::Le},      {">=", Tok::Ge},     {"≥", Tok::Ge},      {"/\\", Tok::And},   {"∧", Tok::And},
        {"&&", Tok::And},    {"&", Tok::And},     {"\\/", Tok::Or},    {"∨", Tok::Or},      {"¬", Tok::Not},
        {"!", Tok::Not},     {"∈", Tok::In},      {":", Tok::Colon},   {"{", Tok::LBrace},  {"}", Tok::RBrace},
        {"(", Tok::LParen},  {")", Tok::RParen},  {",", Tok::Comma},   {"=", Tok::Eq},      {"<", Tok::Lt},
        {">", Tok::Gt},      {"+", Tok::Plus},    {"-", Tok::Minus},   {"−", Tok::Minus},   {"*", Tok::Star},
    };
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      Token t{Tok::Int, std::string(src_.substr(pos_, end - pos_)), 0, at};
      auto [p, ec] = std::from_chars(src_.data() + pos_, src_.data() + end, t.value);
      (void)p;
      if (ec != std::errc()) throw SyntaxError(at, "integer literal out of range");
      advance(end - pos_);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_' ||
                                   src_[end] == '\''))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      advance(end - pos_);
      if (word == "and") return {Tok::And, word, 0, at};
      if (word == "or") return {Tok::Or, word, 0, at};
      if (word == "not") return {Tok::Not, word, 0, at};
      if (word == "in") return {Tok::In, word, 0, at};
      return {Tok::Ident, word, 0, at};
    }
    for (const auto& s : symbols) {
      if (starts(s.text)) {
        advance(s.text.size());
        return {s.kind, std::string(s.text), 0, at};
      }
    }
    throw SyntaxError(at, "unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(const std::string& w) {
  static const char* const kws[] = {"system", "var",   "invariant", "event",  "when",   "then",  "end",
                                    "refinement", "refines", "skip", "gluing", "property", "ensures",
                                    "helpful", "leadsto", "unless", "from", "to", "proof", "goal",
                                    "any",    "where", "true",      "false",  "grd"};
  for (const auto* k : kws)
    if (w == k) return true;
  return false;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  Document document() {
    Document doc;
    while (!at(Tok::End)) {
      try {
        if (at_word("system")) {
          doc.items.emplace_back(system());
        } else if (at_word("refinement")) {
          doc.items.emplace_back(refinement());
        } else if (at_word("property")) {
          doc.items.emplace_back(property());
        } else if (at_word("proof")) {
          doc.items.emplace_back(proof());
        } else {
          throw SyntaxError(peek().span, "expected 'system', 'refinement', 'property' or 'proof', found " + describe(peek()));
        }
      } catch (const SyntaxError& e) {
        diags_.push_back({Diagnostic::Severity::Error, e.span, e.what()});
        recover();
      }
    }
    return doc;
  }

  Expr standalone() {
    auto e = expr();
    if (!at(Tok::End)) throw SyntaxError(peek().span, "unexpected " + describe(peek()) + " after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == w;
  }
  const Token& take() {
    const auto& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) throw SyntaxError(peek().span, std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) throw SyntaxError(peek().span, std::string("expected '") + w + "', found " + describe(peek()));
    take();
  }
  std::string name(const char* what) {
    if (!at(Tok::Ident) || is_keyword(peek().text))
      throw SyntaxError(peek().span, std::string("expected ") + what + ", found " + describe(peek()));
    return take().text;
  }
  long integer() {
    bool neg = false;
    if (at(Tok::Minus)) {
      take();
      neg = true;
    }
    const auto v = expect(Tok::Int, "an integer").value;
    return neg ? -v : v;
  }

  void recover() {
    // Skip at least one token, then resume at a top-level keyword.
    if (!at(Tok::End)) take();
    while (!at(Tok::End) && !at_word("system") && !at_word("refinement") && !at_word("property") &&
           !at_word("proof"))
      take();
  }

  VarDecl var() {
    VarDecl v;
    v.span = peek().span;
    expect_word("var");
    v.name = name("a variable name");
    expect(Tok::Colon, "':'");
    v.lo = integer();
    expect(Tok::DotDot, "'..'");
    v.hi = integer();
    if (v.lo > v.hi) throw SyntaxError(v.span, "empty range for variable '" + v.name + "'");
    return v;
  }

  std::vector<Update> updates() {
    std::vector<Update> out;
    for (;;) {
      if (at(Tok::Bar2)) {
        take();
        continue;
      }
      if (at_word("end")) break;
      out.push_back(update());
    }
    if (out.empty()) throw SyntaxError(peek().span, "expected at least one update");
    return out;
  }

  Update update() {
    Update u;
    u.span = peek().span;
    if (at_word("skip")) {
      take();
      u.kind = Update::Kind::Skip;
      return u;
    }
    if (at_word("any")) {
      take();
      u.kind = Update::Kind::Any;
      u.bound = name("a bound variable");
      if (at(Tok::Colon)) {
        take();
        const auto lo = integer();
        expect(Tok::DotDot, "'..'");
        const auto hi = integer();
        if (lo > hi) throw SyntaxError(u.span, "empty range for '" + u.bound + "'");
        u.bound_range = std::pair{lo, hi};
      }
      expect_word("where");
      u.where = expr();
      expect_word("then");
      u.body = updates();
      expect_word("end");
      return u;
    }
    u.target = name("a variable, 'skip' or 'any'");
    if (at(Tok::Assign)) {
      take();
      u.kind = Update::Kind::Assign;
      u.values.push_back(expr());
      return u;
    }
    if (at(Tok::Choose)) {
      take();
      u.kind = Update::Kind::Choose;
      if (at(Tok::LBrace)) {
        take();
        u.values.push_back(expr());
        while (at(Tok::Comma)) {
          take();
          u.values.push_back(expr());
        }
        expect(Tok::RBrace, "'}'");
      } else {
        u.range = true;
        u.values.push_back(additive());
        expect(Tok::DotDot, "'..'");
        u.values.push_back(additive());
      }
      return u;
    }
    throw SyntaxError(peek().span, "expected ':=' or '::' after '" + u.target + "'");
  }

  EventDecl event(bool in_refinement) {
    EventDecl e;
    e.span = peek().span;
    expect_word("event");
    e.name = name("an event name");
    if (in_refinement) {
      expect_word("refines");
      if (at_word("skip")) {
        take();
        e.refines = "skip";
      } else {
        e.refines = name("an abstract event name or 'skip'");
      }
    }
    expect_word("when");
    e.guard = expr();
    expect_word("then");
    e.body = updates();
    expect_word("end");
    return e;
  }

  SystemDecl system() {
    SystemDecl s;
    s.span = peek().span;
    expect_word("system");
    s.name = name("a system name");
    while (!at_word("end")) {
      if (at_word("var")) {
        s.vars.push_back(var());
      } else if (at_word("invariant")) {
        take();
        s.invariants.push_back(expr());
      } else if (at_word("event")) {
        s.events.push_back(event(false));
      } else {
        throw SyntaxError(peek().span, "expected 'var', 'invariant', 'event' or 'end', found " + describe(peek()));
      }
    }
    take();
    return s;
  }

  RefinementDecl refinement() {
    RefinementDecl r;
    r.span = peek().span;
    expect_word("refinement");
    r.name = name("a refinement name");
    expect_word("refines");
    r.abstract_name = name("the refined system name");
    while (!at_word("end")) {
      if (at_word("var")) {
        r.vars.push_back(var());
      } else if (at_word("invariant")) {
        take();
        r.invariants.push_back(expr());
      } else if (at_word("gluing")) {
        take();
        r.gluing.push_back(expr());
      } else if (at_word("event")) {
        r.events.push_back(event(true));
      } else {
        throw SyntaxError(peek().span,
                          "expected 'var', 'invariant', 'gluing', 'event' or 'end', found " + describe(peek()));
      }
    }
    take();
    return r;
  }

  std::vector<std::string> name_set() {
    std::vector<std::string> out;
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      out.push_back(name("an event name"));
      if (at(Tok::Comma)) take();
    }
    take();
    return out;
  }

  PropertyDecl property() {
    PropertyDecl p;
    p.span = peek().span;
    expect_word("property");
    p.name = name("a property name");
    if (at(Tok::In)) {
      take();
      p.scope = name("a system or refinement name");
    }
    if (at_word("ensures")) {
      take();
      p.kind = PropertyDecl::Kind::Ensures;
      expect_word("helpful");
      p.helpful = name_set();
      if (p.helpful.empty()) throw SyntaxError(p.span, "helpful event set is empty");
    } else if (at_word("leadsto")) {
      take();
      p.kind = PropertyDecl::Kind::LeadsTo;
    } else if (at_word("unless")) {
      take();
      p.kind = PropertyDecl::Kind::Unless;
    } else {
      throw SyntaxError(peek().span, "expected 'ensures', 'leadsto' or 'unless', found " + describe(peek()));
    }
    expect_word("from");
    p.from = expr();
    expect_word("to");
    p.to = expr();
    return p;
  }

  StepDecl step() {
    StepDecl s;
    s.span = peek().span;
    s.name = name("a step name");
    expect(Tok::Colon, "':'");
    s.rule = name("a rule (brl, tra, dsj, psp, can, thlto)");
    if (at(Tok::Ident) && !is_keyword(peek().text)) {
      s.premises.push_back(take().text);
      while (at(Tok::Comma)) {
        take();
        s.premises.push_back(name("a premise name"));
      }
    }
    if (at_word("from")) {
      take();
      s.from = expr();
      expect_word("to");
      s.to = expr();
    }
    if (at_word("helpful")) {
      take();
      s.helpful = name_set();
    }
    return s;
  }

  ProofDecl proof() {
    ProofDecl p;
    p.span = peek().span;
    expect_word("proof");
    p.name = name("a proof name");
    expect_word("goal");
    p.goal = name("a property name");
    while (!at_word("end")) {
      if (at(Tok::End)) throw SyntaxError(peek().span, "unterminated proof '" + p.name + "'");
      p.steps.push_back(step());
    }
    take();
    return p;
  }

  // implies < or < and < not < comparison < additive < multiplicative < unary
  Expr expr() {
    auto lhs = disjunction();
    if (at(Tok::Implies)) {
      const auto span = take().span;
      auto rhs = expr();
      return binary(Expr::Op::Implies, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  static Expr binary(Expr::Op op, Expr a, Expr b, Span span) {
    Expr e;
    e.op = op;
    e.span = span;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr disjunction() {
    auto lhs = conjunction();
    while (at(Tok::Or)) {
      const auto span = take().span;
      lhs = binary(Expr::Op::Or, std::move(lhs), conjunction(), span);
    }
    return lhs;
  }

  Expr conjunction() {
    auto lhs = negation();
    while (at(Tok::And)) {
      const auto span = take().span;
      lhs = binary(Expr::Op::And, std::move(lhs), negation(), span);
    }
    return lhs;
  }

  Expr negation() {
    if (at(Tok::Not)) {
      Expr e;
      e.op = Expr::Op::Not;
      e.span = take().span;
      e.args.push_back(negation());
      return e;
    }
    return comparison();
  }

  Expr comparison() {
    auto lhs = additive();
    const auto span = peek().span;
    auto op = [&]() -> std::optional<Expr::Op> {
      switch (peek().kind) {
        case Tok::Eq: return Expr::Op::Eq;
        case Tok::Ne: return Expr::Op::Ne;
        case Tok::Lt: return Expr::Op::Lt;
        case Tok::Le: return Expr::Op::Le;
        case Tok::Gt: return Expr::Op::Gt;
        case Tok::Ge: return Expr::Op::Ge;
        default: return std::nullopt;
      }
    }();
    if (op) {
      take();
      return binary(*op, std::move(lhs), additive(), span);
    }
    if (at(Tok::In)) {
      take();
      Expr e;
      e.op = Expr::Op::In;
      e.span = span;
      e.args.push_back(std::move(lhs));
      if (at(Tok::LBrace)) {
        take();
        e.args.push_back(additive());
        while (at(Tok::Comma)) {
          take();
          e.args.push_back(additive());
        }
        expect(Tok::RBrace, "'}'");
      } else {
        e.range = true;
        e.args.push_back(additive());
        expect(Tok::DotDot, "'..'");
        e.args.push_back(additive());
      }
      return e;
    }
    return lhs;
  }

  Expr additive() {
    auto lhs = multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const auto& t = take();
      lhs = binary(t.kind == Tok::Plus ? Expr::Op::Add : Expr::Op::Sub, std::move(lhs), multiplicative(), t.span);
    }
    return lhs;
  }

  Expr multiplicative() {
    auto lhs = unary();
    while (at(Tok::Star)) {
      const auto span = take().span;
      lhs = binary(Expr::Op::Mul, std::move(lhs), unary(), span);
    }
    return lhs;
  }

  Expr unary() {
    if (at(Tok::Minus)) {
      Expr e;
      e.op = Expr::Op::Neg;
      e.span = take().span;
      e.args.push_back(unary());
      return e;
    }
    return atom();
  }

  Expr atom() {
    Expr e;
    e.span = peek().span;
    if (at(Tok::Int)) {
      e.op = Expr::Op::Int;
      e.value = take().value;
      return e;
    }
    if (at(Tok::LParen)) {
      take();
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at_word("true") || at_word("false")) {
      e.op = Expr::Op::Bool;
      e.value = take().text == "true" ? 1 : 0;
      return e;
    }
    if (at_word("grd")) {
      take();
      expect(Tok::LParen, "'('");
      e.op = Expr::Op::Grd;
      e.name = name("an event name");
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Ident) && !is_keyword(peek().text)) {
      e.op = Expr::Op::Var;
      e.name = take().text;
      return e;
    }
    throw SyntaxError(peek().span, "expected an expression, found " + describe(peek()));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<Diagnostic>& diags_;
};

}  // namespace

ParseResult parse_document(std::string_view text) {
  ParseResult result;
  auto tokens = Lexer(text).run(result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  auto doc = parser.document();
  if (result.diagnostics.empty() && doc.system_count() == 0)
    result.diagnostics.push_back({Diagnostic::Severity::Error, Span{1, 1}, "no system declared"});
  if (result.diagnostics.empty()) result.document = std::move(doc);
  return result;
}

ParseResult parse_expression(std::string_view text, Expr& out) {
  ParseResult result;
  auto tokens = Lexer(text).run(result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  Parser parser(std::move(tokens), result.diagnostics);
  try {
    out = parser.standalone();
    result.document = Document{};
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({Diagnostic::Severity::Error, e.span, e.what()});
  }
  return result;
}

}  // namespace fairb::dsl
