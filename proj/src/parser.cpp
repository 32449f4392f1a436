#include "rascal_light/parser.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace rascal_light {

namespace {

enum class Tok : std::uint8_t { Int, Str, Ident, Punct, End };

struct Token {
  Tok kind;
  std::string text;  // for Str: the decoded contents
  Span span;
};

constexpr std::array<std::string_view, 14> kLongPunct = {
    ":=", "==", "!=", "<=", ">=", "<-", "&&", "||", "=>", "+=", "-=", "*=", "/=",
    "<undefined>",
};
constexpr std::string_view kShortPunct = "()[]{},;:=<>+-*/%!|";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Span start = here();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", start});
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Tok::Int, std::string(src_.substr(start.begin, pos_ - start.begin)), close(start)});
      } else if (c == '"') {
        out.push_back({Tok::Str, string_literal(start), close(start)});
      } else if (ident_start(c)) {
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string text(src_.substr(start.begin, pos_ - start.begin));
        if (text == "top") {
          strategy_suffix(text, {"-down-break", "-down"});
        } else if (text == "bottom") {
          strategy_suffix(text, {"-up-break", "-up"});
        }
        out.push_back({Tok::Ident, std::move(text), close(start)});
      } else {
        out.push_back({Tok::Punct, punct(start), close(start)});
      }
    }
  }

 private:
  Span here() const { return Span{static_cast<std::uint32_t>(pos_), 0, line_, column_}; }
  Span close(Span s) const {
    s.end = static_cast<std::uint32_t>(pos_);
    return s;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void strategy_suffix(std::string& text, std::initializer_list<std::string_view> suffixes) {
    for (auto suffix : suffixes) {
      std::size_t after = pos_ + suffix.size();
      if (src_.substr(pos_, suffix.size()) == suffix &&
          (after >= src_.size() || !ident_char(src_[after]))) {
        for (std::size_t i = 0; i < suffix.size(); ++i) advance();
        text += suffix;
        return;
      }
    }
  }

  std::string string_literal(Span start) {
    advance();
    std::string out;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError(close(start), "unterminated string literal", {"\""});
      }
      char c = src_[pos_];
      advance();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= src_.size()) throw ParseError(close(start), "unterminated string literal", {"\""});
      char e = src_[pos_];
      advance();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: throw ParseError(close(start), std::string("unknown escape \\") + e, {});
      }
    }
  }

  std::string punct(Span start) {
    for (auto p : kLongPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        return std::string(p);
      }
    }
    if (kShortPunct.find(src_[pos_]) != std::string_view::npos) {
      advance();
      return std::string(1, src_[pos_ - 1]);
    }
    advance();
    throw ParseError(close(start), "unexpected character '" + std::string(1, src_[pos_ - 1]) + "'",
                     {});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

using NameSet = std::set<std::string, std::less<>>;

// Constructor names introduced by `data` declarations, collected before
// parsing so that `k(...)` can be told apart from a call on first sight.
NameSet scan_constructors(const std::vector<Token>& toks) {
  NameSet out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != Tok::Ident || toks[i].text != "data") continue;
    std::size_t j = i + 1;
    while (j < toks.size() && !(toks[j].kind == Tok::Punct && toks[j].text == "=")) ++j;
    bool expect_name = true;
    int depth = 0;
    for (++j; j < toks.size() && toks[j].kind != Tok::End; ++j) {
      const Token& t = toks[j];
      if (t.kind == Tok::Punct) {
        if (t.text == ";" && depth == 0) break;
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
        if (t.text == "|" && depth == 0) expect_name = true;
      } else if (t.kind == Tok::Ident && expect_name) {
        out.insert(t.text);
        expect_name = false;
      }
    }
  }
  return out;
}

bool is_type_keyword(std::string_view s) {
  return s == "int" || s == "str" || s == "value" || s == "void" || s == "list" || s == "set" ||
         s == "map";
}

bool is_strategy(std::string_view s) {
  return s == "top-down" || s == "bottom-up" || s == "top-down-break" || s == "bottom-up-break" ||
         s == "innermost" || s == "outermost";
}

Strategy strategy_of(std::string_view s) {
  if (s == "top-down") return Strategy::TopDown;
  if (s == "bottom-up") return Strategy::BottomUp;
  if (s == "top-down-break") return Strategy::TopDownBreak;
  if (s == "bottom-up-break") return Strategy::BottomUpBreak;
  if (s == "innermost") return Strategy::Innermost;
  return Strategy::Outermost;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, NameSet constructors)
      : toks_(std::move(toks)), constructors_(std::move(constructors)) {
    constructors_.insert({"true", "false", "nokey"});
  }

  ModuleDef module() {
    ModuleDef m;
    while (peek().kind != Tok::End) {
      Span start = peek().span;
      if (accept("data")) {
        m.datatypes.push_back(data_def(start));
      } else if (accept("global")) {
        GlobalDef g;
        g.type = type();
        g.name = ident();
        expect("=");
        g.init = expr();
        expect(";");
        g.span = from(start);
        m.globals.push_back(std::move(g));
      } else {
        m.functions.push_back(fun_def(start));
      }
    }
    return m;
  }

  template <class F>
  auto whole(F f) {
    auto out = f();
    if (peek().kind != Tok::End) fail({"end of input"});
    return out;
  }

  Expr expr() {
    Span start = peek().span;
    if (accept("return")) return finish(make_expr(Return{expr()}), start);
    if (accept("throw")) return finish(make_expr(Throw{expr()}), start);
    if (accept("if")) {
      Expr c = expr();
      expect("then");
      Expr a = expr();
      expect("else");
      Expr b = expr();
      return finish(make_expr(If{std::move(c), std::move(a), std::move(b)}), start);
    }
    if (accept("while")) {
      expect("(");
      Expr c = expr();
      expect(")");
      Expr body = expr();
      return finish(make_expr(While{std::move(c), std::move(body)}), start);
    }
    if (accept("for")) {
      expect("(");
      Generator g = generator();
      expect(")");
      Expr body = expr();
      return finish(make_expr(For{std::move(g), std::move(body)}), start);
    }
    if (accept("solve")) {
      expect("(");
      std::vector<std::string> vars{ident()};
      while (accept(",")) vars.push_back(ident());
      expect(")");
      Expr body = expr();
      return finish(make_expr(Solve{std::move(vars), std::move(body)}), start);
    }
    if (accept("try")) {
      Expr body = expr();
      if (accept("catch")) {
        std::string x = ident();
        expect("=>");
        Expr h = expr();
        return finish(make_expr(TryCatch{std::move(body), std::move(x), std::move(h)}), start);
      }
      if (accept("finally")) {
        Expr f = expr();
        return finish(make_expr(TryFinally{std::move(body), std::move(f)}), start);
      }
      fail({"catch", "finally"});
    }
    if (is_name(peek()) && peek(1).kind == Tok::Punct) {
      const std::string& op = peek(1).text;
      if (op == "=") {
        std::string x = advance().text;
        advance();
        return finish(make_expr(Assign{std::move(x), expr()}), start);
      }
      if (op == "+=" || op == "-=" || op == "*=" || op == "/=") {
        const Token& name = advance();
        std::string x = name.text;
        Span var_span = name.span;
        advance();
        BinaryOp bop = op == "+=" ? BinaryOp::Add : op == "-=" ? BinaryOp::Sub
                     : op == "*=" ? BinaryOp::Mul : BinaryOp::Div;
        Expr rhs = expr();
        Expr value = finish(make_expr(Binary{make_expr(Var{x}, var_span), bop, std::move(rhs)}), start);
        return finish(make_expr(Assign{std::move(x), std::move(value)}), start);
      }
    }
    return binary(0);
  }

  Pattern pattern() {
    Span start = peek().span;
    if (accept("!")) return finish(make_pattern(NegPat{pattern()}), start);
    if (accept("/")) return finish(make_pattern(DeepPat{pattern()}), start);
    if (type_ahead()) {
      Type t = type();
      std::string x = ident();
      expect(":");
      Pattern inner = pattern();
      return finish(make_pattern(TypedPat{std::move(t), std::move(x), std::move(inner)}), start);
    }
    if (at("-") && peek(1).kind == Tok::Int) {
      advance();
      Integer n(advance().text);
      return finish(make_pattern(LiteralPat{Value::integer(-n)}), start);
    }
    if (peek().kind == Tok::Int) {
      return finish(make_pattern(LiteralPat{Value::integer(Integer(advance().text))}), start);
    }
    if (peek().kind == Tok::Str) {
      return finish(make_pattern(LiteralPat{Value::string(advance().text)}), start);
    }
    if (is_name(peek())) {
      std::string name = advance().text;
      if (accept("(")) {
        std::vector<Pattern> args;
        if (!at(")")) {
          do {
            args.push_back(pattern());
          } while (accept(","));
        }
        expect(")");
        return finish(make_pattern(ConsPat{std::move(name), std::move(args)}), start);
      }
      return finish(make_pattern(VarPat{std::move(name)}), start);
    }
    if (accept("[")) return finish(make_pattern(ListPat{star_patterns("]")}), start);
    if (accept("{")) return finish(make_pattern(SetPat{star_patterns("}")}), start);
    fail({"pattern"});
  }

  Value value() {
    if (accept("<undefined>")) return Value::bottom();
    if (at("-") && peek(1).kind == Tok::Int) {
      advance();
      return Value::integer(-Integer(advance().text));
    }
    if (peek().kind == Tok::Int) return Value::integer(Integer(advance().text));
    if (peek().kind == Tok::Str) return Value::string(advance().text);
    if (is_name(peek())) {
      std::string name = advance().text;
      expect("(");
      auto args = values(")");
      return Value::constructor(std::move(name), std::move(args));
    }
    if (accept("[")) return Value::list(values("]"));
    if (accept("{")) return Value::set(values("}"));
    if (accept("(")) {
      std::vector<Value::Entry> entries;
      if (!at(")")) {
        do {
          Value k = value();
          expect(":");
          Value v = value();
          entries.emplace_back(std::move(k), std::move(v));
        } while (accept(","));
      }
      expect(")");
      return Value::map(std::move(entries));
    }
    fail({"value"});
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_end_ = t.span.end;
    return t;
  }
  bool at(std::string_view s) const {
    const Token& t = peek();
    return (t.kind == Tok::Punct || t.kind == Tok::Ident) && t.text == s;
  }
  bool accept(std::string_view s) {
    if (!at(s)) return false;
    advance();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail({std::string(s)});
  }
  static bool is_name(const Token& t) { return t.kind == Tok::Ident && !is_reserved(t.text); }
  std::string ident() {
    if (!is_name(peek())) fail({"identifier"});
    return advance().text;
  }
  Span from(Span start) const {
    start.end = std::max(start.begin, last_end_);
    return start;
  }
  // Stamps the span once the node's tokens are all consumed; taking the node
  // as an argument orders the parse before the read of last_end_.
  Expr finish(Expr e, Span start) const {
    e.span = from(start);
    return e;
  }
  Pattern finish(Pattern p, Span start) const {
    p.span = from(start);
    return p;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input"
                        : t.kind == Tok::Str ? "string literal"
                                             : "'" + t.text + "'";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += " but found " + found;
    throw ParseError(t.span, std::move(msg), std::move(expected));
  }

  DataDef data_def(Span start) {
    DataDef d;
    d.name = ident();
    expect("=");
    do {
      Span cs = peek().span;
      ConstructorDef c;
      c.name = ident();
      expect("(");
      c.fields = params();
      expect(")");
      c.span = from(cs);
      d.constructors.push_back(std::move(c));
    } while (accept("|"));
    expect(";");
    d.span = from(start);
    return d;
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    if (at(")")) return out;
    do {
      Param p;
      p.type = type();
      p.name = ident();
      out.push_back(std::move(p));
    } while (accept(","));
    return out;
  }

  FunDef fun_def(Span start) {
    FunDef f;
    f.return_type = type();
    f.name = ident();
    expect("(");
    f.params = params();
    expect(")");
    if (accept("=")) {
      f.body = expr();
      expect(";");
    } else if (at("{")) {
      f.body = block_sugar();
      accept(";");
    } else {
      fail({"=", "{"});
    }
    f.span = from(start);
    return f;
  }

  // `{ t x = e; e; ... }` as a function body: declarations become block
  // locals, their initializers assignments in place.
  Expr block_sugar() {
    Span start = peek().span;
    expect("{");
    Block b;
    while (!at("}")) {
      if (type_ahead()) {
        Span ds = peek().span;
        Type t = type();
        std::string x = ident();
        b.locals.push_back(LocalDecl{std::move(t), x, from(ds)});
        if (accept("=")) {
          Expr init = expr();
          b.body.push_back(make_expr(Assign{std::move(x), std::move(init)}, from(ds)));
        }
      } else {
        b.body.push_back(expr());
      }
      if (!accept(";")) break;
    }
    expect("}");
    return finish(make_expr(std::move(b)), start);
  }

  // A type followed by a name starts here.
  bool type_ahead() const {
    const Token& t = peek();
    if (t.kind != Tok::Ident) return false;
    if (is_type_keyword(t.text)) return true;
    return is_name(t) && is_name(peek(1));
  }

  Type type() {
    if (accept("int")) return Type::integer();
    if (accept("str")) return Type::string();
    if (accept("value")) return Type::value_type();
    if (accept("void")) return Type::void_type();
    for (std::string_view coll : {"list", "set"}) {
      if (accept(coll)) {
        std::string close = open_type_args();
        Type e = type();
        expect(close);
        return coll == "list" ? Type::list_of(std::move(e)) : Type::set_of(std::move(e));
      }
    }
    if (accept("map")) {
      std::string close = open_type_args();
      Type k = type();
      expect(",");
      Type v = type();
      expect(close);
      return Type::map_of(std::move(k), std::move(v));
    }
    if (is_name(peek())) return Type::adt(advance().text);
    fail({"type"});
  }

  std::string open_type_args() {
    if (accept("<")) return ">";
    if (accept("[")) return "]";
    fail({"<", "["});
  }

  Generator generator() {
    if (is_name(peek()) && peek(1).kind == Tok::Punct && peek(1).text == "<-") {
      std::string x = advance().text;
      advance();
      return EnumGen{std::move(x), expr()};
    }
    Pattern p = pattern();
    expect(":=");
    return MatchGen{std::move(p), expr()};
  }

  std::vector<StarPattern> star_patterns(std::string_view close) {
    std::vector<StarPattern> out;
    if (!at(close)) {
      do {
        Span start = peek().span;
        if (accept("*")) {
          std::string x = ident();
          out.emplace_back(StarVar{std::move(x), from(start)});
        } else {
          out.emplace_back(Box<Pattern>(pattern()));
        }
      } while (accept(","));
    }
    expect(close);
    return out;
  }

  std::vector<Value> values(std::string_view close) {
    std::vector<Value> out;
    if (!at(close)) {
      do {
        out.push_back(value());
      } while (accept(","));
    }
    expect(close);
    return out;
  }

  std::vector<Expr> exprs(std::string_view close) {
    std::vector<Expr> out;
    if (!at(close)) {
      do {
        out.push_back(expr());
      } while (accept(","));
    }
    expect(close);
    return out;
  }

  std::vector<Case> cases() {
    expect("{");
    std::vector<Case> out;
    while (accept("case")) {
      Pattern p = pattern();
      if (!accept("=>")) expect(":");
      Expr body = expr();
      out.push_back(Case{std::move(p), std::move(body)});
    }
    expect("}");
    return out;
  }

  struct OpInfo {
    std::string_view text;
    BinaryOp op;
    int level;
  };
  static constexpr std::array<OpInfo, 14> kOps = {{
      {"||", BinaryOp::Or, 0},  {"&&", BinaryOp::And, 1}, {"==", BinaryOp::Eq, 2},
      {"!=", BinaryOp::Neq, 2}, {"<", BinaryOp::Lt, 3},   {"<=", BinaryOp::Le, 3},
      {">", BinaryOp::Gt, 3},   {">=", BinaryOp::Ge, 3},  {"in", BinaryOp::In, 3},
      {"+", BinaryOp::Add, 4},  {"-", BinaryOp::Sub, 4},  {"*", BinaryOp::Mul, 5},
      {"/", BinaryOp::Div, 5},  {"%", BinaryOp::Mod, 5},
  }};
  static constexpr int kUnaryLevel = 6;

  const OpInfo* binary_op(int level) const {
    const Token& t = peek();
    if (t.kind != Tok::Punct && t.kind != Tok::Ident) return nullptr;
    for (const auto& o : kOps) {
      if (o.level == level && o.text == t.text) return &o;
    }
    return nullptr;
  }

  Expr binary(int level) {
    if (level == kUnaryLevel) return unary();
    Span start = peek().span;
    Expr lhs = binary(level + 1);
    while (const OpInfo* o = binary_op(level)) {
      advance();
      Expr rhs = binary(level + 1);
      lhs = finish(make_expr(Binary{std::move(lhs), o->op, std::move(rhs)}), start);
    }
    return lhs;
  }

  Expr unary() {
    Span start = peek().span;
    if (at("-") && peek(1).kind == Tok::Int) {
      advance();
      Integer n(advance().text);
      return postfix(finish(make_expr(Literal{Value::integer(-n)}), start), start);
    }
    if (accept("-")) return finish(make_expr(Unary{UnaryOp::Neg, unary()}), start);
    if (accept("!")) return finish(make_expr(Unary{UnaryOp::Not, unary()}), start);
    return postfix(primary(), start);
  }

  Expr postfix(Expr e, Span start) {
    while (accept("[")) {
      Expr key = binary(0);
      if (accept("=")) {
        Expr v = expr();
        expect("]");
        e = finish(make_expr(Update{std::move(e), std::move(key), std::move(v)}), start);
      } else {
        expect("]");
        e = finish(make_expr(Lookup{std::move(e), std::move(key)}), start);
      }
    }
    return e;
  }

  Expr primary() {
    Span start = peek().span;
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      return finish(make_expr(Literal{Value::integer(Integer(advance().text))}), start);
    }
    if (t.kind == Tok::Str) return finish(make_expr(Literal{Value::string(advance().text)}), start);
    if (accept("(")) {
      if (accept(")")) return finish(make_expr(MapExpr{}), start);
      Expr first = expr();
      if (!accept(":")) {
        expect(")");
        return first;
      }
      MapExpr m;
      m.keys.push_back(std::move(first));
      m.values.push_back(expr());
      while (accept(",")) {
        m.keys.push_back(expr());
        expect(":");
        m.values.push_back(expr());
      }
      expect(")");
      return finish(make_expr(std::move(m)), start);
    }
    if (accept("[")) return finish(make_expr(ListExpr{exprs("]")}), start);
    if (accept("{")) return finish(make_expr(SetExpr{exprs("}")}), start);
    if (accept("break")) return finish(make_expr(BreakExpr{}), start);
    if (accept("continue")) return finish(make_expr(ContinueExpr{}), start);
    if (accept("fail")) return finish(make_expr(FailExpr{}), start);
    if (accept("local")) return block(start);
    if (accept("switch")) {
      expect("(");
      Expr s = expr();
      expect(")");
      auto cs = cases();
      return finish(make_expr(Switch{std::move(s), std::move(cs)}), start);
    }
    if (t.kind == Tok::Ident && is_strategy(t.text)) {
      Strategy st = strategy_of(advance().text);
      expect("visit");
      expect("(");
      Expr s = expr();
      expect(")");
      auto cs = cases();
      return finish(make_expr(Visit{st, std::move(s), std::move(cs)}), start);
    }
    if (is_name(t)) {
      std::string name = advance().text;
      if (accept("(")) {
        auto args = exprs(")");
        if (constructors_.count(name)) {
          return finish(make_expr(ConsExpr{std::move(name), std::move(args)}), start);
        }
        return finish(make_expr(Call{std::move(name), std::move(args)}), start);
      }
      return finish(make_expr(Var{std::move(name)}), start);
    }
    fail({"expression"});
  }

  // After `local`: `t x, ... in e; ... end`.
  Expr block(Span start) {
    Block b;
    if (!at("in")) {
      do {
        Span ds = peek().span;
        Type ty = type();
        std::string x = ident();
        b.locals.push_back(LocalDecl{std::move(ty), std::move(x), from(ds)});
      } while (accept(","));
    }
    expect("in");
    while (!at("end")) {
      b.body.push_back(expr());
      if (!accept(";")) break;
    }
    expect("end");
    return finish(make_expr(std::move(b)), start);
  }

  std::vector<Token> toks_;
  NameSet constructors_;
  std::size_t pos_ = 0;
  std::uint32_t last_end_ = 0;
};

NameSet constructors_of(const ModuleDef& m) {
  NameSet out;
  for (const auto& d : m.datatypes) {
    for (const auto& c : d.constructors) out.insert(c.name);
  }
  return out;
}

}  // namespace

ModuleDef parse_module(std::string_view text) {
  auto toks = Lexer(text).run();
  auto names = scan_constructors(toks);
  Parser p(std::move(toks), std::move(names));
  return p.module();
}

ModuleDef parse_module(const SourceFile& src) { return parse_module(src.text); }

Expr parse_expr(std::string_view text, const ModuleDef& context) {
  Parser p(Lexer(text).run(), constructors_of(context));
  return p.whole([&] { return p.expr(); });
}

Pattern parse_pattern(std::string_view text) {
  Parser p(Lexer(text).run(), {});
  return p.whole([&] { return p.pattern(); });
}

Value parse_value(std::string_view text) {
  Parser p(Lexer(text).run(), {});
  return p.whole([&] { return p.value(); });
}

std::string describe(const ParseError& e, std::string_view path) {
  return std::string(path) + ":" + std::to_string(e.span().line) + ":" +
         std::to_string(e.span().column) + ": " + e.what();
}

}  // namespace rascal_light
