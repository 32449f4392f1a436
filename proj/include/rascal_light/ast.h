#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rascal_light/type.h"
#include "rascal_light/value.h"

namespace rascal_light {

// Half-open byte range into the source text, plus the 1-based line/column
// of its start. Spans never take part in structural equality.
struct Span {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  friend bool operator==(const Span&, const Span&) { return true; }
};

// Owning, deep-copying, non-null pointer for recursive AST nodes.
template <class T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT: implicit by design of the AST builders
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Expr;
struct Pattern;

enum class Strategy : std::uint8_t {
  TopDown,
  BottomUp,
  TopDownBreak,
  BottomUpBreak,
  Outermost,
  Innermost,
};

enum class UnaryOp : std::uint8_t { Neg, Not };

enum class BinaryOp : std::uint8_t {
  Add, Sub, Mul, Div, Mod,
  Eq, Neq, Lt, Le, Gt, Ge,
  And, Or, In,
};

// ---- Patterns ----

struct LiteralPat {
  Value value;  // Int or Str
  bool operator==(const LiteralPat&) const = default;
};
struct VarPat {
  std::string name;
  bool operator==(const VarPat&) const = default;
};
struct ConsPat {
  std::string name;
  std::vector<Pattern> args;
  bool operator==(const ConsPat&) const = default;
};
// `t x : p`
struct TypedPat {
  Type type;
  std::string name;
  Box<Pattern> inner;
  bool operator==(const TypedPat&) const = default;
};
// `*x` inside a list or set pattern.
struct StarVar {
  std::string name;
  Span span;
  bool operator==(const StarVar&) const = default;
};
using StarPattern = std::variant<Box<Pattern>, StarVar>;
struct ListPat {
  std::vector<StarPattern> items;
  bool operator==(const ListPat&) const = default;
};
struct SetPat {
  std::vector<StarPattern> items;
  bool operator==(const SetPat&) const = default;
};
struct NegPat {
  Box<Pattern> inner;
  bool operator==(const NegPat&) const = default;
};
// `/p`
struct DeepPat {
  Box<Pattern> inner;
  bool operator==(const DeepPat&) const = default;
};

struct Pattern {
  using Node =
      std::variant<LiteralPat, VarPat, ConsPat, TypedPat, ListPat, SetPat, NegPat, DeepPat>;
  Node node;
  Span span;
  bool operator==(const Pattern&) const = default;
};

// ---- Cases and generators ----

struct Case {
  Box<Pattern> pattern;
  Box<Expr> body;
  bool operator==(const Case&) const = default;
};

// `x <- e`
struct EnumGen {
  std::string var;
  Box<Expr> source;
  bool operator==(const EnumGen&) const = default;
};
// `p := e`
struct MatchGen {
  Box<Pattern> pattern;
  Box<Expr> source;
  bool operator==(const MatchGen&) const = default;
};
using Generator = std::variant<EnumGen, MatchGen>;

// ---- Expressions ----

struct Literal {
  Value value;  // Int or Str
  bool operator==(const Literal&) const = default;
};
struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};
struct Unary {
  UnaryOp op;
  Box<Expr> operand;
  bool operator==(const Unary&) const = default;
};
struct Binary {
  Box<Expr> lhs;
  BinaryOp op;
  Box<Expr> rhs;
  bool operator==(const Binary&) const = default;
};
struct ConsExpr {
  std::string name;
  std::vector<Expr> args;
  bool operator==(const ConsExpr&) const = default;
};
struct Call {
  std::string name;
  std::vector<Expr> args;
  bool operator==(const Call&) const = default;
};
struct ListExpr {
  std::vector<Expr> elements;
  bool operator==(const ListExpr&) const = default;
};
struct SetExpr {
  std::vector<Expr> elements;
  bool operator==(const SetExpr&) const = default;
};
// keys[i] : values[i]
struct MapExpr {
  std::vector<Expr> keys;
  std::vector<Expr> values;
  bool operator==(const MapExpr&) const = default;
};
struct Lookup {
  Box<Expr> map;
  Box<Expr> key;
  bool operator==(const Lookup&) const = default;
};
struct Update {
  Box<Expr> map;
  Box<Expr> key;
  Box<Expr> value;
  bool operator==(const Update&) const = default;
};
struct Return {
  Box<Expr> value;
  bool operator==(const Return&) const = default;
};
struct Assign {
  std::string name;
  Box<Expr> value;
  bool operator==(const Assign&) const = default;
};
struct If {
  Box<Expr> cond;
  Box<Expr> then_branch;
  Box<Expr> else_branch;
  bool operator==(const If&) const = default;
};
struct Switch {
  Box<Expr> scrutinee;
  std::vector<Case> cases;
  bool operator==(const Switch&) const = default;
};
struct Visit {
  Strategy strategy;
  Box<Expr> scrutinee;
  std::vector<Case> cases;
  bool operator==(const Visit&) const = default;
};
struct BreakExpr {
  bool operator==(const BreakExpr&) const = default;
};
struct ContinueExpr {
  bool operator==(const ContinueExpr&) const = default;
};
struct FailExpr {
  bool operator==(const FailExpr&) const = default;
};
struct LocalDecl {
  Type type;
  std::string name;
  Span span;
  bool operator==(const LocalDecl&) const = default;
};
// `local t x, ... in e; ... end`
struct Block {
  std::vector<LocalDecl> locals;
  std::vector<Expr> body;
  bool operator==(const Block&) const = default;
};
struct For {
  Generator generator;
  Box<Expr> body;
  bool operator==(const For&) const = default;
};
struct While {
  Box<Expr> cond;
  Box<Expr> body;
  bool operator==(const While&) const = default;
};
struct Solve {
  std::vector<std::string> vars;
  Box<Expr> body;
  bool operator==(const Solve&) const = default;
};
struct Throw {
  Box<Expr> value;
  bool operator==(const Throw&) const = default;
};
struct TryCatch {
  Box<Expr> body;
  std::string var;
  Box<Expr> handler;
  bool operator==(const TryCatch&) const = default;
};
struct TryFinally {
  Box<Expr> body;
  Box<Expr> finalizer;
  bool operator==(const TryFinally&) const = default;
};

struct Expr {
  using Node = std::variant<Literal, Var, Unary, Binary, ConsExpr, Call, ListExpr, SetExpr,
                            MapExpr, Lookup, Update, Return, Assign, If, Switch, Visit,
                            BreakExpr, ContinueExpr, FailExpr, Block, For, While, Solve, Throw,
                            TryCatch, TryFinally>;
  Node node;
  Span span;
  bool operator==(const Expr&) const = default;
};

// ---- Definitions ----

struct Param {
  Type type;
  std::string name;
  bool operator==(const Param&) const = default;
};

struct GlobalDef {
  std::string name;
  Type type;
  Expr init;
  Span span;
  bool operator==(const GlobalDef&) const = default;
};

struct FunDef {
  std::string name;
  Type return_type;
  std::vector<Param> params;
  Expr body;
  Span span;
  bool operator==(const FunDef&) const = default;
};

struct ConstructorDef {
  std::string name;
  std::vector<Param> fields;
  Span span;
  bool operator==(const ConstructorDef&) const = default;
};

struct DataDef {
  std::string name;
  std::vector<ConstructorDef> constructors;
  Span span;
  bool operator==(const DataDef&) const = default;
};

struct ModuleDef {
  std::vector<DataDef> datatypes;
  std::vector<GlobalDef> globals;
  std::vector<FunDef> functions;
  bool operator==(const ModuleDef&) const = default;

  const FunDef* find_function(std::string_view name) const;
  const GlobalDef* find_global(std::string_view name) const;
};

// ---- Well-formedness ----

struct WellFormednessError {
  enum class Kind : std::uint8_t {
    DuplicateName,
    DuplicateParameter,
    DuplicateLocal,
    ReservedName,
    UndefinedFunction,
    UndefinedConstructor,
    UndefinedDatatype,
    UndefinedVariable,
    ArityMismatch,
    Shadowing,
  };
  Kind kind;
  std::string name;
  Span span;
  std::string message;
};

std::string_view to_string(WellFormednessError::Kind kind);

// Names of the built-in datatypes and constructors (Bool, NoKey).
bool is_builtin_datatype(std::string_view name);
bool is_builtin_constructor(std::string_view name);
// Keywords of the concrete syntax; never valid as names.
bool is_reserved(std::string_view name);

// Checks the module assumptions: unique names, defined references, matching
// arities and well-scoped variables without shadowing. Errors come out in
// declaration order.
std::vector<WellFormednessError> validate_module(const ModuleDef& m);

// Same checks for a free-standing expression evaluated against `m`'s globals.
std::vector<WellFormednessError> validate_expr(const ModuleDef& m, const Expr& e);

// True iff `e` stays in the terminating fragment: no while, solve or calls,
// and only bottom-up / bottom-up-break visits.
bool is_finite_subset(const Expr& e);

std::string_view to_string(Strategy s);
std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

// Helpers for building AST nodes in code.
template <class Node>
Expr make_expr(Node node, Span span = {}) {
  return Expr{Expr::Node(std::move(node)), span};
}
template <class Node>
Pattern make_pattern(Node node, Span span = {}) {
  return Pattern{Pattern::Node(std::move(node)), span};
}

}  // namespace rascal_light
