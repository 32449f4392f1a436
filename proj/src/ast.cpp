#include "rascal_light/ast.h"

#include <algorithm>
#include <array>
#include <set>

#include "overloaded.h"
#include "rascal_light/typing.h"

namespace rascal_light {

using detail::Overloaded;

const FunDef* ModuleDef::find_function(std::string_view name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const GlobalDef* ModuleDef::find_global(std::string_view name) const {
  for (const auto& g : globals) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

bool is_builtin_datatype(std::string_view name) { return name == "Bool" || name == "NoKey"; }

bool is_builtin_constructor(std::string_view name) {
  return name == "true" || name == "false" || name == "nokey";
}

namespace {

constexpr std::array<std::string_view, 35> kReserved = {
    "fail",    "break",   "continue",  "return",    "throw",          "try",
    "catch",   "finally", "switch",    "visit",     "solve",          "for",
    "while",   "if",      "then",      "else",      "local",          "in",
    "end",     "data",    "global",    "top-down",  "bottom-up",      "top-down-break",
    "bottom-up-break",    "innermost", "outermost", "value",          "void",
    "int",     "str",     "list",      "set",       "map",            "case",
};

}  // namespace

bool is_reserved(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

namespace {

using Kind = WellFormednessError::Kind;

class Validator {
 public:
  explicit Validator(const ModuleDef& m) : m_(m) {
    for (const auto& f : m.functions) functions_.emplace(f.name, f.params.size());
  }

  std::vector<WellFormednessError> run() {
    check_declarations();
    for (const auto& g : m_.globals) {
      check_type(g.type, g.span);
      with_globals([&] { expr(g.init); });
    }
    for (const auto& f : m_.functions) {
      check_type(f.return_type, f.span);
      std::set<std::string> seen;
      for (const auto& p : f.params) {
        check_type(p.type, f.span);
        if (!seen.insert(p.name).second) {
          report(Kind::DuplicateParameter, p.name, f.span, "parameter declared twice in " + f.name);
        }
      }
      with_globals([&] {
        std::set<std::string> declared;
        for (const auto& p : f.params) {
          if (declared.insert(p.name).second) declare(p.name, f.span);
        }
        expr(f.body);
      });
    }
    return std::move(errors_);
  }

  std::vector<WellFormednessError> run_expr(const Expr& e) {
    with_globals([&] { expr(e); });
    return std::move(errors_);
  }

 private:
  void report(Kind kind, std::string name, Span span, std::string message) {
    errors_.push_back(WellFormednessError{kind, std::move(name), span, std::move(message)});
  }

  void check_declarations() {
    std::set<std::string, std::less<>> datatypes{"Bool", "NoKey"};
    std::set<std::string> names{"true", "false", "nokey"};
    auto check_name = [&](const std::string& name, Span span) {
      if (is_reserved(name)) report(Kind::ReservedName, name, span, "reserved word used as name");
    };
    for (const auto& d : m_.datatypes) {
      check_name(d.name, d.span);
      if (!datatypes.insert(d.name).second) {
        report(Kind::DuplicateName, d.name, d.span, "datatype defined twice");
      }
      for (const auto& k : d.constructors) {
        check_name(k.name, k.span);
        if (!names.insert(k.name).second) {
          report(Kind::DuplicateName, k.name, k.span, "name defined twice");
        }
        std::set<std::string> fields;
        for (const auto& f : k.fields) {
          check_type(f.type, k.span);
          if (!fields.insert(f.name).second) {
            report(Kind::DuplicateParameter, f.name, k.span, "field declared twice in " + k.name);
          }
        }
      }
    }
    for (const auto& g : m_.globals) {
      check_name(g.name, g.span);
      if (!names.insert(g.name).second) {
        report(Kind::DuplicateName, g.name, g.span, "name defined twice");
      }
    }
    for (const auto& f : m_.functions) {
      check_name(f.name, f.span);
      if (!names.insert(f.name).second) {
        report(Kind::DuplicateName, f.name, f.span, "name defined twice");
      }
    }
    datatypes_ = std::move(datatypes);
  }

  void check_type(const Type& t, Span span) {
    switch (t.kind()) {
      case Type::Kind::Adt:
        if (!datatypes_.count(t.name()) && !is_builtin_datatype(t.name()) &&
            std::none_of(m_.datatypes.begin(), m_.datatypes.end(),
                         [&](const DataDef& d) { return d.name == t.name(); })) {
          report(Kind::UndefinedDatatype, t.name(), span, "unknown datatype");
        }
        break;
      case Type::Kind::List:
      case Type::Kind::Set:
        check_type(t.element(), span);
        break;
      case Type::Kind::Map:
        check_type(t.key(), span);
        check_type(t.mapped(), span);
        break;
      default:
        break;
    }
  }

  template <class F>
  void with_globals(F&& f) {
    scope_.clear();
    for (const auto& g : m_.globals) scope_.push_back(g.name);
    f();
    scope_.clear();
  }

  bool in_scope(std::string_view name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  void declare(const std::string& name, Span span) {
    if (in_scope(name)) {
      report(Kind::Shadowing, name, span, "declaration shadows an enclosing variable");
    }
    scope_.push_back(name);
  }

  void use(const std::string& name, Span span) {
    if (!in_scope(name)) report(Kind::UndefinedVariable, name, span, "variable not declared");
  }

  void constructor_ref(const std::string& name, std::size_t arity, Span span) {
    const ConstructorSig* sig = registry().find(name);
    if (sig == nullptr) {
      report(Kind::UndefinedConstructor, name, span, "unknown constructor");
    } else if (sig->fields.size() != arity) {
      report(Kind::ArityMismatch, name, span,
             "expected " + std::to_string(sig->fields.size()) + " arguments, got " +
                 std::to_string(arity));
    }
  }

  const DataRegistry& registry() {
    if (!registry_) registry_.emplace(m_);
    return *registry_;
  }

  // Binding occurrences of a pattern, appended to `out`. Variables already
  // in scope are references, not bindings.
  void pattern(const Pattern& p, std::vector<std::string>& out) {
    std::visit(Overloaded{
                   [](const LiteralPat&) {},
                   [&](const VarPat& v) {
                     if (!in_scope(v.name) &&
                         std::find(out.begin(), out.end(), v.name) == out.end()) {
                       out.push_back(v.name);
                     }
                   },
                   [&](const ConsPat& c) {
                     constructor_ref(c.name, c.args.size(), p.span);
                     for (const auto& a : c.args) pattern(a, out);
                   },
                   [&](const TypedPat& t) {
                     check_type(t.type, p.span);
                     if (in_scope(t.name)) {
                       report(Kind::Shadowing, t.name, p.span,
                              "labelled variable shadows an enclosing variable");
                     } else if (std::find(out.begin(), out.end(), t.name) == out.end()) {
                       out.push_back(t.name);
                     }
                     pattern(*t.inner, out);
                   },
                   [&](const ListPat& l) { star_patterns(l.items, out); },
                   [&](const SetPat& s) { star_patterns(s.items, out); },
                   [&](const NegPat& n) {
                     std::vector<std::string> hidden;
                     pattern(*n.inner, hidden);
                   },
                   [&](const DeepPat& d) { pattern(*d.inner, out); },
               },
               p.node);
  }

  void star_patterns(const std::vector<StarPattern>& items, std::vector<std::string>& out) {
    for (const auto& item : items) {
      if (const auto* s = std::get_if<StarVar>(&item)) {
        if (!in_scope(s->name) && std::find(out.begin(), out.end(), s->name) == out.end()) {
          out.push_back(s->name);
        }
      } else {
        pattern(*std::get<Box<Pattern>>(item), out);
      }
    }
  }

  template <class F>
  void scoped(F&& f) {
    auto mark = scope_.size();
    f();
    scope_.resize(mark);
  }

  void case_(const Case& c) {
    scoped([&] {
      std::vector<std::string> bound;
      pattern(*c.pattern, bound);
      for (auto& b : bound) scope_.push_back(b);
      expr(*c.body);
    });
  }

  void exprs(const std::vector<Expr>& es) {
    for (const auto& e : es) expr(e);
  }

  void expr(const Expr& e) {
    std::visit(
        Overloaded{
            [](const Literal&) {},
            [&](const Var& v) { use(v.name, e.span); },
            [&](const Unary& u) { expr(*u.operand); },
            [&](const Binary& b) {
              expr(*b.lhs);
              expr(*b.rhs);
            },
            [&](const ConsExpr& c) {
              constructor_ref(c.name, c.args.size(), e.span);
              exprs(c.args);
            },
            [&](const Call& c) {
              auto it = functions_.find(c.name);
              if (it == functions_.end()) {
                report(Kind::UndefinedFunction, c.name, e.span, "unknown function");
              } else if (it->second != c.args.size()) {
                report(Kind::ArityMismatch, c.name, e.span,
                       "expected " + std::to_string(it->second) + " arguments, got " +
                           std::to_string(c.args.size()));
              }
              exprs(c.args);
            },
            [&](const ListExpr& l) { exprs(l.elements); },
            [&](const SetExpr& s) { exprs(s.elements); },
            [&](const MapExpr& m) {
              for (std::size_t i = 0; i < m.keys.size(); ++i) {
                expr(m.keys[i]);
                expr(m.values[i]);
              }
            },
            [&](const Lookup& l) {
              expr(*l.map);
              expr(*l.key);
            },
            [&](const Update& u) {
              expr(*u.map);
              expr(*u.key);
              expr(*u.value);
            },
            [&](const Return& r) { expr(*r.value); },
            [&](const Assign& a) {
              use(a.name, e.span);
              expr(*a.value);
            },
            [&](const If& i) {
              expr(*i.cond);
              expr(*i.then_branch);
              expr(*i.else_branch);
            },
            [&](const Switch& s) {
              expr(*s.scrutinee);
              for (const auto& c : s.cases) case_(c);
            },
            [&](const Visit& v) {
              expr(*v.scrutinee);
              for (const auto& c : v.cases) case_(c);
            },
            [](const BreakExpr&) {},
            [](const ContinueExpr&) {},
            [](const FailExpr&) {},
            [&](const Block& b) {
              scoped([&] {
                std::set<std::string> seen;
                for (const auto& l : b.locals) {
                  check_type(l.type, l.span);
                  if (!seen.insert(l.name).second) {
                    report(Kind::DuplicateLocal, l.name, l.span, "local declared twice in block");
                    continue;
                  }
                  declare(l.name, l.span);
                }
                exprs(b.body);
              });
            },
            [&](const For& f) {
              scoped([&] {
                std::visit(Overloaded{
                               [&](const EnumGen& g) {
                                 expr(*g.source);
                                 declare(g.var, e.span);
                               },
                               [&](const MatchGen& g) {
                                 expr(*g.source);
                                 std::vector<std::string> bound;
                                 pattern(*g.pattern, bound);
                                 for (auto& b : bound) scope_.push_back(b);
                               },
                           },
                           f.generator);
                expr(*f.body);
              });
            },
            [&](const While& w) {
              expr(*w.cond);
              expr(*w.body);
            },
            [&](const Solve& s) {
              for (const auto& x : s.vars) use(x, e.span);
              expr(*s.body);
            },
            [&](const Throw& t) { expr(*t.value); },
            [&](const TryCatch& t) {
              expr(*t.body);
              scoped([&] {
                declare(t.var, e.span);
                expr(*t.handler);
              });
            },
            [&](const TryFinally& t) {
              expr(*t.body);
              expr(*t.finalizer);
            },
        },
        e.node);
  }

  const ModuleDef& m_;
  std::map<std::string, std::size_t, std::less<>> functions_;
  std::set<std::string, std::less<>> datatypes_;
  std::optional<DataRegistry> registry_;
  std::vector<std::string> scope_;
  std::vector<WellFormednessError> errors_;
};

}  // namespace

std::vector<WellFormednessError> validate_module(const ModuleDef& m) {
  return Validator(m).run();
}

std::vector<WellFormednessError> validate_expr(const ModuleDef& m, const Expr& e) {
  Validator v(m);
  // Declarations are checked by validate_module; only the expression here.
  return v.run_expr(e);
}

bool is_finite_subset(const Expr& e) {
  auto all = [](const std::vector<Expr>& es) {
    return std::all_of(es.begin(), es.end(), [](const Expr& x) { return is_finite_subset(x); });
  };
  auto cases = [](const std::vector<Case>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Case& c) {
      return is_finite_subset(*c.body);
    });
  };
  return std::visit(
      Overloaded{
          [](const Literal&) { return true; },
          [](const Var&) { return true; },
          [](const Unary& u) { return is_finite_subset(*u.operand); },
          [](const Binary& b) { return is_finite_subset(*b.lhs) && is_finite_subset(*b.rhs); },
          [&](const ConsExpr& c) { return all(c.args); },
          [](const Call&) { return false; },
          [&](const ListExpr& l) { return all(l.elements); },
          [&](const SetExpr& s) { return all(s.elements); },
          [&](const MapExpr& m) { return all(m.keys) && all(m.values); },
          [](const Lookup& l) { return is_finite_subset(*l.map) && is_finite_subset(*l.key); },
          [](const Update& u) {
            return is_finite_subset(*u.map) && is_finite_subset(*u.key) &&
                   is_finite_subset(*u.value);
          },
          [](const Return& r) { return is_finite_subset(*r.value); },
          [](const Assign& a) { return is_finite_subset(*a.value); },
          [](const If& i) {
            return is_finite_subset(*i.cond) && is_finite_subset(*i.then_branch) &&
                   is_finite_subset(*i.else_branch);
          },
          [&](const Switch& s) { return is_finite_subset(*s.scrutinee) && cases(s.cases); },
          [&](const Visit& v) {
            return (v.strategy == Strategy::BottomUp || v.strategy == Strategy::BottomUpBreak) &&
                   is_finite_subset(*v.scrutinee) && cases(v.cases);
          },
          [](const BreakExpr&) { return true; },
          [](const ContinueExpr&) { return true; },
          [](const FailExpr&) { return true; },
          [&](const Block& b) { return all(b.body); },
          [](const For& f) {
            const Expr& source = std::visit(
                [](const auto& g) -> const Expr& { return *g.source; }, f.generator);
            return is_finite_subset(source) && is_finite_subset(*f.body);
          },
          [](const While&) { return false; },
          [](const Solve&) { return false; },
          [](const Throw& t) { return is_finite_subset(*t.value); },
          [](const TryCatch& t) { return is_finite_subset(*t.body) && is_finite_subset(*t.handler); },
          [](const TryFinally& t) {
            return is_finite_subset(*t.body) && is_finite_subset(*t.finalizer);
          },
      },
      e.node);
}

std::string_view to_string(WellFormednessError::Kind kind) {
  switch (kind) {
    case Kind::DuplicateName: return "DuplicateName";
    case Kind::DuplicateParameter: return "DuplicateParameter";
    case Kind::DuplicateLocal: return "DuplicateLocal";
    case Kind::ReservedName: return "ReservedName";
    case Kind::UndefinedFunction: return "UndefinedFunction";
    case Kind::UndefinedConstructor: return "UndefinedConstructor";
    case Kind::UndefinedDatatype: return "UndefinedDatatype";
    case Kind::UndefinedVariable: return "UndefinedVariable";
    case Kind::ArityMismatch: return "ArityMismatch";
    case Kind::Shadowing: return "Shadowing";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::TopDown: return "top-down";
    case Strategy::BottomUp: return "bottom-up";
    case Strategy::TopDownBreak: return "top-down-break";
    case Strategy::BottomUpBreak: return "bottom-up-break";
    case Strategy::Outermost: return "outermost";
    case Strategy::Innermost: return "innermost";
  }
  return "?";
}

std::string_view to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Neq: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::In: return "in";
  }
  return "?";
}

}  // namespace rascal_light
