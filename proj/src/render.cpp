#include "rascal_light/render.h"

#include "overloaded.h"
#include "rascal_light/typing.h"

namespace rascal_light {

using detail::Overloaded;

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += f(xs[i]);
  }
  return out;
}

std::string_view op_text(BinaryOp op) {
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

// Forms whose last component is a full expression, so they would swallow
// whatever follows them.
bool open(const Expr& e) {
  return std::holds_alternative<Return>(e.node) || std::holds_alternative<Throw>(e.node) ||
         std::holds_alternative<Assign>(e.node) || std::holds_alternative<If>(e.node) ||
         std::holds_alternative<For>(e.node) || std::holds_alternative<While>(e.node) ||
         std::holds_alternative<Solve>(e.node) || std::holds_alternative<TryCatch>(e.node) ||
         std::holds_alternative<TryFinally>(e.node);
}

std::string paren(const Expr& e, bool wrap) {
  return wrap ? "(" + render(e) + ")" : render(e);
}

std::string render_cases(const std::vector<Case>& cs) {
  std::string out = "{";
  for (const auto& c : cs) out += " case " + render(*c.pattern) + " => " + render(*c.body);
  return out + " }";
}

std::string render_star(const StarPattern& sp) {
  return std::visit(Overloaded{
                        [](const Box<Pattern>& p) { return render(*p); },
                        [](const StarVar& s) { return "*" + s.name; },
                    },
                    sp);
}

std::string render_params(const std::vector<Param>& ps) {
  return join(ps, [](const Param& p) { return render_type(p.type) + " " + p.name; });
}

}  // namespace

std::string render(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int: return v.as_int().str();
    case Value::Kind::Str: return quote(v.as_string());
    case Value::Kind::Cons: {
      std::vector<Value> args(v.elements().begin(), v.elements().end());
      return v.constructor_name() + "(" + join(args, [](const Value& x) { return render(x); }) + ")";
    }
    case Value::Kind::List:
    case Value::Kind::Set: {
      std::vector<Value> xs(v.elements().begin(), v.elements().end());
      std::string body = join(xs, [](const Value& x) { return render(x); });
      return v.kind() == Value::Kind::List ? "[" + body + "]" : "{" + body + "}";
    }
    case Value::Kind::Map: {
      std::vector<Value::Entry> es(v.entries().begin(), v.entries().end());
      return "(" + join(es, [](const Value::Entry& e) {
               return render(e.first) + ": " + render(e.second);
             }) + ")";
    }
    case Value::Kind::Bottom: return "<undefined>";
  }
  return "?";
}

std::string render(const Pattern& p) {
  return std::visit(
      Overloaded{
          [](const LiteralPat& l) { return render(l.value); },
          [](const VarPat& x) { return x.name; },
          [](const ConsPat& c) {
            return c.name + "(" + join(c.args, [](const Pattern& a) { return render(a); }) + ")";
          },
          [](const TypedPat& t) {
            return render_type(t.type) + " " + t.name + " : " + render(*t.inner);
          },
          [](const ListPat& l) { return "[" + join(l.items, render_star) + "]"; },
          [](const SetPat& s) { return "{" + join(s.items, render_star) + "}"; },
          [](const NegPat& n) { return "!" + render(*n.inner); },
          [](const DeepPat& d) {
            std::string inner = render(*d.inner);
            return inner.starts_with("/") ? "/ " + inner : "/" + inner;
          },
      },
      p.node);
}

std::string render(const Expr& e) {
  auto args = [](const std::vector<Expr>& es) {
    return join(es, [](const Expr& x) { return render(x); });
  };
  auto operand = [](const Expr& x) {
    return paren(x, open(x) || std::holds_alternative<Binary>(x.node));
  };
  auto target = [](const Expr& x) {
    return paren(x, open(x) || std::holds_alternative<Binary>(x.node) ||
                        std::holds_alternative<Unary>(x.node));
  };
  return std::visit(
      Overloaded{
          [](const Literal& l) { return render(l.value); },
          [](const Var& x) { return x.name; },
          [](const Unary& u) {
            return std::string(u.op == UnaryOp::Neg ? "-" : "!") + "(" + render(*u.operand) + ")";
          },
          [&](const Binary& b) {
            return operand(*b.lhs) + " " + std::string(op_text(b.op)) + " " + operand(*b.rhs);
          },
          [&](const ConsExpr& c) { return c.name + "(" + args(c.args) + ")"; },
          [&](const Call& c) { return c.name + "(" + args(c.args) + ")"; },
          [&](const ListExpr& l) { return "[" + args(l.elements) + "]"; },
          [&](const SetExpr& s) { return "{" + args(s.elements) + "}"; },
          [](const MapExpr& m) {
            std::string out = "(";
            for (std::size_t i = 0; i < m.keys.size(); ++i) {
              if (i > 0) out += ", ";
              out += render(m.keys[i]) + ": " + render(m.values[i]);
            }
            return out + ")";
          },
          [&](const Lookup& l) {
            return target(*l.map) + "[" + paren(*l.key, open(*l.key)) + "]";
          },
          [&](const Update& u) {
            return target(*u.map) + "[" + paren(*u.key, open(*u.key)) + " = " + render(*u.value) +
                   "]";
          },
          [](const Return& r) { return "return " + render(*r.value); },
          [](const Assign& a) { return a.name + " = " + render(*a.value); },
          [](const If& i) {
            return "if " + paren(*i.cond, open(*i.cond)) + " then " +
                   paren(*i.then_branch, open(*i.then_branch)) + " else " + render(*i.else_branch);
          },
          [](const Switch& s) {
            return "switch (" + render(*s.scrutinee) + ") " + render_cases(s.cases);
          },
          [](const Visit& v) {
            return std::string(to_string(v.strategy)) + " visit (" + render(*v.scrutinee) + ") " +
                   render_cases(v.cases);
          },
          [](const BreakExpr&) { return std::string("break"); },
          [](const ContinueExpr&) { return std::string("continue"); },
          [](const FailExpr&) { return std::string("fail"); },
          [](const Block& b) {
            std::string out = "local";
            if (!b.locals.empty()) {
              out += " " + join(b.locals, [](const LocalDecl& d) {
                       return render_type(d.type) + " " + d.name;
                     });
            }
            out += " in";
            if (!b.body.empty()) out += " " + join(b.body, [](const Expr& x) { return render(x); }, "; ");
            return out + " end";
          },
          [](const For& f) {
            std::string gen = std::visit(
                Overloaded{
                    [](const EnumGen& g) { return g.var + " <- " + render(*g.source); },
                    [](const MatchGen& g) {
                      return render(*g.pattern) + " := " + render(*g.source);
                    },
                },
                f.generator);
            return "for (" + gen + ") " + render(*f.body);
          },
          [](const While& w) { return "while (" + render(*w.cond) + ") " + render(*w.body); },
          [](const Solve& s) {
            return "solve (" + join(s.vars, [](const std::string& x) { return x; }) + ") " +
                   render(*s.body);
          },
          [](const Throw& t) { return "throw " + render(*t.value); },
          [](const TryCatch& t) {
            return "try " + paren(*t.body, open(*t.body)) + " catch " + t.var + " => " +
                   render(*t.handler);
          },
          [](const TryFinally& t) {
            return "try " + paren(*t.body, open(*t.body)) + " finally " + render(*t.finalizer);
          },
      },
      e.node);
}

std::string render(const ModuleDef& m) {
  std::string out;
  for (const auto& d : m.datatypes) {
    out += "data " + d.name + " = " + join(d.constructors, [](const ConstructorDef& c) {
             return c.name + "(" + render_params(c.fields) + ")";
           }, " | ") + ";\n";
  }
  for (const auto& g : m.globals) {
    out += "global " + render_type(g.type) + " " + g.name + " = " + render(g.init) + ";\n";
  }
  for (const auto& f : m.functions) {
    out += render_type(f.return_type) + " " + f.name + "(" + render_params(f.params) + ") = " +
           render(f.body) + ";\n";
  }
  return out;
}

}  // namespace rascal_light
