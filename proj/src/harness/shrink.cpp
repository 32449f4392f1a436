#include "overloaded.h"
#include "rascal_light/harness.h"
#include "rascal_light/render.h"

namespace rascal_light::harness {

using detail::Overloaded;

namespace {

template <class F>
void each_child(Expr& e, F&& f) {
  auto cases = [&](std::vector<Case>& cs) {
    for (auto& c : cs) f(*c.body);
  };
  std::visit(Overloaded{
                 [](Literal&) {},
                 [](Var&) {},
                 [&](Unary& u) { f(*u.operand); },
                 [&](Binary& b) {
                   f(*b.lhs);
                   f(*b.rhs);
                 },
                 [&](ConsExpr& c) {
                   for (auto& a : c.args) f(a);
                 },
                 [&](Call& c) {
                   for (auto& a : c.args) f(a);
                 },
                 [&](ListExpr& l) {
                   for (auto& a : l.elements) f(a);
                 },
                 [&](SetExpr& s) {
                   for (auto& a : s.elements) f(a);
                 },
                 [&](MapExpr& m) {
                   for (std::size_t i = 0; i < m.keys.size(); ++i) {
                     f(m.keys[i]);
                     f(m.values[i]);
                   }
                 },
                 [&](Lookup& l) {
                   f(*l.map);
                   f(*l.key);
                 },
                 [&](Update& u) {
                   f(*u.map);
                   f(*u.key);
                   f(*u.value);
                 },
                 [&](Return& r) { f(*r.value); },
                 [&](Assign& a) { f(*a.value); },
                 [&](If& i) {
                   f(*i.cond);
                   f(*i.then_branch);
                   f(*i.else_branch);
                 },
                 [&](Switch& s) {
                   f(*s.scrutinee);
                   cases(s.cases);
                 },
                 [&](Visit& v) {
                   f(*v.scrutinee);
                   cases(v.cases);
                 },
                 [](BreakExpr&) {},
                 [](ContinueExpr&) {},
                 [](FailExpr&) {},
                 [&](Block& b) {
                   for (auto& x : b.body) f(x);
                 },
                 [&](For& fo) {
                   std::visit([&](auto& g) { f(*g.source); }, fo.generator);
                   f(*fo.body);
                 },
                 [&](While& w) {
                   f(*w.cond);
                   f(*w.body);
                 },
                 [&](Solve& s) { f(*s.body); },
                 [&](Throw& t) { f(*t.value); },
                 [&](TryCatch& t) {
                   f(*t.body);
                   f(*t.handler);
                 },
                 [&](TryFinally& t) {
                   f(*t.body);
                   f(*t.finalizer);
                 },
             },
             e.node);
}

void collect(Expr& e, std::vector<Expr*>& out) {
  out.push_back(&e);
  each_child(e, [&](Expr& c) { collect(c, out); });
}

std::vector<Expr*> nodes(Program& p) {
  std::vector<Expr*> out;
  for (auto& g : p.module.globals) collect(g.init, out);
  for (auto& f : p.module.functions) collect(f.body, out);
  collect(p.entry, out);
  return out;
}

std::vector<Expr> children_of(Expr& e) {
  std::vector<Expr> out;
  each_child(e, [&](Expr& c) { out.push_back(c); });
  return out;
}

// Removable items inside a node: block statements, locals, cases.
std::size_t removable(const Expr& e) {
  if (const auto* b = std::get_if<Block>(&e.node)) return b->body.size() + b->locals.size();
  if (const auto* s = std::get_if<Switch>(&e.node)) return s->cases.size() > 1 ? s->cases.size() : 0;
  if (const auto* v = std::get_if<Visit>(&e.node)) return v->cases.size() > 1 ? v->cases.size() : 0;
  return 0;
}

void remove_item(Expr& e, std::size_t j) {
  if (auto* b = std::get_if<Block>(&e.node)) {
    if (j < b->body.size()) {
      b->body.erase(b->body.begin() + static_cast<std::ptrdiff_t>(j));
    } else {
      b->locals.erase(b->locals.begin() + static_cast<std::ptrdiff_t>(j - b->body.size()));
    }
  } else if (auto* s = std::get_if<Switch>(&e.node)) {
    s->cases.erase(s->cases.begin() + static_cast<std::ptrdiff_t>(j));
  } else if (auto* v = std::get_if<Visit>(&e.node)) {
    v->cases.erase(v->cases.begin() + static_cast<std::ptrdiff_t>(j));
  }
}

bool well_formed(const Program& p) {
  return validate_module(p.module).empty() && validate_expr(p.module, p.entry).empty();
}

}  // namespace

std::size_t program_size(const Program& p) {
  Program copy = p;
  return nodes(copy).size() + copy.module.globals.size() + copy.module.functions.size();
}

std::string render_program(const Program& p) {
  return render(p.module) + "// entry: " + render(p.entry) + "\n";
}

Program shrink(Program p, const std::function<bool(const Program&)>& fails,
               std::size_t max_attempts) {
  std::size_t attempts = 0;
  auto accept = [&](Program& c) {
    ++attempts;
    if (program_size(c) >= program_size(p) || !well_formed(c) || !fails(c)) return false;
    p = std::move(c);
    return true;
  };
  bool improved = true;
  while (improved && attempts < max_attempts) {
    improved = false;
    // Whole definitions first: they shrink the most.
    for (std::size_t i = 0; !improved && i < p.module.functions.size(); ++i) {
      Program c = p;
      c.module.functions.erase(c.module.functions.begin() + static_cast<std::ptrdiff_t>(i));
      improved = accept(c);
    }
    for (std::size_t i = 0; !improved && i < p.module.globals.size(); ++i) {
      Program c = p;
      c.module.globals.erase(c.module.globals.begin() + static_cast<std::ptrdiff_t>(i));
      improved = accept(c);
    }
    const std::size_t n = nodes(p).size();
    for (std::size_t k = 0; !improved && k < n && attempts < max_attempts; ++k) {
      Expr& original = *nodes(p)[k];
      std::vector<Expr> kids = children_of(original);
      const std::size_t drops = removable(original);
      // Variant 0 is a literal, then each child, then each removal.
      for (std::size_t j = 0; !improved && j < 1 + kids.size() + drops; ++j) {
        Program c = p;
        Expr& target = *nodes(c)[k];
        if (j == 0) {
          if (std::holds_alternative<Literal>(target.node)) continue;
          target = make_expr(Literal{Value::integer(0)});
        } else if (j <= kids.size()) {
          target = kids[j - 1];
        } else {
          remove_item(target, j - 1 - kids.size());
        }
        improved = accept(c);
      }
    }
  }
  return p;
}

}  // namespace rascal_light::harness
