#include <algorithm>
#include <cassert>

#include "rascal_light/harness.h"
#include "rascal_light/parser.h"

namespace rascal_light::harness {

namespace {

Type adt(const char* name) { return Type::adt(name); }

ConstructorDef cons(const char* name, std::vector<Param> fields) {
  return ConstructorDef{name, std::move(fields), {}};
}

}  // namespace

std::vector<DataDef> default_datatypes() {
  // The first constructor of each datatype must be non-recursive: value
  // generation falls back to it when out of depth.
  return {
      DataDef{"Tree",
              {cons("leaf", {{Type::integer(), "n"}}),
               cons("node", {{adt("Tree"), "l"}, {adt("Tree"), "r"}})},
              {}},
      DataDef{"Wrap",
              {cons("wrap", {{Type::value_type(), "v"}}),
               cons("tagged", {{Type::string(), "s"}, {adt("Tree"), "t"}})},
              {}},
      DataDef{"Color", {cons("red", {}), cons("green", {})}, {}},
  };
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 of the pair, so neighbouring cases are unrelated.
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + i + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Expr value_expr(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int:
    case Value::Kind::Str: return make_expr(Literal{v});
    case Value::Kind::Cons: {
      std::vector<Expr> args;
      for (const auto& a : v.elements()) args.push_back(value_expr(a));
      return make_expr(ConsExpr{v.constructor_name(), std::move(args)});
    }
    case Value::Kind::List:
    case Value::Kind::Set: {
      std::vector<Expr> xs;
      for (const auto& a : v.elements()) xs.push_back(value_expr(a));
      if (v.kind() == Value::Kind::List) return make_expr(ListExpr{std::move(xs)});
      return make_expr(SetExpr{std::move(xs)});
    }
    case Value::Kind::Map: {
      MapExpr m;
      for (const auto& [k, x] : v.entries()) {
        m.keys.push_back(value_expr(k));
        m.values.push_back(value_expr(x));
      }
      return make_expr(std::move(m));
    }
    case Value::Kind::Bottom: return make_expr(Block{});
  }
  return make_expr(Block{});
}

struct ProgramGen::Impl {
  struct ScopeVar {
    std::string name;
    Type type;
  };
  struct FunSig {
    std::string name;
    std::vector<Param> params;
    Type ret;
    bool recursive = false;
  };
  // Where an expression's value goes, which decides how much it may grow.
  enum class Mode : std::uint8_t {
    Free,     // evaluated once
    Bounded,  // repeated: at most one non-constant component per constructor
    Shrink,   // visit case result: a scalar or a bound variable
  };

  ProgramGen& g;
  std::mt19937_64& rng;
  const GenBudget& b;
  Subset subset = Subset::All;
  std::vector<ConstructorSig> constructors;
  std::vector<ScopeVar> scope;
  std::vector<FunSig> funs;
  // Non-recursive functions callable from the body being generated.
  std::size_t callable = 0;
  std::optional<std::size_t> self;
  bool self_used = false;
  bool repeated = false;  // inside a loop, visit case or function body
  int fresh_id = 0;
  double exc = 0.05;

  Impl(ProgramGen& gen) : g(gen), rng(gen.rng_), b(gen.budget_) {
    for (const auto& d : b.datatypes) {
      for (const auto& k : d.constructors) constructors.push_back({d.name, k.name, k.fields});
    }
    constructors.push_back({"Bool", "true", {}});
    constructors.push_back({"Bool", "false", {}});
    constructors.push_back({"NoKey", "nokey", {{Type::value_type(), "key"}}});
  }

  // ---- randomness ----

  std::size_t below(std::size_t n) {
    assert(n > 0);
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }
  std::string fresh(const char* prefix) { return prefix + std::to_string(fresh_id++); }

  // ---- types and values ----

  Type type(int depth) {
    std::size_t n = depth > 0 ? 10 : 7;
    switch (below(n)) {
      case 0: return Type::integer();
      case 1: return Type::string();
      case 2: return Type::value_type();
      case 3: return Type::adt("Bool");
      case 4: return Type::adt(pick(b.datatypes).name);
      case 5: return Type::integer();
      case 6: return Type::value_type();
      case 7: return Type::list_of(type(depth - 1));
      case 8: return Type::set_of(type(depth - 1));
      default: return Type::map_of(type(depth - 1), type(depth - 1));
    }
  }

  Value scalar() {
    if (coin(0.6)) return Value::integer(static_cast<long long>(below(9)) - 3);
    static const std::vector<std::string> strs{"", "a", "b", "ab"};
    return Value::string(pick(strs));
  }

  std::size_t coll_size() { return below(b.max_collection + 1); }

  Value value(int depth) {
    if (depth <= 0) {
      if (coin(0.8)) return scalar();
      return value_of(Type::adt(pick(b.datatypes).name), 0);
    }
    switch (below(12)) {
      case 0: case 1: case 2: return scalar();
      case 3: case 4: case 5: {
        const auto& k = pick(constructors);
        std::vector<Value> args;
        for (const auto& f : k.fields) args.push_back(value_of(f.type, depth - 1));
        return Value::constructor(k.name, std::move(args));
      }
      case 6: case 7: {
        std::vector<Value> xs;
        for (std::size_t i = coll_size(); i > 0; --i) xs.push_back(value(depth - 1));
        return Value::list(std::move(xs));
      }
      case 8: case 9: {
        std::vector<Value> xs;
        for (std::size_t i = coll_size(); i > 0; --i) xs.push_back(value(depth - 1));
        return Value::set(std::move(xs));
      }
      default: {
        std::vector<Value::Entry> es;
        for (std::size_t i = coll_size(); i > 0; --i) es.emplace_back(value(depth - 1), value(depth - 1));
        return Value::map(std::move(es));
      }
    }
  }

  Value value_of(const Type& t, int depth) {
    switch (t.kind()) {
      case Type::Kind::Int: return Value::integer(static_cast<long long>(below(9)) - 3);
      case Type::Kind::Str: return Value::string(coin(0.5) ? "a" : "");
      case Type::Kind::Value: return value(depth);
      case Type::Kind::Void: return Value::bottom();
      case Type::Kind::Adt: {
        std::vector<const ConstructorSig*> ks;
        for (const auto& k : constructors) {
          if (k.datatype == t.name()) ks.push_back(&k);
        }
        if (ks.empty()) return Value::bottom();
        const ConstructorSig* k = depth <= 0 ? ks.front() : ks[below(ks.size())];
        std::vector<Value> args;
        for (const auto& f : k->fields) args.push_back(value_of(f.type, depth - 1));
        return Value::constructor(k->name, std::move(args));
      }
      case Type::Kind::List:
      case Type::Kind::Set: {
        std::vector<Value> xs;
        std::size_t n = depth <= 0 ? 0 : coll_size();
        for (std::size_t i = 0; i < n; ++i) xs.push_back(value_of(t.element(), depth - 1));
        return t.kind() == Type::Kind::List ? Value::list(std::move(xs)) : Value::set(std::move(xs));
      }
      case Type::Kind::Map: {
        std::vector<Value::Entry> es;
        std::size_t n = depth <= 0 ? 0 : coll_size();
        for (std::size_t i = 0; i < n; ++i) {
          es.emplace_back(value_of(t.key(), depth - 1), value_of(t.mapped(), depth - 1));
        }
        return Value::map(std::move(es));
      }
    }
    return Value::bottom();
  }

  // ---- patterns ----

  bool in_scope(const std::string& x) const {
    return std::any_of(scope.begin(), scope.end(), [&](const ScopeVar& v) { return v.name == x; });
  }

  // `refs` are names the pattern may mention as references; `bound` collects
  // the names it binds (reused names keep matching non-linear).
  Pattern pattern(int depth, const std::vector<std::string>& refs, std::vector<std::string>& bound,
                  int max_stars) {
    auto var_pat = [&]() -> Pattern {
      std::size_t r = below(10);
      if (r < 2 && !refs.empty()) return make_pattern(VarPat{pick(refs)});
      if (r < 3 && !bound.empty()) return make_pattern(VarPat{pick(bound)});
      std::string x = fresh("p");
      bound.push_back(x);
      return make_pattern(VarPat{x});
    };
    if (depth <= 0) {
      if (coin(0.5)) return var_pat();
      return make_pattern(LiteralPat{scalar()});
    }
    switch (below(11)) {
      case 0: case 1: return var_pat();
      case 2: return make_pattern(LiteralPat{scalar()});
      case 3: case 4: {
        const auto& k = pick(constructors);
        std::vector<Pattern> args;
        for (std::size_t i = 0; i < k.fields.size(); ++i) {
          args.push_back(pattern(depth - 1, refs, bound, max_stars));
        }
        return make_pattern(ConsPat{k.name, std::move(args)});
      }
      case 5: {
        std::string x = fresh("t");
        bound.push_back(x);
        Type t = type(1);
        return make_pattern(TypedPat{t, x, pattern(depth - 1, refs, bound, max_stars)});
      }
      case 6: case 7: {
        std::vector<StarPattern> items;
        int stars = 0;
        std::size_t n = below(std::min<std::size_t>(b.max_collection, 3) + 1);
        for (std::size_t i = 0; i < n; ++i) {
          if (stars < max_stars && coin(0.4)) {
            ++stars;
            std::size_t r = below(10);
            if (r < 2 && !refs.empty()) {
              items.emplace_back(StarVar{pick(refs), {}});
            } else {
              std::string x = fresh("s");
              bound.push_back(x);
              items.emplace_back(StarVar{x, {}});
            }
          } else {
            items.emplace_back(Box<Pattern>(pattern(depth - 1, refs, bound, max_stars)));
          }
        }
        if (coin(0.5)) return make_pattern(ListPat{std::move(items)});
        return make_pattern(SetPat{std::move(items)});
      }
      case 8: {
        std::vector<std::string> hidden;
        return make_pattern(NegPat{pattern(depth - 1, refs, hidden, max_stars)});
      }
      default:
        return make_pattern(DeepPat{pattern(depth - 1, refs, bound, max_stars)});
    }
  }

  // A pattern that matches `v`, binding fresh names for the parts it leaves
  // open.
  Pattern abstract(const Value& v, int depth, std::vector<std::string>& bound, int max_stars) {
    auto bind = [&]() {
      std::string x = fresh("p");
      bound.push_back(x);
      return make_pattern(VarPat{x});
    };
    std::size_t r = below(10);
    if (depth <= 0 || r < 2) return bind();
    if (r == 2) {
      std::string x = fresh("t");
      bound.push_back(x);
      return make_pattern(TypedPat{Type::value_type(), x, abstract(v, depth - 1, bound, max_stars)});
    }
    if (r == 3) {
      auto kids = children(v);
      if (!kids.empty() && coin(0.5)) {
        return make_pattern(DeepPat{abstract(pick(kids), depth - 1, bound, max_stars)});
      }
      return make_pattern(DeepPat{abstract(v, depth - 1, bound, max_stars)});
    }
    switch (v.kind()) {
      case Value::Kind::Int:
      case Value::Kind::Str: return make_pattern(LiteralPat{v});
      case Value::Kind::Cons: {
        std::vector<Pattern> args;
        for (const auto& a : v.elements()) args.push_back(abstract(a, depth - 1, bound, max_stars));
        return make_pattern(ConsPat{v.constructor_name(), std::move(args)});
      }
      case Value::Kind::List:
      case Value::Kind::Set: {
        // Some runs of elements collapse into star variables.
        std::vector<StarPattern> items;
        int stars = 0;
        auto es = v.elements();
        std::size_t i = 0;
        while (i < es.size()) {
          if (stars < max_stars && coin(0.3)) {
            ++stars;
            i += below(es.size() - i + 1);
            std::string x = fresh("s");
            bound.push_back(x);
            items.emplace_back(StarVar{x, {}});
            continue;
          }
          items.emplace_back(Box<Pattern>(abstract(es[i], depth - 1, bound, max_stars)));
          ++i;
        }
        if (stars < max_stars && coin(0.3)) {
          std::string x = fresh("s");
          bound.push_back(x);
          items.insert(items.begin() + static_cast<std::ptrdiff_t>(below(items.size() + 1)),
                       StarVar{x, {}});
        }
        if (v.kind() == Value::Kind::List) return make_pattern(ListPat{std::move(items)});
        return make_pattern(SetPat{std::move(items)});
      }
      default: return bind();
    }
  }

  std::vector<std::string> scope_names() const {
    std::vector<std::string> out;
    for (const auto& v : scope) out.push_back(v.name);
    return out;
  }

  // ---- expressions ----

  Expr lit() { return make_expr(Literal{scalar()}); }
  Expr int_lit() { return make_expr(Literal{Value::integer(static_cast<long long>(below(5)) + 1)}); }
  Expr const_expr(int depth) { return value_expr(value(std::min(depth, 2))); }

  template <class F>
  auto scoped(F&& f) {
    auto mark = scope.size();
    auto out = f();
    scope.resize(mark);
    return out;
  }

  template <class F>
  auto with_mode(bool rep, F&& f) {
    bool saved = repeated;
    repeated = rep || repeated;
    auto out = f();
    repeated = saved;
    return out;
  }

  Mode value_mode(Mode m) const { return repeated && m == Mode::Free ? Mode::Bounded : m; }

  // Components of a constructor-like expression: with Bounded mode all but
  // one are constants.
  std::vector<Expr> components(std::size_t n, int depth, Mode m) {
    std::vector<Expr> out;
    std::size_t live = n == 0 ? 0 : below(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m == Mode::Free || i == live) {
        out.push_back(expr(depth - 1, m));
      } else {
        out.push_back(const_expr(depth - 1));
      }
    }
    return out;
  }

  Expr leaf(Mode m) {
    std::size_t r = below(10);
    if (coin(exc)) {
      switch (below(3)) {
        case 0: return make_expr(BreakExpr{});
        case 1: return make_expr(ContinueExpr{});
        default: return make_expr(FailExpr{});
      }
    }
    if (r < 4 && !scope.empty()) return make_expr(Var{pick(scope).name});
    if (r < 7 || m == Mode::Shrink) return lit();
    return const_expr(1);
  }

  std::vector<Case> cases(int depth, Mode body_mode, std::size_t max_cases) {
    std::vector<Case> out;
    std::size_t n = 1 + below(max_cases);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(scoped([&] {
        std::vector<std::string> bound;
        Pattern p = pattern(std::min(depth, 3), scope_names(), bound, 1);
        for (const auto& x : bound) scope.push_back({x, Type::value_type()});
        Expr body = body_mode == Mode::Shrink ? visit_body(depth - 1, bound)
                                              : expr(depth - 1, body_mode);
        return Case{std::move(p), std::move(body)};
      }));
    }
    return out;
  }

  // Replacement for the matched node: a scalar, a bound variable or an
  // exceptional result, optionally after some effects.
  Expr visit_body(int depth, const std::vector<std::string>& bound) {
    auto result = [&]() -> Expr {
      std::size_t r = below(10);
      if (coin(exc * 2)) return make_expr(FailExpr{});
      if (r < 4 && !bound.empty()) return make_expr(Var{pick(bound)});
      if (r < 5) return make_expr(FailExpr{});
      return lit();
    };
    if (depth > 0 && coin(0.3)) {
      Expr effect = with_mode(true, [&] { return expr(depth - 1, Mode::Bounded); });
      return make_expr(Block{{}, {std::move(effect), result()}});
    }
    return result();
  }

  std::optional<Expr> call(int depth, Mode m) {
    std::vector<std::size_t> options;
    for (std::size_t i = 0; i < callable; ++i) {
      if (!funs[i].recursive) options.push_back(i);
    }
    // Recursive functions only from the entry, outside repetition, so each
    // run walks a single chain of calls.
    if (!self && !repeated && callable == funs.size()) {
      for (std::size_t i = 0; i < funs.size(); ++i) {
        if (funs[i].recursive) options.push_back(i);
      }
    }
    if (self && !self_used && !repeated) options.push_back(*self);
    if (options.empty()) return std::nullopt;
    std::size_t i = pick(options);
    if (self && i == *self) self_used = true;
    std::vector<Expr> args;
    for (const auto& p : funs[i].params) {
      if (coin(0.8)) {
        args.push_back(value_expr(value_of(p.type, 1)));
      } else {
        args.push_back(expr(depth - 1, value_mode(m)));
      }
    }
    return make_expr(Call{funs[i].name, std::move(args)});
  }

  // ---- type-directed helpers: most of the time expressions get operands of
  // the type their operator wants, so evaluation gets past the first step.

  template <class F>
  std::vector<std::string> vars_where(F&& ok) const {
    std::vector<std::string> out;
    for (const auto& v : scope) {
      if (ok(v.type)) out.push_back(v.name);
    }
    return out;
  }

  static bool is_kind(const Type& t, Type::Kind k) { return t.kind() == k; }

  Expr int_expr(int depth, Mode m) {
    auto ints = vars_where([](const Type& t) { return is_kind(t, Type::Kind::Int); });
    if (depth <= 0 || coin(0.4)) {
      if (!ints.empty() && coin(0.6)) return make_expr(Var{pick(ints)});
      return make_expr(Literal{Value::integer(static_cast<long long>(below(9)) - 3)});
    }
    static const std::vector<BinaryOp> ops{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                           BinaryOp::Add, BinaryOp::Div, BinaryOp::Mod};
    BinaryOp op = pick(ops);
    Expr lhs = int_expr(depth - 1, m);
    Expr rhs = m == Mode::Free ? int_expr(depth - 1, m) : int_lit();
    return make_expr(Binary{std::move(lhs), op, std::move(rhs)});
  }

  Expr bool_expr(int depth, Mode m) {
    auto bools = vars_where([](const Type& t) { return is_kind(t, Type::Kind::Adt) && t.name() == "Bool"; });
    std::size_t r = below(20);
    if (depth <= 0 || r < 2) {
      if (!bools.empty() && coin(0.5)) return make_expr(Var{pick(bools)});
      return make_expr(ConsExpr{coin(0.5) ? "true" : "false", {}});
    }
    if (r < 10) {
      Expr lhs = int_expr(depth - 1, m);
      return make_expr(Binary{std::move(lhs), static_cast<BinaryOp>(5 + below(6)), int_expr(depth - 1, m)});
    }
    if (r < 13) {
      Expr lhs = expr(depth - 1, m);
      return make_expr(Binary{std::move(lhs), coin(0.5) ? BinaryOp::Eq : BinaryOp::Neq, expr(depth - 1, m)});
    }
    if (r < 15) {
      Expr lhs = expr(depth - 1, m);
      return make_expr(Binary{std::move(lhs), BinaryOp::In, coll_source(depth - 1, m)});
    }
    if (r < 19) {
      Expr lhs = bool_expr(depth - 1, m);
      return make_expr(Binary{std::move(lhs), coin(0.5) ? BinaryOp::And : BinaryOp::Or, bool_expr(depth - 1, m)});
    }
    return make_expr(Unary{UnaryOp::Not, bool_expr(depth - 1, m)});
  }

  Expr coll_source(int depth, Mode m) {
    auto colls = vars_where([](const Type& t) {
      return is_kind(t, Type::Kind::List) || is_kind(t, Type::Kind::Set) || is_kind(t, Type::Kind::Map);
    });
    if (!colls.empty() && coin(0.5)) return make_expr(Var{pick(colls)});
    std::vector<Expr> xs = components(1 + below(b.max_collection), depth, m);
    if (coin(0.5)) return make_expr(ListExpr{std::move(xs)});
    return make_expr(SetExpr{std::move(xs)});
  }

  Expr map_source(int depth) {
    auto maps = vars_where([](const Type& t) { return is_kind(t, Type::Kind::Map); });
    if (!maps.empty() && coin(0.6)) return make_expr(Var{pick(maps)});
    return const_expr_of(Type::map_of(type(0), type(0)), depth);
  }

  Expr const_expr_of(const Type& t, int depth) { return value_expr(value_of(t, std::min(depth, 2))); }

  Expr assign(int depth, Mode m) {
    const ScopeVar& target = pick(scope);
    std::string name = target.name;
    Type t = target.type;
    if (coin(0.5)) return make_expr(Assign{name, value_expr(value_of(t, 1))});
    if (t.kind() == Type::Kind::Int && coin(0.7)) {
      if (coin(0.5)) return make_expr(Assign{name, int_expr(depth - 1, value_mode(m))});
      static const std::vector<BinaryOp> ops{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
      return make_expr(Assign{name, make_expr(Binary{make_expr(Var{name}), pick(ops), int_lit()})});
    }
    if (t.kind() == Type::Kind::Adt && t.name() == "Bool" && coin(0.7)) {
      return make_expr(Assign{name, bool_expr(depth - 1, value_mode(m))});
    }
    return make_expr(Assign{name, expr(depth - 1, value_mode(m))});
  }

  Expr exceptional(int depth, Mode m) {
    switch (below(9)) {
      case 0: return make_expr(Throw{expr(depth - 1, value_mode(m))});
      case 1: return make_expr(Return{expr(depth - 1, value_mode(m))});
      case 2: return make_expr(FailExpr{});
      case 3: return make_expr(BreakExpr{});
      case 4: return make_expr(ContinueExpr{});
      case 5: {
        MapExpr map;
        map.keys.push_back(make_expr(Literal{Value::integer(1)}));
        map.values.push_back(lit());
        Expr key = scope.empty() || coin(0.5) ? lit() : make_expr(Var{pick(scope).name});
        return make_expr(Lookup{make_expr(std::move(map)), std::move(key)});
      }
      case 6:
        return make_expr(Binary{expr(depth - 1, value_mode(m)),
                                coin(0.5) ? BinaryOp::Div : BinaryOp::Mod,
                                make_expr(Literal{Value::integer(0)})});
      case 7:
        if (!scope.empty()) return make_expr(Assign{pick(scope).name, const_expr(1)});
        [[fallthrough]];
      default:
        return make_expr(Unary{coin(0.5) ? UnaryOp::Neg : UnaryOp::Not, lit()});
    }
  }

  enum class Form : std::uint8_t {
    Lit, Var, Unary, Binary, Cons, Call, List, Set, Map, Lookup, Update, Assign, If, Switch,
    Visit, Block, For, While, Solve, TryCatch, TryFinally,
  };

  Expr expr(int depth, Mode m) {
    if (depth <= 0) return leaf(m);
    if (m == Mode::Shrink) return visit_body(depth, {});
    if (coin(exc)) return exceptional(depth, m);
    m = value_mode(m);
    static const std::vector<std::pair<Form, int>> weights{
        {Form::Lit, 2},    {Form::Var, 3},      {Form::Unary, 1},   {Form::Binary, 4},
        {Form::Cons, 2},   {Form::Call, 3},     {Form::List, 1},    {Form::Set, 1},
        {Form::Map, 1},    {Form::Lookup, 1},   {Form::Update, 1},  {Form::Assign, 4},
        {Form::If, 3},     {Form::Switch, 2},   {Form::Visit, 2},   {Form::Block, 3},
        {Form::For, 2},    {Form::While, 1},    {Form::Solve, 1},   {Form::TryCatch, 1},
        {Form::TryFinally, 1},
    };
    int total = 0;
    for (const auto& [_, w] : weights) total += w;
    while (true) {
      int r = static_cast<int>(below(static_cast<std::size_t>(total)));
      Form f = Form::Lit;
      for (const auto& [form, w] : weights) {
        if (r < w) {
          f = form;
          break;
        }
        r -= w;
      }
      if (auto e = form(f, depth, m)) return std::move(*e);
    }
  }

  std::optional<Expr> form(Form f, int depth, Mode m) {
    const bool finite = subset == Subset::Finite;
    switch (f) {
      case Form::Lit: return lit();
      case Form::Var:
        if (scope.empty()) return std::nullopt;
        return make_expr(Var{pick(scope).name});
      case Form::Unary:
        if (coin(0.5)) {
          return make_expr(Unary{UnaryOp::Neg, coin(0.7) ? int_expr(depth - 1, m) : expr(depth - 1, m)});
        }
        return make_expr(Unary{UnaryOp::Not, coin(0.7) ? bool_expr(depth - 1, m) : expr(depth - 1, m)});
      case Form::Binary: {
        auto op = static_cast<BinaryOp>(below(14));
        bool arithmetic = op <= BinaryOp::Mod;
        if (arithmetic && m != Mode::Free) {
          return make_expr(Binary{coin(0.6) ? int_expr(depth - 1, m) : expr(depth - 1, m), op, int_lit()});
        }
        if (arithmetic && op != BinaryOp::Add && coin(0.6)) {
          Expr lhs = int_expr(depth - 1, m);
          return make_expr(Binary{std::move(lhs), op, int_expr(depth - 1, m)});
        }
        Expr lhs = expr(depth - 1, m);
        Expr rhs = expr(depth - 1, m);
        return make_expr(Binary{std::move(lhs), op, std::move(rhs)});
      }
      case Form::Cons: {
        const auto& k = pick(constructors);
        return make_expr(ConsExpr{k.name, components(k.fields.size(), depth, m)});
      }
      case Form::Call:
        if (finite) return std::nullopt;
        return call(depth, m);
      case Form::List: return make_expr(ListExpr{components(coll_size(), depth, m)});
      case Form::Set: return make_expr(SetExpr{components(coll_size(), depth, m)});
      case Form::Map: {
        MapExpr map;
        std::size_t n = coll_size();
        std::size_t live = n == 0 ? 0 : below(n);
        for (std::size_t i = 0; i < n; ++i) {
          map.keys.push_back(m == Mode::Free ? expr(depth - 1, m) : lit());
          map.values.push_back(m == Mode::Free || i == live ? expr(depth - 1, m) : lit());
        }
        return make_expr(std::move(map));
      }
      case Form::Lookup: {
        Expr key = coin(0.5) ? lit() : expr(depth - 1, m);
        return make_expr(Lookup{coin(0.7) ? map_source(depth - 1) : expr(depth - 1, m), std::move(key)});
      }
      case Form::Update: {
        Expr map = coin(0.7) ? map_source(depth - 1) : expr(depth - 1, m);
        if (m == Mode::Free) {
          Expr key = expr(depth - 1, m);
          return make_expr(Update{std::move(map), std::move(key), expr(depth - 1, m)});
        }
        return make_expr(Update{std::move(map), lit(), lit()});
      }
      case Form::Assign:
        if (scope.empty()) return std::nullopt;
        return assign(depth, m);
      case Form::If: {
        Expr cond = coin(0.8) ? bool_expr(depth - 1, m) : expr(depth - 1, m);
        Expr then_branch = expr(depth - 1, m);
        return make_expr(If{std::move(cond), std::move(then_branch), expr(depth - 1, m)});
      }
      case Form::Switch: {
        Expr scrutinee = expr(depth - 1, m);
        return make_expr(Switch{std::move(scrutinee), cases(depth, m, 3)});
      }
      case Form::Visit: {
        static const std::vector<Strategy> all{Strategy::TopDown,       Strategy::BottomUp,
                                               Strategy::TopDownBreak,  Strategy::BottomUpBreak,
                                               Strategy::Outermost,     Strategy::Innermost};
        static const std::vector<Strategy> fin{Strategy::BottomUp, Strategy::BottomUpBreak};
        Strategy st = pick(finite ? fin : all);
        Expr scrutinee = expr(depth - 1, m);
        auto cs = with_mode(true, [&] { return cases(depth, Mode::Shrink, 2); });
        return make_expr(Visit{st, std::move(scrutinee), std::move(cs)});
      }
      case Form::Block: {
        return scoped([&] {
          Block blk;
          std::size_t nl = below(3);
          for (std::size_t i = 0; i < nl; ++i) {
            LocalDecl d{type(1), fresh("x"), {}};
            scope.push_back({d.name, d.type});
            blk.locals.push_back(std::move(d));
          }
          std::size_t n = 1 + below(3);
          for (std::size_t i = 0; i < n; ++i) {
            if (i == 0 && nl > 0 && coin(0.7)) {
              const LocalDecl& d = blk.locals[below(nl)];
              blk.body.push_back(make_expr(Assign{d.name, value_expr(value_of(d.type, 1))}));
            } else {
              blk.body.push_back(expr(depth - 1, m));
            }
          }
          return make_expr(std::move(blk));
        });
      }
      case Form::For: {
        Expr source = coin(0.75) ? coll_source(depth - 1, m) : expr(depth - 1, m);
        return scoped([&] {
          Generator gen_;
          if (coin(0.6)) {
            std::string x = fresh("e");
            scope.push_back({x, Type::value_type()});
            gen_ = EnumGen{x, std::move(source)};
          } else {
            std::vector<std::string> bound;
            Pattern p = pattern(2, scope_names(), bound, 1);
            for (const auto& x : bound) scope.push_back({x, Type::value_type()});
            gen_ = MatchGen{std::move(p), std::move(source)};
          }
          Expr body = with_mode(true, [&] { return expr(depth - 1, Mode::Bounded); });
          return make_expr(For{std::move(gen_), std::move(body)});
        });
      }
      case Form::While: {
        if (finite) return std::nullopt;
        return with_mode(true, [&] {
          Expr cond = coin(0.8) ? bool_expr(depth - 1, Mode::Bounded) : expr(depth - 1, Mode::Bounded);
          return make_expr(While{std::move(cond), expr(depth - 1, Mode::Bounded)});
        });
      }
      case Form::Solve: {
        if (finite || scope.empty()) return std::nullopt;
        std::vector<std::string> vars{pick(scope).name};
        if (coin(0.3)) {
          std::string y = pick(scope).name;
          if (y != vars.front()) vars.push_back(y);
        }
        Expr body = with_mode(true, [&] { return expr(depth - 1, Mode::Bounded); });
        return make_expr(Solve{std::move(vars), std::move(body)});
      }
      case Form::TryCatch: {
        Expr body = expr(depth - 1, m);
        return scoped([&] {
          std::string x = fresh("c");
          scope.push_back({x, Type::value_type()});
          Expr handler = expr(depth - 1, m);
          return make_expr(TryCatch{std::move(body), x, std::move(handler)});
        });
      }
      case Form::TryFinally: {
        Expr body = expr(depth - 1, m);
        return make_expr(TryFinally{std::move(body), expr(depth - 1, m)});
      }
    }
    return std::nullopt;
  }

  // ---- modules ----

  void reset_for_program() {
    scope.clear();
    funs.clear();
    callable = 0;
    self.reset();
    self_used = false;
    repeated = false;
    fresh_id = 0;
    // Half the programs lean on throw/fail/break and friends.
    exc = coin(0.5) ? 0.3 : 0.05;
  }

  void globals_scope(const ModuleDef& m) {
    scope.clear();
    for (const auto& gl : m.globals) scope.push_back({gl.name, gl.type});
  }

  ModuleDef module(Subset s, std::size_t min_globals = 0) {
    subset = s;
    reset_for_program();
    ModuleDef m;
    m.datatypes = b.datatypes;
    std::size_t ng = std::max(min_globals, below(4));
    for (std::size_t i = 0; i < ng; ++i) {
      m.globals.push_back(GlobalDef{"g" + std::to_string(i), type(1), Expr{}, {}});
    }
    std::size_t nf = below(4);
    for (std::size_t i = 0; i < nf; ++i) {
      FunSig f{"f" + std::to_string(i), {}, {}, false};
      for (std::size_t j = below(3); j > 0; --j) f.params.push_back({type(1), fresh("a")});
      f.ret = coin(0.1) ? Type::void_type() : coin(0.5) ? Type::value_type() : type(1);
      f.recursive = s == Subset::All && coin(0.3);
      funs.push_back(std::move(f));
    }
    for (auto& gl : m.globals) {
      globals_scope(m);
      callable = 0;
      gl.init = coin(0.9) ? value_expr(value_of(gl.type, 2)) : expr(2, Mode::Free);
    }
    for (std::size_t i = 0; i < funs.size(); ++i) {
      globals_scope(m);
      for (const auto& p : funs[i].params) scope.push_back({p.name, p.type});
      callable = i;
      self = funs[i].recursive ? std::optional<std::size_t>(i) : std::nullopt;
      self_used = false;
      repeated = true;
      Expr body = expr(b.max_depth, Mode::Bounded);
      repeated = false;
      self.reset();
      m.functions.push_back(FunDef{funs[i].name, funs[i].ret, funs[i].params, std::move(body), {}});
    }
    globals_scope(m);
    callable = funs.size();
    return m;
  }
};

ProgramGen::ProgramGen(GenBudget budget) : budget_(std::move(budget)), rng_(budget_.seed) {}

ModuleDef ProgramGen::module(Subset subset) {
  Impl impl(*this);
  return impl.module(subset);
}

Program ProgramGen::program(Subset subset) {
  Impl impl(*this);
  ModuleDef m = impl.module(subset);
  // A few statements, most of them calls, so function bodies get exercised.
  Block blk;
  for (std::size_t n = 1 + impl.below(3); n > 0; --n) {
    std::optional<Expr> e;
    if (subset == Subset::All && impl.coin(0.6)) e = impl.call(budget_.max_depth, Impl::Mode::Free);
    blk.body.push_back(e ? std::move(*e) : impl.expr(budget_.max_depth, Impl::Mode::Free));
  }
  Expr entry = blk.body.size() == 1 ? std::move(blk.body.front()) : make_expr(std::move(blk));
  return Program{std::move(m), std::move(entry)};
}

Program ProgramGen::cases_program() {
  Impl impl(*this);
  ModuleDef m = impl.module(Subset::All, 1);
  Value v = impl.value(3);
  std::vector<Case> cs;
  std::size_t n = 1 + impl.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    cs.push_back(impl.scoped([&] {
      std::vector<std::string> bound;
      // Patterns abstracted from the scrutinee match, so their bodies run.
      Pattern p = impl.coin(0.5) ? impl.pattern(3, impl.scope_names(), bound, 1)
                                 : impl.abstract(v, 3, bound, 1);
      for (const auto& x : bound) impl.scope.push_back({x, Type::value_type()});
      Expr body;
      if (impl.coin(0.5)) {
        // Effects on globals and bound variables, then failure.
        Block blk;
        for (std::size_t j = 1 + impl.below(3); j > 0; --j) {
          blk.body.push_back(impl.assign(2, Impl::Mode::Free));
        }
        blk.body.push_back(impl.coin(0.8) ? make_expr(FailExpr{}) : impl.expr(2, Impl::Mode::Free));
        body = make_expr(std::move(blk));
      } else {
        body = impl.expr(budget_.max_depth - 1, Impl::Mode::Free);
      }
      return Case{std::move(p), std::move(body)};
    }));
  }
  Expr entry = make_expr(Switch{value_expr(v), std::move(cs)});
  return Program{std::move(m), std::move(entry)};
}

Value ProgramGen::value(int depth) {
  Impl impl(*this);
  return impl.value(depth);
}

Value ProgramGen::value_of(const Type& t, int depth) {
  Impl impl(*this);
  return impl.value_of(t, depth);
}

Pattern ProgramGen::pattern(const Store& store, int depth, bool many_stars) {
  Impl impl(*this);
  std::vector<std::string> refs;
  for (const auto& [x, _] : store) refs.push_back(x);
  std::vector<std::string> bound;
  return impl.pattern(depth, refs, bound, many_stars ? 2 : 1);
}

Pattern ProgramGen::pattern_for(const Value& v, int depth, bool many_stars) {
  Impl impl(*this);
  std::vector<std::string> bound;
  return impl.abstract(v, depth, bound, many_stars ? 2 : 1);
}

Store ProgramGen::store(std::size_t vars, int depth) {
  Impl impl(*this);
  Store out;
  for (std::size_t i = 0; i < vars; ++i) out.emplace("s" + std::to_string(i), impl.value(depth));
  return out;
}

ModuleDef gen_program(const GenBudget& b, Subset subset) {
  ProgramGen g(b);
  return g.module(subset);
}

}  // namespace rascal_light::harness
