#include "rascal_light/harness.h"
#include "rascal_light/parser.h"

namespace rascal_light::harness {

namespace {

struct Source {
  const char* module;
  const char* entry;
  bool outgrows_memory = false;
};

constexpr const char* kNat = "data Nat = zero() | succ(Nat pred);\n";

const Source kCorpus[] = {
    // Divergence through every repeating construct.
    {"int loop(int n) = loop(n + 1);", "loop(0)"},
    {"", "local int i in i = 0; while (true()) i = i + 1 end"},
    {"", "local int i in i = 0; solve (i) i = i + 1; i end"},
    {kNat, "top-down visit (succ(zero())) { case succ(m) => succ(succ(m)) }"},
    {kNat, "outermost visit (zero()) { case x => succ(x) }"},
    {kNat, "innermost visit (succ(zero())) { case succ(m) => succ(succ(m)) }"},
    {"int twice(int n) = twice(n) + twice(n);", "twice(1)"},
    {"", "local list<int> xs in xs = [1]; while (true()) xs = xs + xs end", true},
    {"", "local value x in x = 0; while (true()) x = [x, x] end", true},
    {"", "local int x in x = 2; while (true()) x = x * x end", true},
    // Deep but finite recursion.
    {"int down(int n) = if n <= 0 then 0 else down(n - 1) + 1;", "down(5000)"},
    {"list<int> build(int n) = if n <= 0 then [] else [n] + build(n - 1);", "build(300)"},
    // Exceptional results in every position.
    {"", "[1, throw 2, 3]"},
    {"", "(1: fail)"},
    {"", "{break}"},
    {"", "continue + 1"},
    {"", "-(return 3)"},
    {"", "if throw 1 then 2 else 3"},
    {"", "switch (1) { case 1 => fail case x => x }"},
    {"", "switch (1) { case 2 => 0 }"},
    {"", "for (x <- [1, 2, 3]) if x == 2 then break else throw x"},
    {"", "for (x <- 5) x"},
    {"", "for ([*xs, *ys] := [1, 2, 3]) if xs == [1] then continue else fail"},
    {"", "try throw 1 catch e => e + 1"},
    {"", "try throw 1 finally fail"},
    {"", "try fail finally throw 2"},
    {"", "try break finally 0"},
    {"", "local int x in try x = 1 finally x = 2; x end"},
    {"", "bottom-up visit ([1, 2, 3]) { case 2 => throw 2 }"},
    {"", "top-down-break visit ([[1], [2]]) { case [x] => x }"},
    {"", "bottom-up-break visit ((1: [2])) { case 2 => 3 }"},
    {"data P = p(int x);", "bottom-up visit (p(1)) { case 1 => \"s\" }"},
    {"", "bottom-up visit ({1, 2}) { case 1 => 2 }"},
    {"", "bottom-up visit ((1: 2, 3: 4)) { case 1 => 3 }"},
    {"", "innermost visit ([3, 2]) { case [x, y] => if x > y then [y, x] else fail }"},
    // Stuck premises and operator errors.
    {"", "local int x in x end"},
    {"", "local int x in x = \"s\" end"},
    {"", "1 / 0"},
    {"", "1 % 0"},
    {"", "\"a\" - 1"},
    {"", "-{}"},
    {"", "!1"},
    {"", "1 && true()"},
    {"", "1 in 2"},
    {"", "(1: 2)[3]"},
    {"", "5[1 = 2]"},
    {"", "[1][0]"},
    {"", "if 1 then 2 else 3"},
    {"", "while (1) 2"},
    {"", "local int x in solve (x) 1 end"},
    {"int f(int x) = x;", "f(\"s\")"},
    {"int f() = \"s\";", "f()"},
    {"int f() = fail;", "f()"},
    {"int f() = break;", "f()"},
    {"int f() = return \"s\";", "f()"},
    {"void f() = 1;", "f()"},
    {"global int g = 1; int setg(int x) = g = x;", "setg(2) + g"},
    // Patterns that enumerate many candidates.
    {"", "for ({*xs, *ys} := {1, 2, 3, 4, 5, 6}) if xs == {} then fail else 0"},
    {"", "switch ([1, 1, 1]) { case [*xs, x, *ys] => if x == 1 then fail else 0 }"},
    {"", "switch ((1: 2)) { case /int x : 2 => x }"},
    {"", "switch (1) { case !1 => 0 case !2 => 1 }"},
    {"", "local value ys in ys = [1]; switch ([1, 2]) { case [*ys, z] => z } end"},
    // Nesting that stresses the host stack.
    {"", "[[[[[[[[[[[[[[[[[[[[[[[[[[[[[1]]]]]]]]]]]]]]]]]]]]]]]]]]]]]"},
    {"value deep(int n) = if n <= 0 then 0 else [deep(n - 1)];",
     "bottom-up visit (deep(400)) { case [x] => x }"},
};

}  // namespace

std::vector<CorpusProgram> adversarial_corpus() {
  std::vector<CorpusProgram> out;
  for (const auto& s : kCorpus) {
    ModuleDef m = parse_module(s.module);
    Expr e = parse_expr(s.entry, m);
    out.push_back({Program{std::move(m), std::move(e)}, s.outgrows_memory});
  }
  return out;
}

}  // namespace rascal_light::harness
