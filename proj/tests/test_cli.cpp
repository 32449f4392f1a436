#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "support.h"

using namespace rl_test;

namespace {

struct Output {
  int code;
  std::string out;
};

Output cli(const std::string& args) {
  std::string cmd = std::string(RL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 256> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string prog(const char* name) { return " run " + program_path(name); }

}  // namespace

TEST_CASE("cli runs the example programs") {
  auto r = cli("--call 'simplify(plus(intlit(0), intlit(5)))'" + prog("simplify.rsl"));
  CHECK(r.code == 0);
  CHECK(r.out == "intlit(5)\n");

  r = cli("--call 'prod([1, 2, 0, 3])'" + prog("prod.rsl"));
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");

  r = cli("--fuel 10000 --call 'infincrement(succ(zero()))'" + prog("infincrement.rsl"));
  CHECK(r.code == 4);
  CHECK(r.out == "timeout\n");
}

TEST_CASE("cli evaluates snippets") {
  auto r = cli("--eval '1+2'");
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  r = cli("--eval '(1:2)[3]'");
  CHECK(r.code == 2);
  CHECK(r.out == "throw nokey(3)\n");

  CHECK(cli("--eval 'x'").code == 5);
  CHECK(cli("--eval '1 +'").code == 5);
  CHECK(cli("--eval '1 / 0'").code == 3);
  CHECK(cli("--eval 'fail'").code == 3);
}

TEST_CASE("cli exit codes for usage problems") {
  CHECK(cli("").code == 1);
  CHECK(cli("--eval 1 run /nonexistent/file.rsl").code == 1);
  CHECK(cli("--call 1" + prog("prod.rsl")).code == 1);
}

TEST_CASE("cli tree output and globals") {
  auto r = cli("--format tree --eval '[1]'");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"status\":\"success\"") != std::string::npos);
  CHECK(r.out.find("\"version\":1") != std::string::npos);

  r = cli("--print-globals --call 'fix()'" + prog("fixpoint.rsl"));
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");
}
