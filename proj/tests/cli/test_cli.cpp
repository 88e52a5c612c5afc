#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#include "omega_trees/trees.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs a shell command line with the CLI binary substituted for "@"; captures
// stdout, or stderr when `errors` is set.
Run run(const std::string& line, bool errors = false) {
  std::string cmd;
  for (char c : line) cmd += c == '@' ? std::string("\"") + OMEGA_TREES_CLI + "\"" : std::string(1, c);
  cmd += errors ? " 2>&1 1>/dev/null" : " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

json run_json(const std::string& line) {
  Run r = run(line);
  REQUIRE(r.status == 0);
  return json::parse(r.out);
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "omega_trees_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const json& j) {
  auto path = scratch() / name;
  std::ofstream(path) << j.dump();
  return path.string();
}

json no_eleven() {
  return {{"states", {"a", "b"}},
          {"initial", "a"},
          {"edges",
           {{{"from", "a"}, {"label", 0}, {"to", "a"}},
            {{"from", "a"}, {"label", 1}, {"to", "b"}},
            {{"from", "b"}, {"label", 0}, {"to", "a"}}}}};
}

}  // namespace

TEST_CASE("documented invocations") {
  CHECK(run_json("@ seq encode --seq 2,1") == json{{"code", 45}});
  CHECK(run_json("@ seq decode --code 45") == json{{"seq", {2, 1}}});
  CHECK(run_json("@ kb cmp --u 1,2 --v 1") == json{{"leq", true}});
  std::string a = write_file("no11.json", no_eleven());
  CHECK(run_json("@ cb measure --automaton " + a + " --depth 20") ==
        json{{"upper", {17711, 1048576}}, {"positive", false}});
}

TEST_CASE("exit codes separate malformed input from contract violations") {
  Run missing = run("@ seq encode");
  CHECK(missing.status == 1);
  CHECK(run("@ seq decode --code 0").status == 1);
  CHECK(run("@ tree member --tree /nonexistent.json --node 1").status == 1);
  CHECK(run("@ seq encode --seq 1,x").status == 1);
  std::string a = write_file("no11.json", no_eleven());
  CHECK(run("@ cb split --automaton " + a).status == 2);
  Run err = run("@ cb split --automaton " + a, true);
  json e = json::parse(err.out);
  CHECK(e.at("code") == "NoPositiveMeasure");
  CHECK(e.contains("message"));
}

TEST_CASE("product pipe round trip agrees with the library") {
  json t = {{"finite", {json::array(), {1}, {1, 2}}}};
  json s = {{"finite", {json::array(), {3}, {4}}}};
  std::string tp = write_file("t.json", t), sp = write_file("s.json", s);
  omt::Tree lib = omt::product(omt::tree_from_json(t), omt::tree_from_json(s));
  for (const omt::FinSeq& w :
       std::vector<omt::FinSeq>{{24, 5}, {24}, {}, {5}, {24, 6}, {12}, {25, 5}}) {
    std::string node;
    for (std::size_t i = 0; i < w.size(); ++i) node += (i ? "," : "") + std::to_string(w[i]);
    json r = run_json("@ tree product " + tp + " " + sp + " | @ tree member --tree - --node '" +
                      node + "'");
    CHECK(r.at("member").get<bool>() == lib.contains(w));
  }
}

TEST_CASE("outputs are byte-identical across runs") {
  std::string a = write_file("no11.json", no_eleven());
  std::string t = write_file("t2.json", {{"finite", {json::array(), {0}, {1}, {0, 1}}}});
  for (const std::string& line : std::vector<std::string>{
           "@ seq encode --seq 3,1,4",
           "@ kb sort --tree " + t,
           "@ cb classify --automaton " + a,
           "@ cb kernel --automaton " + a + " --dot",
           "@ cb measure --automaton " + a + " --depth 30 --all",
           "@ build sg | @ tree profile --tree - --depth 8",
           "@ tree att --tree " + t,
           "@ space rho --tree " + t + " --x 0,1 --preview 6",
           "@ adm brute --lin '[0,1,2]' --wo '[5,7]'",
           "@ build chain --order greater --cap 5 | @ tree nodes --tree - --depth 3",
       }) {
    Run first = run(line), second = run(line);
    CHECK(first.status == 0);
    CHECK_FALSE(first.out.empty());
    CHECK(first.out == second.out);
  }
}

TEST_CASE("space and admissibility verbs") {
  std::string t = write_file("t3.json", {{"finite", {json::array(), {1}, {1, 2}}}});
  CHECK(run_json("@ space dist --tree " + t + " --x 1,2 --y 1") == json{{"exact", {1, 2}}});
  CHECK(run_json("@ space presentation --tree " + t + " --s 1") == json{{"node", json::array()}});
  CHECK(run_json("@ adm solve --lin '[0,1,2]' --wo '[5,7]'") ==
        json{{"map", {{0, 5}, {1, 7}}}});
  json check = run_json("@ adm check --lin '[0,1,2]' --wo '[5,7]' --map '[[0,7]]'");
  CHECK(check.at("admissible") == false);
  CHECK(check.at("failed_condition") == 4);
}
