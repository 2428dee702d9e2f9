#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hwb/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hwb::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hwb_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("run") {
  auto r = call({"run", "--program", "INC INC INC OUT END", "--program-format", "tokens", "--fuel", "100"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"kind\":\"halted\",\"output\":\"3\",\"steps\":5}\n");

  r = call({"run", "--program", "110000", "--program-format", "bits"});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(r.err.find("unbalanced-loop") != std::string::npos);

  r = call({"--fuel", "100", "run", "--program", "010110111000"});
  CHECK(r.out == "{\"kind\":\"out-of-fuel\",\"output\":\"\",\"steps\":100}\n");
}

TEST_CASE("oracle") {
  auto r = call({"oracle", "--program", "INC LOOP_OPEN LOOP_CLOSE END", "--program-format", "tokens"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"cycle_step\":3,\"kind\":\"never-halts\",\"output\":\"\",\"steps\":3}\n");
  CHECK(call({"oracle"}).code == 2);
}

TEST_CASE("usage errors exit 2 with usage on stderr") {
  auto r = call({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(call({"run", "--program", "000", "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"run"}).code == 2);
  CHECK(call({"--format", "xml", "run", "--program", "000"}).code == 2);
  CHECK(call({"--format", "csv", "run", "--program", "000"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("omega payloads") {
  auto r = call({"omega", "--max-tokens", "3", "--stages", "6", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"certified_bits\":\"\",\"lower\":\"65/256\",\"max_tokens\":3,\"stage\":6,\"tail_bound\":\"343/512\","
        "\"undecided\":\"0/1\",\"upper\":\"473/512\"}\n");

  r = call({"omega", "--max-tokens", "4", "--stages", "6", "--tape", "bounded"});
  CHECK(r.out.find("\"lower\":\"589/2048\"") != std::string::npos);

  r = call({"omega", "--max-tokens", "2", "--stages", "2", "--events", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("index,bits,tokens,steps,output,stage\n1,000,END,1,,1\n"));

  CHECK(call({"omega", "--stages", "3"}).code == 2);
  CHECK(call({"omega", "--max-tokens", "2", "--stages", "40"}).code == 3);
  CHECK(call({"omega", "--max-tokens", "4", "--stages", "9", "--step-budget", "1000"}).code == 4);
}

TEST_CASE("omega --jobs and resume do not change a byte") {
  const auto base = call({"omega", "--max-tokens", "4", "--stages", "7", "--events"});
  REQUIRE(base.code == 0);
  CHECK(call({"omega", "--max-tokens", "4", "--stages", "7", "--events", "--jobs", "4"}).out == base.out);

  const auto ck = scratch("resume.json");
  REQUIRE(call({"omega", "--max-tokens", "4", "--stages", "3", "--checkpoint", ck.string()}).code == 0);
  CHECK(call({"omega", "--resume", ck.string(), "--stages", "7", "--events"}).out == base.out);
  CHECK(call({"omega", "--resume", ck.string(), "--stages", "7", "--max-tokens", "5"}).code == 3);

  write(ck, "{\"version\": 1, \"stage\"");
  CHECK(call({"omega", "--resume", ck.string(), "--stages", "7"}).code == 3);
  CHECK(call({"omega", "--resume", scratch("missing.json").string(), "--stages", "7"}).code == 3);
}

TEST_CASE("enumerate") {
  auto r = call({"enumerate", "--max-tokens", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with(R"([{"bits":"0","index":1,"invalid_reason":"not-multiple-of-3","tokens":"","valid":false})"));
  CHECK(r.out.find(R"({"bits":"000","index":7,"tokens":"END","valid":true})") != std::string::npos);

  r = call({"enumerate", "--max-tokens", "2", "--valid-only", "--format", "csv"});
  CHECK(r.out == "index,bits,tokens,valid,invalid_reason\n1,000,END,true,\n2,001000,OUT END,true,\n"
                 "3,010000,INC END,true,\n4,011000,DEC END,true,\n5,100000,RIGHT END,true,\n"
                 "6,101000,LEFT END,true,\n");
}

TEST_CASE("universe round trip through oracle and decode") {
  const auto path = scratch("universe.json");
  auto r = call({"oracle", "--max-tokens", "4", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"omega\":\"589/2048\",\"programs\":172}\n");

  // 589/2048 = 0.01001001101 in binary
  r = call({"decode", "--universe", path.string(), "--omega-prefix", "010010011010", "--program",
            "INC LOOP_OPEN LOOP_CLOSE END", "--program-format", "tokens"});
  CHECK(r.out == "{\"verdict\":\"never-halts\"}\n");
  r = call({"decode", "--universe", path.string(), "--omega-prefix", "010", "--program", "010110111000"});
  CHECK(r.out == "{\"verdict\":\"prefix-insufficient\"}\n");
  r = call({"decode", "--universe", path.string(), "--omega-prefix", "001", "--program", "000"});
  CHECK(r.code == 3);
}

TEST_CASE("theorem-stream") {
  auto r = call({"theorem-stream", "--program", "DEC LOOP_OPEN LOOP_CLOSE END", "--program-format", "tokens",
                 "--max-tokens", "4"});
  CHECK(r.out == "{\"examined\":110,\"verdict\":\"never-halts\"}\n");
  r = call({"theorem-stream", "--program", "000000", "--budget", "3"});
  CHECK(r.code == 3);
  r = call({"theorem-stream", "--program", "011110111000", "--budget", "3"});
  CHECK(r.out == "{\"examined\":3,\"verdict\":\"budget-exhausted\"}\n");
}

TEST_CASE("diagonal, cover, borel") {
  const auto streams = scratch("streams.json");
  write(streams, R"({"version":1,"streams":[{"kind":"digits","value":"1"},{"kind":"digits","value":"25"},
                    {"kind":"digits","value":"7"}]})");
  auto r = call({"cover", "--epsilon", "1", "--streams", streams.string(), "--count", "3"});
  CHECK(r.out ==
        "{\"epsilon\":\"1/1\",\"intervals\":[{\"hi\":\"3/5\",\"lo\":\"1/10\"},{\"hi\":\"9/20\",\"lo\":\"1/5\"},"
        "{\"hi\":\"33/40\",\"lo\":\"7/10\"}],\"total_length\":\"7/8\"}\n");

  const auto threes = scratch("threes.json");
  write(threes, R"([{"kind":"constant","digit":3},{"kind":"constant","digit":3},{"kind":"constant","digit":3},
                   {"kind":"constant","digit":3}])");
  r = call({"diagonal", "cantor", "--streams", threes.string(), "--digits", "4"});
  CHECK(r.out == "{\"digits\":\"4444\",\"provisional\":[]}\n");

  r = call({"diagonal", "turing", "--digits", "7", "--oracle", "bounded"});
  CHECK(r.out == "{\"digits\":\"3333333\",\"provisional\":[]}\n");
  CHECK(call({"diagonal"}).code == 2);

  CHECK(call({"borel", "encode", "--answers", "101"}).out == "{\"value\":\"5/8\"}\n");
  CHECK(call({"borel", "ask", "--value", "5/8", "--index", "2"}).out == "{\"answer\":\"no\",\"index\":2}\n");
  CHECK(call({"borel", "ask", "--value", "1/1", "--index", "2"}).code == 3);
}

TEST_CASE("complexity") {
  auto r = call({"complexity", "--target", "3", "--max-tokens", "5", "--format", "json"});
  CHECK(r.out ==
        "{\"bound_bits\":15,\"method\":\"exhaustive-minimal\",\"search_exhausted_through\":4,\"target\":\"3\","
        "\"witness\":{\"bits\":\"010010010001000\",\"tokens\":\"INC INC INC OUT END\"}}\n");
  r = call({"complexity", "--target", "0100", "--max-tokens", "5", "--probe"});
  CHECK(r.out ==
        "{\"bits\":\"0100\",\"consistent_with_incompressibility\":true,\"exhausted_through\":5,"
        "\"literal_bits\":45,\"shortest_found_bits\":null}\n");
}
