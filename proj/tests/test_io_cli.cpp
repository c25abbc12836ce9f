#include <doctest.h>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sa/cli.hpp"
#include "sa/constructions.hpp"
#include "sa/error.hpp"
#include "sa/fn_algebra.hpp"
#include "sa/io.hpp"
#include "support/algebras.hpp"

using namespace sa;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SA_FIXTURE_DIR;

fs::path tmp_dir() {
  const fs::path dir = fs::temp_directory_path() / "sa_io_cli_tests";
  fs::create_directories(dir);
  return dir;
}

// Expect `fn` to raise a parse_error whose message contains every fragment.
template <typename Fn>
void expect_parse_error(Fn fn, const std::vector<std::string>& fragments) {
  try {
    fn();
    FAIL_CHECK("no parse_error raised");
  } catch (const parse_error& e) {
    const std::string what = e.what();
    for (const std::string& frag : fragments) {
      INFO("message: ", what, " fragment: ", frag);
      CHECK(what.find(frag) != std::string::npos);
    }
  }
}

struct CaptureStreams {
  std::ostringstream out, err;
  std::streambuf* old_out;
  std::streambuf* old_err;
  CaptureStreams()
      : old_out(std::cout.rdbuf(out.rdbuf())), old_err(std::cerr.rdbuf(err.rdbuf())) {}
  ~CaptureStreams() {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
  }
};

int cli(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::vector<std::string> full;
  full.push_back("sa");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  CaptureStreams capture;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  if (stdout_text) *stdout_text = capture.out.str();
  return rc;
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

FiniteSA mutated_f12() {
  const FiniteSA f12 = as_finite_sa(full_fsa(1, 2));
  std::vector<Cell> t = f12.table(0);
  t[1 * 4 + 2] = 0;  // negation applied to the variable forgets its argument
  return FiniteSA(1, 4, {2}, {t});
}

}  // namespace

TEST_CASE("canonical serialization is bit-stable") {
  const FiniteSA tiny(1, 1, {0}, {{0}});
  CHECK(dump_canonical(finite_sa_to_json(tiny)) == R"({
  "dimension": 1,
  "size": 1,
  "v": [
    0
  ],
  "star": [
    [
      [
        0
      ]
    ]
  ]
}
)");

  CHECK(dump_canonical(fn_algebra_to_json(full_fsa(1, 1))) == R"({
  "dimension": 1,
  "base_size": 1,
  "elements": [
    [
      0
    ]
  ],
  "full": true
}
)");

  const FiniteSA f12 = handmade::f12();
  const std::string text = dump_canonical(finite_sa_to_json(f12));
  CHECK(text.find("\"dimension\"") < text.find("\"size\""));
  CHECK(text.find("\"size\"") < text.find("\"v\""));
  CHECK(text.find("\"v\"") < text.find("\"star\""));
  CHECK(text.back() == '\n');
  CHECK(finite_sa_from_json(finite_sa_to_json(f12)) == f12);

  const FnAlgebra fn = full_fsa(2, 2);
  const FnAlgebra back = fn_algebra_from_json(fn_algebra_to_json(fn));
  CHECK(back.dimension == fn.dimension);
  CHECK(back.base_size == fn.base_size);
  CHECK(back.elements == fn.elements);
  CHECK(back.full == fn.full);
}

TEST_CASE("parse failures name the file and position") {
  const fs::path dir = tmp_dir();
  const FiniteSA f12 = handmade::f12();

  const auto write_tampered = [&](const char* name, auto tamper) {
    json j = finite_sa_to_json(f12);
    tamper(j);
    const fs::path path = dir / name;
    write_file(path, dump_canonical(j));
    return path;
  };

  const fs::path huge = write_tampered("cell_too_big.json",
                                       [](json& j) { j["star"][0][1][2] = 70000; });
  expect_parse_error([&] { load_finite_sa(huge); },
                     {huge.string(), "\"star\" entry 0, row 1, column 2"});

  const fs::path stray = write_tampered("cell_off_carrier.json",
                                        [](json& j) { j["star"][0][1][2] = 5; });
  expect_parse_error([&] { load_finite_sa(stray); }, {stray.string()});

  const fs::path short_row = write_tampered("short_row.json", [](json& j) {
    j["star"][0][1] = json::array({0, 2, 1});
  });
  expect_parse_error([&] { load_finite_sa(short_row); },
                     {"\"star\" entry 0, row 1", "expected 4 entries, found 3"});

  const fs::path keyless = write_tampered("no_v.json", [](json& j) { j.erase("v"); });
  expect_parse_error([&] { load_finite_sa(keyless); }, {"lacks key \"v\""});

  const fs::path garbage = dir / "garbage.json";
  write_file(garbage, "{ not json\n");
  expect_parse_error([&] { load_finite_sa(garbage); }, {garbage.string()});

  const fs::path neither = dir / "neither.json";
  write_file(neither, "{\n  \"foo\": 1\n}\n");
  expect_parse_error([&] { load_algebra(neither); }, {"\"size\"", "\"base_size\""});

  json jfn = fn_algebra_to_json(full_fsa(1, 2));
  jfn["elements"][1] = json::array({1});
  const fs::path short_el = dir / "short_element.json";
  write_file(short_el, dump_canonical(jfn));
  expect_parse_error([&] { load_fn_algebra(short_el); },
                     {"\"elements\" entry 1", "expected 2 entries, found 1"});

  json jfn2 = fn_algebra_to_json(full_fsa(1, 2));
  jfn2["elements"][0][1] = 2;
  const fs::path big_val = dir / "value_off_base.json";
  write_file(big_val, dump_canonical(jfn2));
  expect_parse_error([&] { load_fn_algebra(big_val); }, {"\"elements\" entry 0, rank 1"});

  CHECK_THROWS_AS(load_finite_sa(dir / "does_not_exist.json"), parse_error);
}

TEST_CASE("one entry point loads either format") {
  const fs::path dir = tmp_dir();
  const fs::path finite_path = dir / "dispatch_finite.json";
  const fs::path fn_path = dir / "dispatch_fn.json";
  save_finite_sa(handmade::f12(), finite_path);
  save_fn_algebra(full_fsa(1, 2), fn_path);

  const AnyAlgebra a = load_algebra(finite_path);
  REQUIRE(std::holds_alternative<FiniteSA>(a));
  CHECK(std::get<FiniteSA>(a) == handmade::f12());

  const AnyAlgebra b = load_algebra(fn_path);
  REQUIRE(std::holds_alternative<FnAlgebra>(b));
  CHECK(std::get<FnAlgebra>(b).elements == full_fsa(1, 2).elements);
}

TEST_CASE("roundtrip reproduces canonical bytes and normalizes the rest") {
  const fs::path dir = tmp_dir();
  const fs::path canonical = dir / "roundtrip_in.json";
  const fs::path out = dir / "roundtrip_out.json";
  save_finite_sa(handmade::f12(), canonical);
  io_roundtrip(canonical, out);
  CHECK(read_file(out) == read_file(canonical));

  // Same content, shuffled keys and no whitespace: output is canonical.
  json j = finite_sa_to_json(handmade::f12());
  json shuffled;
  shuffled["star"] = j["star"];
  shuffled["v"] = j["v"];
  shuffled["size"] = j["size"];
  shuffled["dimension"] = j["dimension"];
  const fs::path messy = dir / "roundtrip_messy.json";
  write_file(messy, shuffled.dump());
  io_roundtrip(messy, out);
  CHECK(read_file(out) == read_file(canonical));
}

TEST_CASE("bundled fixtures match their generators") {
  const FiniteSA f12 = as_finite_sa(full_fsa(1, 2));
  const auto finite_bytes = [](const FiniteSA& a) {
    return dump_canonical(finite_sa_to_json(a));
  };
  const auto fn_bytes = [](const FnAlgebra& a) {
    return dump_canonical(fn_algebra_to_json(a));
  };

  CHECK(read_file(kFixtures / "full_1_2.json") == finite_bytes(f12));
  CHECK(read_file(kFixtures / "full_2_2.json") ==
        finite_bytes(as_finite_sa(full_fsa(2, 2))));
  CHECK(read_file(kFixtures / "sub3_1_2.json") ==
        finite_bytes(generate_subalgebra(f12, {0, 3}).algebra));
  CHECK(read_file(kFixtures / "mutated_1_2.json") == finite_bytes(mutated_f12()));
  CHECK(read_file(kFixtures / "pad_1_2_dim2.json") ==
        finite_bytes(pad_algebra(f12, 2, {0})));
  CHECK(read_file(kFixtures / "fn_full_1_2.json") == fn_bytes(full_fsa(1, 2)));
  CHECK(read_file(kFixtures / "fn_full_2_2.json") == fn_bytes(full_fsa(2, 2)));
}

TEST_CASE("command exit codes distinguish failure from misuse") {
  CHECK(cli({"check", fixture("full_1_2.json")}) == 0);
  CHECK(cli({"check", fixture("sub3_1_2.json")}) == 0);
  CHECK(cli({"check", fixture("mutated_1_2.json")}) == 1);
  CHECK(cli({"check", fixture("pad_1_2_dim2.json")}) == 1);
  CHECK(cli({"check", fixture("missing.json")}) == 2);

  std::string text;
  CHECK(cli({"--format", "json", "check", fixture("mutated_1_2.json")}, &text) == 1);
  const json report = json::parse(text);
  CHECK(report["holds"] == false);
  REQUIRE(!report["violations"].empty());
  CHECK(report["violations"][0]["axiom"] == 1);

  // Function-algebra inputs are tabulated on load, within the budget.
  CHECK(cli({"check", fixture("fn_full_2_2.json")}) == 0);
  CHECK(cli({"--budget", "8", "check", fixture("fn_full_2_2.json")}) == 2);

  CHECK(cli({"subst", fixture("full_1_2.json"), "--s", "0", "--gamma", "0", "--a", "1"},
            &text) == 0);
  CHECK(text == "3\n");
  CHECK(cli({"subst", fixture("full_1_2.json"), "--s", "9", "--gamma", "0", "--a", "1"}) == 2);

  CHECK(cli({"delta", fixture("full_1_2.json"), "--elements", "1"}, &text) == 0);
  CHECK(text == "1: {0}\n");
  CHECK(cli({"zero-set", fixture("full_1_2.json")}, &text) == 0);
  CHECK(text == "0 3\n");

  CHECK(cli({"laws", fixture("full_1_2.json")}) == 0);
  CHECK(cli({"laws", fixture("mutated_1_2.json")}) == 2);
  const int forced = cli({"laws", fixture("mutated_1_2.json"), "--force"});
  CHECK((forced == 0 || forced == 1));

  CHECK(cli({"gamma-hom", fixture("full_1_2.json"), "--gamma", "0"}) == 0);

  CHECK(cli({"distinguished", fixture("full_1_2.json")}) == 0);
  CHECK(cli({"distinguished", fixture("full_1_2.json"), "--strong"}) == 0);

  CHECK(cli({"embed", fixture("sub3_1_2.json"), fixture("full_1_2.json")}) == 0);
  CHECK(cli({"embed", fixture("full_1_2.json"), fixture("sub3_1_2.json")}) == 1);
  CHECK(cli({"embed", fixture("full_1_2.json"), fixture("full_2_2.json")}) == 2);

  CHECK(cli({"represent", fixture("full_1_2.json"), "--max-base", "2"}) == 0);

  CHECK(cli({"neat-embed", fixture("full_1_2.json"), fixture("full_2_2.json"),
             "--beta", "1"}) == 0);

  CHECK(cli({}) == 2);
  CHECK(cli({"frobnicate"}) == 2);
  CHECK(cli({"check"}) == 2);
  CHECK(cli({"--help"}) == 0);
}

TEST_CASE("command outputs byte-match the library constructions") {
  const fs::path dir = tmp_dir();
  const auto path = [&](const char* name) { return (dir / name).string(); };

  CHECK(cli({"sub", fixture("full_1_2.json"), "--generators", "0,3",
             "-o", path("cli_sub.json"), "--map", path("cli_sub_map.json")}) == 0);
  CHECK(read_file(path("cli_sub.json")) == read_file(kFixtures / "sub3_1_2.json"));
  CHECK(json::parse(read_file(path("cli_sub_map.json")))["map"] ==
        json::array({0, 2, 3}));

  CHECK(cli({"full", "--dim", "1", "--base", "2", "--tables",
             "-o", path("cli_full.json")}) == 0);
  CHECK(read_file(path("cli_full.json")) == read_file(kFixtures / "full_1_2.json"));
  CHECK(cli({"full", "--dim", "1", "--base", "2", "-o", path("cli_fn_full.json")}) == 0);
  CHECK(read_file(path("cli_fn_full.json")) == read_file(kFixtures / "fn_full_1_2.json"));

  CHECK(cli({"pad", fixture("full_1_2.json"), "--gamma", "2", "--v", "0",
             "-o", path("cli_pad.json")}) == 0);
  CHECK(read_file(path("cli_pad.json")) == read_file(kFixtures / "pad_1_2_dim2.json"));

  CHECK(cli({"reduct", fixture("pad_1_2_dim2.json"), "--beta", "1",
             "-o", path("cli_reduct.json"), "--map", path("cli_reduct_map.json")}) == 0);
  CHECK(read_file(path("cli_reduct.json")) == read_file(kFixtures / "full_1_2.json"));
  CHECK(json::parse(read_file(path("cli_reduct_map.json")))["map"] ==
        json::array({0, 1, 2, 3}));

  CHECK(cli({"neat", fixture("full_2_2.json"), "--beta", "1",
             "-o", path("cli_neat.json"), "--map", path("cli_neat_map.json")}) == 0);
  CHECK(read_file(path("cli_neat.json")) == read_file(kFixtures / "full_1_2.json"));
  CHECK(json::parse(read_file(path("cli_neat_map.json")))["map"] ==
        json::array({0, 5, 10, 15}));

  // The canonical zero-set image of the full algebra is the full algebra.
  CHECK(cli({"represent-z", fixture("full_1_2.json"), "-o", path("cli_repz.json"),
             "--map", path("cli_repz_map.json")}) == 0);
  CHECK(read_file(path("cli_repz.json")) == read_file(kFixtures / "fn_full_1_2.json"));
  CHECK(json::parse(read_file(path("cli_repz_map.json")))["map"] ==
        json::array({0, 1, 2, 3}));

  CHECK(cli({"dilate", fixture("fn_full_1_2.json"), "--extra", "1",
             "-o", path("cli_dilate.json"), "--map", path("cli_dilate_map.json")}) == 0);
  const FnAlgebra dilated = load_fn_algebra(path("cli_dilate.json"));
  CHECK(dilated.dimension == 2);
  CHECK(dilated.elements.size() == 4);
  CHECK_FALSE(dilated.full);
  CHECK(json::parse(read_file(path("cli_dilate_map.json")))["map"] ==
        json::array({0, 5, 10, 15}));
}
