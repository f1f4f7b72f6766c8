#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>

#include "catch_amalgamated.hpp"

#include "lqg/enumerate.hpp"
#include "lqg/report.hpp"

namespace lqg {

  namespace {
    struct Run {
      int         status = -1;
      std::string out;
    };

    Run run(std::string const& args) {
      std::string const cmd = std::string(LQG_CLI_PATH) + " " + args + " 2>&1";
      Run               r;
      FILE*             p = popen(cmd.c_str(), "r");
      REQUIRE(p != nullptr);
      char buf[4096];
      while (std::size_t k = std::fread(buf, 1, sizeof(buf), p)) {
        r.out.append(buf, k);
      }
      int const st = pclose(p);
      r.status     = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
      return r;
    }

    std::string sample(std::string const& name) {
      return std::string(LQG_SAMPLES_DIR) + "/" + name;
    }

    bool contains(std::string const& hay, std::string const& needle) {
      return hay.find(needle) != std::string::npos;
    }
  }  // namespace

  TEST_CASE(".lqt parsing", "[cli]") {
    auto const q = parse_lqt(std::string("# comment\n\n3\n1 3 2\n3 2 1\n# inner\n2 1 3\n"));
    REQUIRE(q == fixtures::R3());
    REQUIRE(parse_lqt(format_lqt(fixtures::P4())) == fixtures::P4());
    REQUIRE(read_lqt(sample("C3.lqt")) == fixtures::C3());
    try {
      parse_lqt(std::string("3\n1 2 3\n1 1 3\n2 3 1\n"));
      FAIL("accepted a repeated entry");
    } catch (Error const& e) {
      REQUIRE(e.kind() == ErrorKind::NotLeftQuasigroup);
      REQUIRE(std::string(e.what()) == "NotLeftQuasigroup: row 2");
    }
    for (std::string bad : {"", "x\n", "2\n1 2\n", "2\n1 2\n2 1 1\n", "2\n1 3\n1 2\n"}) {
      REQUIRE_THROWS_AS(parse_lqt(bad), Error);
    }
  }

  TEST_CASE("report round trips", "[cli]") {
    for (auto const& q : {fixtures::P4(), fixtures::R3(), fixtures::C3(), fixtures::Z2()}) {
      auto const r = analyze(q);
      REQUIRE(report_from_json(to_json(r)) == r);
      REQUIRE(report_from_json(nlohmann::ordered_json::parse(to_json(r).dump())) == r);
      REQUIRE(text_to_json(to_text(r)) == to_json(r));
    }
    for (std::size_t n = 1; n <= 3; ++n) {
      for (auto const& q : enumerate_tables({n, TableClass::all, true})) {
        auto const r = analyze(q);
        REQUIRE(report_from_json(to_json(r)) == r);
        REQUIRE(text_to_json(to_text(r)) == to_json(r));
        if (r.identities.is_medial && r.series && r.series->nilpotent_length) {
          REQUIRE(*r.series->nilpotent_length <= 2);
        }
      }
    }
  }

  TEST_CASE("report contents", "[cli]") {
    auto const p4 = analyze(fixtures::P4());
    REQUIRE(p4.cayley_kernel == Blocks{{1, 3}, {2}, {4}});
    REQUIRE(!p4.cayley_kernel_is_congruence);
    REQUIRE(p4.lmlt_order == 8);
    REQUIRE(p4.dis_order == 4);
    auto const r3 = analyze(fixtures::R3());
    REQUIRE(r3.summary == "connected medial latin quandle");
    REQUIRE(r3.series->nilpotent_length == 1);
    REQUIRE(r3.center == Blocks{{1, 2, 3}});
    REQUIRE(r3.quandle_image);
    REQUIRE(r3.quandle_image->f == std::vector<int>{1, 2, 3});
    REQUIRE(r3.spelling);
    REQUIRE(!analyze(fixtures::Z2()).quandle_image);
    auto const j = to_json(r3);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
      keys.push_back(it.key());
    }
    REQUIRE(keys.front() == "order");
    REQUIRE(keys.back() == "skipped");
  }

  TEST_CASE("analyze", "[cli]") {
    auto r = run("analyze " + sample("P4.lqt"));
    REQUIRE(r.status == 0);
    REQUIRE(contains(r.out, "cayley_kernel: [[1,3],[2],[4]]"));
    r = run("analyze " + sample("R3.lqt"));
    REQUIRE(r.status == 0);
    REQUIRE(contains(r.out, "summary: connected medial latin quandle\n"));
    auto const json = run("analyze --json " + sample("R3.lqt"));
    REQUIRE(json.status == 0);
    auto const parsed = nlohmann::ordered_json::parse(json.out);
    REQUIRE(parsed == to_json(analyze(fixtures::R3())));
    REQUIRE(text_to_json(r.out) == parsed);
    r = run("analyze " + sample("bad_row.lqt"));
    REQUIRE(r.status == 1);
    REQUIRE(contains(r.out, "NotLeftQuasigroup: row 2"));
    r = run("analyze /nonexistent.lqt");
    REQUIRE(r.status == 1);
  }

  TEST_CASE("verify", "[cli]") {
    auto r = run("verify medial --max-n 4");
    REQUIRE(r.status == 0);
    REQUIRE(contains(r.out, "PASS [8]"));
    r = run("verify --suite functor --max-n 4");
    REQUIRE(r.status == 0);
    REQUIRE(run("verify spelling --max-n 3").status == 0);
    auto const t0 = std::chrono::steady_clock::now();
    r             = run("verify all --max-n 2");
    auto const dt = std::chrono::steady_clock::now() - t0;
    REQUIRE(dt < std::chrono::seconds(1));
    for (int id = 1; id <= 14; ++id) {
      REQUIRE(contains(r.out, "[" + std::to_string(id) + "]"));
    }
    // the unrestricted orbit connection already fails at order 2; a
    // failing property exits 2 and names the property and the table
    REQUIRE(r.status == 2);
    REQUIRE(contains(r.out, "FAIL [2]"));
    REQUIRE(contains(r.out, "  [2] galois-orbits-all: 2 1|2 1 "));
    r = run("verify galois --max-n 4");
    REQUIRE(r.status == 2);
    REQUIRE(contains(r.out, "PASS [1]"));
    REQUIRE(contains(r.out, "FAIL [2]"));
    REQUIRE(contains(r.out, "PASS [3]"));
    r = run("verify commutator --max-n 4");
    REQUIRE(r.status == 2);
    REQUIRE(contains(r.out, "PASS [5]"));
    REQUIRE(contains(r.out, "FAIL [6]"));
    REQUIRE(contains(r.out, "PASS [7]"));
    REQUIRE(run("verify nonsense").status == 1);
    REQUIRE(run("verify").status == 1);
  }

  TEST_CASE("enumerate and classify", "[cli]") {
    auto r = run("enumerate --n 2 --class all");
    REQUIRE(r.status == 0);
    REQUIRE(r.out == "4\n");
    r = run("enumerate --n 3 --class rack --up-to-iso");
    REQUIRE(r.out == "6\n");
    REQUIRE(run("enumerate --n 5 --class all").status == 1);
    REQUIRE(run("enumerate --n 3 --class loop").status == 1);
    auto const dir = std::filesystem::temp_directory_path() / "lqg-cli-emit";
    std::filesystem::remove_all(dir);
    r = run("enumerate --n 3 --class quandle --up-to-iso --emit " + dir.string());
    REQUIRE(r.status == 0);
    std::size_t files = 0;
    for (auto const& e : std::filesystem::directory_iterator(dir)) {
      REQUIRE(is_quandle(read_lqt(e.path().string())));
      ++files;
    }
    REQUIRE(files == 3);
    std::filesystem::remove_all(dir);
    r = run("classify-medial-racks --n 3");
    REQUIRE(r.status == 0);
    REQUIRE(r.out.substr(0, 2) == "2\n");
    REQUIRE(run("classify-medial-racks --n 13").status == 1);
  }

}  // namespace lqg
