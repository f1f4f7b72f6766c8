// Command-line front end:
//
//   lqg analyze <file> [--json]
//   lqg verify [--suite] <name> [--max-n K]
//   lqg enumerate --n K --class C [--up-to-iso] [--emit DIR]
//   lqg classify-medial-racks --n K
//
// Exit codes: 0 success, 1 input error, 2 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "lqg/lqg.hpp"

namespace {

  constexpr int kExitOk     = 0;
  constexpr int kExitInput  = 1;
  constexpr int kExitVerify = 2;

  int run_analyze(std::string const& path, bool json) {
    lqg::AnalysisReport const r = lqg::analyze(lqg::read_lqt(path));
    if (json) {
      std::cout << lqg::to_json(r).dump(2) << '\n';
    } else {
      std::cout << lqg::to_text(r);
    }
    return kExitOk;
  }

  int run_verify(std::string const& suite, std::optional<std::size_t> max_n) {
    auto const results = lqg::run_suite(suite, max_n);
    bool       ok      = true;
    for (auto const& r : results) {
      ok = ok && r.pass();
      std::cout << (r.pass() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " ("
                << r.instances << " instances, " << r.checks << " checks)";
      if (!r.note.empty()) {
        std::cout << ": " << r.note;
      }
      std::cout << '\n';
      for (auto const& f : r.failures) {
        std::cout << "  [" << r.id << "] " << f << '\n';
      }
    }
    return ok ? kExitOk : kExitVerify;
  }

  int run_enumerate(std::size_t                n,
                    std::string const&         cls,
                    bool                       up_to_iso,
                    std::optional<std::string> emit) {
    lqg::EnumSpec spec{n, lqg::table_class_from_string(cls), up_to_iso};
    lqg::check_spec(spec);
    auto const tables = lqg::enumerate_tables(spec);
    std::cout << tables.size() << '\n';
    if (emit) {
      std::filesystem::create_directories(*emit);
      std::size_t const width = std::to_string(tables.size()).size();
      for (std::size_t i = 0; i < tables.size(); ++i) {
        std::string num = std::to_string(i + 1);
        num.insert(0, width - num.size(), '0');
        std::filesystem::path const file
            = std::filesystem::path(*emit) / (cls + "-" + std::to_string(n) + "-" + num + ".lqt");
        std::ofstream out(file);
        out << "# " << cls << " table of order " << n << (up_to_iso ? ", one per class" : "")
            << '\n'
            << lqg::format_lqt(tables[i]);
        if (!out) {
          std::cerr << "cannot write " << file << '\n';
          return kExitInput;
        }
      }
    }
    return kExitOk;
  }

  int run_classify(std::size_t n) {
    auto const found = lqg::connected_medial_rack_constructions(n);
    std::cout << found.size() << '\n';
    for (auto const& c : found) {
      std::cout << "# A = " << c.group.to_string() << ", f =";
      for (int x : c.f) {
        std::cout << ' ' << x;
      }
      std::cout << ", times (Z_" << c.cyclic << ", +1)\n" << lqg::format_lqt(c.rack);
    }
    return kExitOk;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite left quasigroups: analysis, verification and enumeration"};
  app.require_subcommand(1);

  std::string analyze_path;
  bool        analyze_json = false;
  auto*       analyze      = app.add_subcommand("analyze", "Report on a .lqt table");
  analyze->add_option("file", analyze_path, "Input .lqt file")->required();
  analyze->add_flag("--json", analyze_json, "Emit JSON instead of text");

  std::string                suite_pos, suite_opt;
  std::optional<std::size_t> max_n;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("name", suite_pos, "Suite name (positional form)");
  verify->add_option("--suite", suite_opt, "Suite name");
  verify->add_option("--max-n", max_n, "Upper bound on instance orders");

  std::size_t                enum_n = 0;
  std::string                enum_class;
  bool                       enum_iso = false;
  std::optional<std::string> enum_emit;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate tables of a class");
  enumerate->add_option("--n", enum_n, "Order")->required();
  enumerate->add_option("--class", enum_class, "Class name")->required();
  enumerate->add_flag("--up-to-iso", enum_iso, "One table per isomorphism class");
  enumerate->add_option("--emit", enum_emit, "Directory for .lqt output");

  std::size_t classify_n = 0;
  auto*       classify   = app.add_subcommand("classify-medial-racks",
                                          "Construct the connected medial racks of order n");
  classify->add_option("--n", classify_n, "Order")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      return run_analyze(analyze_path, analyze_json);
    }
    if (*verify) {
      std::string const suite = !suite_opt.empty() ? suite_opt : suite_pos;
      if (suite.empty()) {
        std::cerr << "verify: a suite name is required\n";
        return kExitInput;
      }
      return run_verify(suite, max_n);
    }
    if (*enumerate) {
      return run_enumerate(enum_n, enum_class, enum_iso, enum_emit);
    }
    return run_classify(classify_n);
  } catch (lqg::Error const& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
