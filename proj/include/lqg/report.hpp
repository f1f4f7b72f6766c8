#pragma once

// Reading .lqt tables and building the analysis report printed by the CLI.
//
// A .lqt file holds optional '#' comment lines, then the order n, then n
// rows of n whitespace-separated 1-based entries; row a lists a*b across
// the columns b. All user-facing labels are 1-based.

#include <cstddef>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "commutator.hpp"
#include "congruence.hpp"
#include "constructions.hpp"
#include "core.hpp"
#include "error.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"

namespace lqg {

  ////////////////////////////////////////////////////////////////////////
  // .lqt input and output
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string strip_comment(std::string const& line) {
      auto pos = line.find('#');
      return pos == std::string::npos ? line : line.substr(0, pos);
    }

    inline bool blank(std::string const& s) {
      return s.find_first_not_of(" \t\r") == std::string::npos;
    }
  }  // namespace detail

  //! Parses a table. Throws ParseError for malformed text and
  //! NotLeftQuasigroup ("row k", 1-based) when a row is not a permutation
  //! of 1..n.
  inline LeftQuasigroup parse_lqt(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
      line = detail::strip_comment(line);
      if (!detail::blank(line)) {
        lines.push_back(line);
      }
    }
    detail::check(!lines.empty(), ErrorKind::ParseError, "missing order line");
    std::istringstream head(lines[0]);
    long long          n = 0;
    std::string        rest;
    detail::check(static_cast<bool>(head >> n) && !(head >> rest) && n >= 1,
                  ErrorKind::ParseError,
                  "first line must be a positive order, got \"" + lines[0] + "\"");
    detail::check(n <= static_cast<long long>(kMaxOrder),
                  ErrorKind::OrderTooLarge,
                  "order " + std::to_string(n));
    std::size_t const order = static_cast<std::size_t>(n);
    detail::check(lines.size() == order + 1,
                  ErrorKind::ParseError,
                  "expected " + std::to_string(order) + " rows, found "
                      + std::to_string(lines.size() - 1));
    std::vector<LeftQuasigroup::element_type> flat;
    flat.reserve(order * order);
    for (std::size_t a = 0; a < order; ++a) {
      std::string const  row = "row " + std::to_string(a + 1);
      std::istringstream ss(lines[a + 1]);
      std::vector<long long> vals;
      for (std::string tok; ss >> tok;) {
        std::size_t used = 0;
        long long   v    = 0;
        try {
          v = std::stoll(tok, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        detail::check(used == tok.size() && used > 0,
                      ErrorKind::ParseError,
                      row + ": \"" + tok + "\" is not an integer");
        vals.push_back(v);
      }
      detail::check(vals.size() == order,
                    ErrorKind::ParseError,
                    row + " has " + std::to_string(vals.size()) + " entries");
      for (long long v : vals) {
        detail::check(v >= 1 && v <= n, ErrorKind::NotLeftQuasigroup, row);
        flat.push_back(static_cast<LeftQuasigroup::element_type>(v - 1));
      }
    }
    try {
      return LeftQuasigroup::from_flat(order, std::move(flat));
    } catch (Error const& e) {
      if (e.kind() == ErrorKind::NotLeftQuasigroup) {
        // from_flat reports 0-based rows
        std::size_t r = std::stoul(e.detail().substr(4));
        detail::raise(ErrorKind::NotLeftQuasigroup, "row " + std::to_string(r + 1));
      }
      throw;
    }
  }

  inline LeftQuasigroup parse_lqt(std::string const& text) {
    std::istringstream in(text);
    return parse_lqt(in);
  }

  inline LeftQuasigroup read_lqt(std::string const& path) {
    std::ifstream in(path);
    detail::check(in.good(), ErrorKind::ParseError, "cannot open " + path);
    return parse_lqt(in);
  }

  inline std::string format_lqt(LeftQuasigroup const& q) {
    std::string out = std::to_string(q.order()) + "\n";
    for (auto const& row : q.rows()) {
      for (std::size_t b = 0; b < row.size(); ++b) {
        out += (b ? " " : "") + std::to_string(row[b] + 1);
      }
      out += "\n";
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // AnalysisReport
  ////////////////////////////////////////////////////////////////////////

  using Blocks = std::vector<std::vector<int>>;  // 1-based

  struct SeriesSummary {
    bool                       is_solvable  = false;
    bool                       is_nilpotent = false;
    std::optional<std::size_t> solvable_length;
    std::optional<std::size_t> nilpotent_length;

    bool operator==(SeriesSummary const&) const = default;
  };

  struct SpellingSummary {
    std::string plus;
    std::string minus;

    bool operator==(SpellingSummary const&) const = default;
  };

  struct QuandleImage {
    std::vector<std::vector<int>> quandle;  // 1-based rows
    std::vector<int>              f;        // 1-based images

    bool operator==(QuandleImage const&) const = default;
  };

  //! Everything `analyze` prints. Optional fields are unset when the
  //! quantity does not exist (e.g. no spelling witness) or exceeds the
  //! size limits of the underlying algorithm; the latter are listed in
  //! `skipped`.
  struct AnalysisReport {
    std::size_t                   order = 0;
    std::vector<std::vector<int>> table;  // 1-based rows
    std::string                   summary;
    IdentityProfile               identities;
    std::optional<std::size_t>    lmlt_order;
    std::optional<std::size_t>    dis_order;
    std::optional<std::vector<Blocks>> congruences;
    std::optional<std::size_t>    norm_size;
    Blocks                        cayley_kernel;
    bool                          cayley_kernel_is_congruence = false;
    std::optional<Blocks>         center;
    std::optional<SeriesSummary>  series;
    std::optional<SpellingSummary> spelling;
    std::optional<QuandleImage>   quandle_image;
    std::vector<std::string>      skipped;

    bool operator==(AnalysisReport const&) const = default;
  };

  namespace detail {
    inline Blocks one_based(Partition const& p) {
      Blocks out = p.blocks();
      for (auto& b : out) {
        for (auto& x : b) {
          ++x;
        }
      }
      return out;
    }

    inline std::vector<std::vector<int>> one_based_rows(LeftQuasigroup const& q) {
      auto rows = q.rows();
      for (auto& r : rows) {
        for (auto& x : r) {
          ++x;
        }
      }
      return rows;
    }

    //! Runs f; size-limit errors are recorded under `field` and yield
    //! nullopt, anything else propagates.
    template <typename F>
    auto attempt(AnalysisReport& r, std::string const& field, F&& f)
        -> std::optional<decltype(f())> {
      try {
        return f();
      } catch (Error const& e) {
        if (e.kind() == ErrorKind::OrderTooLarge || e.kind() == ErrorKind::CapExceeded
            || e.kind() == ErrorKind::DegreeMismatch) {
          r.skipped.push_back(field + " (" + e.what() + ")");
          return std::nullopt;
        }
        throw;
      }
    }

    inline std::string summarize(IdentityProfile const& p) {
      std::vector<std::string> words;
      if (p.is_connected) {
        words.emplace_back("connected");
      }
      if (p.is_medial) {
        words.emplace_back("medial");
      } else if (p.is_semimedial) {
        words.emplace_back("semimedial");
      }
      if (p.is_latin) {
        words.emplace_back("latin");
      }
      if (p.is_faithful && !p.is_latin) {
        words.emplace_back("faithful");
      }
      if (p.is_quandle) {
        words.emplace_back("quandle");
      } else if (p.is_rack) {
        words.emplace_back("rack");
      } else if (p.is_permutation) {
        words.emplace_back("permutation left quasigroup");
      } else {
        words.emplace_back("left quasigroup");
      }
      std::string out;
      for (auto const& w : words) {
        out += (out.empty() ? "" : " ") + w;
      }
      return out;
    }
  }  // namespace detail

  inline AnalysisReport analyze(LeftQuasigroup const& q) {
    AnalysisReport r;
    r.order      = q.order();
    r.table      = detail::one_based_rows(q);
    r.identities = identity_profile(q);
    r.summary    = detail::summarize(r.identities);

    Partition const lambda        = cayley_kernel_relation(q);
    r.cayley_kernel               = detail::one_based(lambda);
    r.cayley_kernel_is_congruence = is_compatible(q, lambda);

    auto groups = detail::attempt(r, "lmlt_order", [&] { return lmlt_and_dis(q); });
    if (groups) {
      r.lmlt_order = groups->lmlt.order();
      r.dis_order  = groups->dis.order();
      r.congruences = detail::attempt(r, "congruences", [&] {
        std::vector<Blocks> out;
        for (auto const& c : congruence_lattice(q).congruences) {
          out.push_back(detail::one_based(c));
        }
        return out;
      });
      if (r.congruences) {
        r.norm_size = detail::attempt(r, "norm_size", [&] {
          return norm_admissible(q, *groups).size();
        });
      }
    } else {
      r.skipped.push_back("congruences (needs LMlt)");
      r.skipped.push_back("norm_size (needs LMlt)");
    }

    if (r.congruences) {
      auto s = detail::attempt(r, "series", [&] { return series_and_class(q); });
      if (s) {
        r.series = SeriesSummary{s->is_solvable, s->is_nilpotent, s->solvable_length,
                                 s->nilpotent_length};
        r.center = detail::one_based(center_congruence(q));
      } else {
        r.skipped.push_back("center (needs the commutator)");
      }
    } else {
      r.skipped.push_back("center (needs Con(Q))");
      r.skipped.push_back("series (needs Con(Q))");
    }

    if (groups) {
      auto w = detail::attempt(r, "spelling", [&] { return spelling_search(q); });
      if (w && *w) {
        r.spelling = SpellingSummary{(*w)->plus.to_string(), (*w)->minus.to_string()};
      }
    } else {
      r.skipped.push_back("spelling (needs LMlt)");
    }

    if (r.identities.is_semimedial && r.identities.is_2_divisible) {
      auto p = detail::attempt(r, "quandle_image", [&] { return to_quandle(q); });
      if (p) {
        QuandleImage img{detail::one_based_rows(p->quandle), p->f.images()};
        for (auto& x : img.f) {
          ++x;
        }
        r.quandle_image = std::move(img);
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON (snake_case keys, fixed order) and text
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    using ojson = nlohmann::ordered_json;

    template <typename T>
    ojson opt(std::optional<T> const& x) {
      return x ? ojson(*x) : ojson(nullptr);
    }

    template <typename T>
    std::optional<T> get_opt(ojson const& j, char const* key) {
      if (j.at(key).is_null()) {
        return std::nullopt;
      }
      return j.at(key).get<T>();
    }

    inline std::vector<std::pair<std::string, bool IdentityProfile::*>> const&
    identity_flags() {
      static std::vector<std::pair<std::string, bool IdentityProfile::*>> const flags{
          {"semimedial", &IdentityProfile::is_semimedial},
          {"medial", &IdentityProfile::is_medial},
          {"rack", &IdentityProfile::is_rack},
          {"quandle", &IdentityProfile::is_quandle},
          {"idempotent", &IdentityProfile::is_idempotent},
          {"associative", &IdentityProfile::is_associative},
          {"latin", &IdentityProfile::is_latin},
          {"permutation", &IdentityProfile::is_permutation},
          {"projection", &IdentityProfile::is_projection},
          {"faithful", &IdentityProfile::is_faithful},
          {"connected", &IdentityProfile::is_connected},
          {"two_divisible", &IdentityProfile::is_2_divisible},
          {"cayley_chain", &IdentityProfile::cayley_chain}};
      return flags;
    }
  }  // namespace detail

  inline nlohmann::ordered_json to_json(AnalysisReport const& r) {
    using detail::ojson;
    using detail::opt;
    ojson ids;
    for (auto const& [key, member] : detail::identity_flags()) {
      ids[key] = r.identities.*member;
    }
    ids["superconnected"]     = opt(r.identities.is_superconnected);
    ids["multipotency_class"] = opt(r.identities.multipotency_class);
    ids["reductivity_level"]  = opt(r.identities.reductivity_level);

    ojson j;
    j["order"]                       = r.order;
    j["table"]                       = r.table;
    j["summary"]                     = r.summary;
    j["identities"]                  = ids;
    j["lmlt_order"]                  = opt(r.lmlt_order);
    j["dis_order"]                   = opt(r.dis_order);
    j["congruence_count"]            = r.congruences ? ojson(r.congruences->size()) : ojson();
    j["congruences"]                 = opt(r.congruences);
    j["norm_size"]                   = opt(r.norm_size);
    j["cayley_kernel"]               = r.cayley_kernel;
    j["cayley_kernel_is_congruence"] = r.cayley_kernel_is_congruence;
    j["center"]                      = opt(r.center);
    if (r.series) {
      j["series"] = ojson{{"solvable", r.series->is_solvable},
                          {"nilpotent", r.series->is_nilpotent},
                          {"solvable_length", opt(r.series->solvable_length)},
                          {"nilpotent_length", opt(r.series->nilpotent_length)}};
    } else {
      j["series"] = nullptr;
    }
    j["spelling"] = r.spelling ? ojson{{"plus", r.spelling->plus}, {"minus", r.spelling->minus}}
                               : ojson();
    j["quandle_image"] = r.quandle_image ? ojson{{"quandle", r.quandle_image->quandle},
                                                 {"f", r.quandle_image->f}}
                                         : ojson();
    j["skipped"] = r.skipped;
    return j;
  }

  inline AnalysisReport report_from_json(nlohmann::ordered_json const& j) {
    using detail::get_opt;
    AnalysisReport r;
    r.order   = j.at("order").get<std::size_t>();
    r.table   = j.at("table").get<std::vector<std::vector<int>>>();
    r.summary = j.at("summary").get<std::string>();
    auto const& ids = j.at("identities");
    for (auto const& [key, member] : detail::identity_flags()) {
      r.identities.*member = ids.at(key).get<bool>();
    }
    r.identities.is_superconnected  = get_opt<bool>(ids, "superconnected");
    r.identities.multipotency_class = get_opt<std::size_t>(ids, "multipotency_class");
    r.identities.reductivity_level  = get_opt<std::size_t>(ids, "reductivity_level");
    r.lmlt_order                    = get_opt<std::size_t>(j, "lmlt_order");
    r.dis_order                     = get_opt<std::size_t>(j, "dis_order");
    r.congruences                   = get_opt<std::vector<Blocks>>(j, "congruences");
    r.norm_size                     = get_opt<std::size_t>(j, "norm_size");
    r.cayley_kernel                 = j.at("cayley_kernel").get<Blocks>();
    r.cayley_kernel_is_congruence   = j.at("cayley_kernel_is_congruence").get<bool>();
    r.center                        = get_opt<Blocks>(j, "center");
    if (!j.at("series").is_null()) {
      auto const& s = j.at("series");
      r.series      = SeriesSummary{s.at("solvable").get<bool>(),
                               s.at("nilpotent").get<bool>(),
                               get_opt<std::size_t>(s, "solvable_length"),
                               get_opt<std::size_t>(s, "nilpotent_length")};
    }
    if (!j.at("spelling").is_null()) {
      r.spelling = SpellingSummary{j["spelling"].at("plus").get<std::string>(),
                                   j["spelling"].at("minus").get<std::string>()};
    }
    if (!j.at("quandle_image").is_null()) {
      r.quandle_image
          = QuandleImage{j["quandle_image"].at("quandle").get<std::vector<std::vector<int>>>(),
                         j["quandle_image"].at("f").get<std::vector<int>>()};
    }
    r.skipped = j.at("skipped").get<std::vector<std::string>>();
    return r;
  }

  //! Text rendering: one "key: value" line per JSON field, values printed
  //! in the same compact JSON notation, so both modes carry identical data.
  inline std::string to_text(AnalysisReport const& r) {
    auto const  j = to_json(r);
    std::string out;
    for (auto const& [key, value] : j.items()) {
      if (key == "identities") {
        for (auto const& [k, v] : value.items()) {
          out += "identities." + k + ": " + v.dump() + "\n";
        }
      } else if (key == "summary") {
        out += key + ": " + value.get<std::string>() + "\n";
      } else {
        out += key + ": " + value.dump() + "\n";
      }
    }
    return out;
  }

  //! Inverse of to_text, used to confirm the two modes agree.
  inline nlohmann::ordered_json text_to_json(std::string const& text) {
    nlohmann::ordered_json j;
    std::istringstream     in(text);
    for (std::string line; std::getline(in, line);) {
      auto const  pos   = line.find(": ");
      std::string key   = line.substr(0, pos);
      std::string value = line.substr(pos + 2);
      if (key == "summary") {
        j[key] = value;
      } else if (key.rfind("identities.", 0) == 0) {
        j["identities"][key.substr(11)] = nlohmann::ordered_json::parse(value);
      } else {
        j[key] = nlohmann::ordered_json::parse(value);
      }
    }
    return j;
  }

}  // namespace lqg
