#pragma once

// Command-line front end. Exit codes: 0 success or admissible, 1 negative
// mathematical answer or failed verification, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geometry.hpp"
#include "intlinalg.hpp"
#include "kernel_action.hpp"
#include "presentations.hpp"
#include "section_solver.hpp"
#include "words.hpp"

namespace mixbraid::cli {

  inline constexpr int exit_ok       = 0;
  inline constexpr int exit_negative = 1;
  inline constexpr int exit_usage    = 2;

  class usage_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  namespace detail {
    inline void at_least(int value, int low, char const* name) {
      if (value < low) {
        throw usage_error(std::string(name) + " must be >= " + std::to_string(low) + " (got "
                          + std::to_string(value) + ")");
      }
    }
  }  // namespace detail

  inline int cmd_present(GroupKind group, int g, int n, int m, Format format, std::ostream& out) {
    out << serialize(build(group, g, n, m), format);
    return exit_ok;
  }

  // With a word: its image in K(g,m). Without: invariant factors of the
  // abelianized punctured-surface braid group.
  inline int cmd_abelianize(int g, int n, int m, std::optional<std::string> const& word,
                            Format format, std::ostream& out) {
    detail::at_least(g, 1, "g");
    detail::at_least(n, 1, "n");
    detail::at_least(m, 1, "m");
    if (word) {
      auto v = abelianize(parse_word(*word), g, n, m);
      if (format == Format::json) {
        out << to_json(v).dump() << '\n';
      } else {
        auto j = to_json(v);
        out << "a " << j["a"].dump() << " b " << j["b"].dump() << " z " << j["z"].dump()
            << " sigma " << v.sigma << '\n';
      }
      return exit_ok;
    }
    auto inv = abelian_invariants(build_punctured(n, m, g));
    if (format == Format::json) {
      nlohmann::json j;
      j["free_rank"] = inv.free_rank;
      j["torsion"]   = nlohmann::json::array();
      for (auto const& t : inv.torsion) {
        j["torsion"].push_back(integer_to_json(t));
      }
      out << j.dump() << '\n';
    } else {
      out << "free_rank " << inv.free_rank << " torsion [";
      for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
        out << (i ? ", " : "") << inv.torsion[i];
      }
      out << "]\n";
    }
    return exit_ok;
  }

  inline int cmd_obstruct(int g, int m, std::optional<long long> n, std::optional<long long> n_max,
                          Format format, std::ostream& out) {
    detail::at_least(g, 1, "g");
    detail::at_least(m, 1, "m");
    if (n && n_max) {
      throw usage_error("--n and --n-max are mutually exclusive");
    }
    if (n_max) {
      detail::at_least(static_cast<int>(std::min<long long>(*n_max, 1 << 30)), 1, "n-max");
    }
    auto const rep = obstruction(g, m);
    if (n) {
      bool ok = rep.admissible(*n);
      out << (ok ? "admissible" : "obstructed") << '\n';
      return ok ? exit_ok : exit_negative;
    }
    if (n_max) {
      std::vector<long long> list;
      for (long long k = 1; k <= *n_max; ++k) {
        if (rep.admissible(k)) {
          list.push_back(k);
        }
      }
      if (format == Format::json) {
        out << nlohmann::json(list).dump() << '\n';
      } else {
        for (std::size_t i = 0; i < list.size(); ++i) {
          out << (i ? " " : "") << list[i];
        }
        out << '\n';
      }
      return exit_ok;
    }
    auto j = to_json(rep);
    if (format == Format::json) {
      out << j.dump() << '\n';
    } else {
      for (auto const& key : {"g", "m", "modulus", "rows", "cols", "witness_n"}) {
        out << key << ' ' << j[key].dump() << '\n';
      }
      out << "witness " << j["witness"].dump() << '\n';
      for (auto const& [key, value] : j["diagnostics"].items()) {
        out << key << ' ' << value.dump() << '\n';
      }
    }
    return exit_ok;
  }

  // The witness file is either an `obstruct` report or a bare JSON array.
  inline int cmd_verify(int g, int m, std::optional<long long> n, std::string const& witness_text,
                        std::ostream& out) {
    detail::at_least(g, 1, "g");
    detail::at_least(m, 1, "m");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(witness_text);
    } catch (nlohmann::json::exception const& e) {
      throw usage_error(std::string("malformed witness JSON: ") + e.what());
    }
    IntVector x;
    try {
      nlohmann::json const& arr = j.is_array() ? j : j.at("witness");
      for (auto const& v : arr) {
        x.push_back(v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long long>()));
      }
      if (!n && j.is_object() && j.contains("witness_n") && !j["witness_n"].is_null()) {
        n = j["witness_n"].get<long long>();
      }
      if (j.is_object() && j.contains("g") && j.contains("m")
          && (j["g"].get<int>() != g || j["m"].get<int>() != m)) {
        throw usage_error("witness file is for g=" + j["g"].dump() + ", m=" + j["m"].dump());
      }
    } catch (nlohmann::json::exception const& e) {
      throw usage_error(std::string("malformed witness JSON: ") + e.what());
    }
    if (!n) {
      throw usage_error("--n is required when the witness file does not carry witness_n");
    }
    auto const cs = extract_constraints(g, m);
    if (x.size() != cs.system.unknowns()) {
      throw usage_error("witness has " + std::to_string(x.size()) + " entries, expected "
                        + std::to_string(cs.system.unknowns()));
    }
    auto bad = cs.system.violations(x, *n);
    if (bad.empty()) {
      out << "pass\n";
      return exit_ok;
    }
    out << "fail: " << bad.size() << " violated rows\n";
    for (auto i : bad) {
      out << "row " << i << ' ' << cs.rows[i].family << " relator " << cs.rows[i].relator
          << ' ' << cs.rows[i].coordinate << '\n';
    }
    return exit_negative;
  }

  inline int cmd_section_demo(int g, int n, int resolution, std::optional<std::string> const& path,
                              std::ostream& out) {
    detail::at_least(g, 1, "g");
    detail::at_least(n, 1, "n");
    detail::at_least(resolution, 3, "resolution");
    auto const s    = triangulate(g, resolution);
    auto const C    = meridian(s);
    auto const r    = build_retraction(s, C);
    auto const maps = section_maps(r, n);
    auto const rep  = verify_sections(s, C, r, maps);
    if (path) {
      export_section_data(section_data(s, C, maps, mesh_samples(s, C, r)), *path);
    }
    auto yes = [](bool b) { return b ? "ok" : "FAILED"; };
    out << "surface g=" << g << " resolution=" << resolution << " vertices=" << s.vertex_count
        << " edges=" << s.edges.size() << " triangles=" << s.triangles.size()
        << " euler=" << s.euler_characteristic() << '\n';
    out << "meridian length " << C.size() << '\n';
    out << "retraction " << (r.exact_solve ? "exact" : "floating") << " solve, residual "
        << r.residual << ", max spread " << rep.max_spread << " turns\n";
    out << "r o i = id: " << yes(rep.retraction_exact) << '\n';
    out << "branch condition: " << yes(rep.branch_condition) << '\n';
    out << "winding 1: " << yes(rep.winding_one) << '\n';
    out << "(i) image in C: " << yes(rep.image_in_c) << '\n';
    out << "(ii) no fixed points on C: " << yes(rep.moves_points_of_c) << '\n';
    out << "(iii) off C disjoint: " << yes(rep.off_c_disjoint) << '\n';
    out << "(iv) pairwise distinct: " << yes(rep.pairwise_distinct) << '\n';
    out << "samples " << rep.samples << '\n';
    out << "min separation 2pi*" << rep.min_separation_turns << " = " << rep.min_separation()
        << '\n';
    for (auto const& f : rep.failures) {
      out << "failure: " << f << '\n';
    }
    out << (rep.passed() ? "PASS" : "FAIL") << '\n';
    return rep.passed() ? exit_ok : exit_negative;
  }

  namespace detail {

    // Sends output to --out when given.
    template <typename F>
    int with_output(std::string const& path, std::ostream& out, F&& body) {
      if (path.empty()) {
        return body(out);
      }
      std::ofstream file(path);
      if (!file) {
        throw usage_error("cannot open " + path + " for writing");
      }
      return body(file);
    }

    inline std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw usage_error("cannot read " + path);
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

  }  // namespace detail

  inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Surface mixed braid groups: presentations, obstructions, sections"};
    app.require_subcommand(1);

    int         g = 1, n = 1, m = 1, resolution = 8;
    long long   n_value = 0, n_max = 0;
    std::string group, format = "text", out_path, word, witness;

    auto common = [&](CLI::App* sub, bool with_n) {
      sub->add_option("--g", g, "genus");
      sub->add_option("--m", m, "number of points to forget");
      if (with_n) {
        sub->add_option("--n", n, "number of extra points");
      }
      sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
      sub->add_option("--out", out_path, "output file");
    };

    auto* present = app.add_subcommand("present", "print a group presentation");
    present->add_option("--group", group, "closed|punctured|mixed|mixed-quotient|kernel-ab")
        ->required();
    common(present, true);

    auto* abel = app.add_subcommand("abelianize", "abelianize a word or the punctured group");
    common(abel, true);
    abel->add_option("--word", word, "word such as \"a1 b1^-1 s1^2\"");

    auto* obstruct = app.add_subcommand("obstruct", "splitting obstruction for B_{n,m}(S_g)");
    common(obstruct, false);
    auto* n_opt     = obstruct->add_option("--n", n_value, "test a single n");
    auto* n_max_opt = obstruct->add_option("--n-max", n_max, "list admissible n up to this bound");

    auto* verify = app.add_subcommand("verify", "check a witness against the constraints");
    common(verify, false);
    auto* verify_n = verify->add_option("--n", n_value, "number of extra points");
    verify->add_option("--witness", witness, "obstruct JSON or an array of exponents")->required();

    auto* demo = app.add_subcommand("section-demo", "build and verify the m = 1 section");
    demo->add_option("--g", g, "genus");
    demo->add_option("--n", n, "number of extra points");
    demo->add_option("--resolution", resolution, "mesh resolution (>= 3)");
    demo->add_option("--out", out_path, "write sample data as JSON");

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
    }

    try {
      Format const fmt = parse_format(format);
      if (present->parsed()) {
        return detail::with_output(out_path, out, [&](std::ostream& os) {
          return cmd_present(parse_group_name(group), g, n, m, fmt, os);
        });
      }
      if (abel->parsed()) {
        std::optional<std::string> w;
        if (!word.empty()) {
          w = word;
        }
        return detail::with_output(
            out_path, out, [&](std::ostream& os) { return cmd_abelianize(g, n, m, w, fmt, os); });
      }
      if (obstruct->parsed()) {
        std::optional<long long> nv, nm;
        if (n_opt->count() > 0) {
          nv = n_value;
        }
        if (n_max_opt->count() > 0) {
          nm = n_max;
        }
        // the report is JSON unless text is asked for explicitly
        Format const f = (!nv && !nm && obstruct->get_option("--format")->count() == 0)
                             ? Format::json
                             : fmt;
        return detail::with_output(
            out_path, out, [&](std::ostream& os) { return cmd_obstruct(g, m, nv, nm, f, os); });
      }
      if (verify->parsed()) {
        std::optional<long long> nv;
        if (verify_n->count() > 0) {
          nv = n_value;
        }
        std::string const text = detail::read_file(witness);
        return detail::with_output(
            out_path, out, [&](std::ostream& os) { return cmd_verify(g, m, nv, text, os); });
      }
      if (demo->parsed()) {
        std::optional<std::string> path;
        if (!out_path.empty()) {
          path = out_path;
        }
        return cmd_section_demo(g, n, resolution, path, out);
      }
    } catch (usage_error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (parameter_error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (word_error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (geometry_error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_negative;
    }
    return exit_usage;
  }

}  // namespace mixbraid::cli
