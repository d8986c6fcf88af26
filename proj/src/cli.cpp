#include "mkh/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mkh/diagram.hpp"
#include "mkh/homology.hpp"
#include "mkh/khovanov.hpp"
#include "mkh/spectral.hpp"

namespace mkh::cli {

namespace {

struct FileNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadOption : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Theory parse_theory(const std::string& s) {
  if (s == "kh") return Theory::kh;
  if (s == "akh") return Theory::akh;
  if (s == "mkh") return Theory::mkh;
  if (s == "aps") return Theory::aps;
  throw BadOption("unknown theory " + s);
}

Scenario parse_scenario(const std::string& s) {
  if (s == "aps-to-mkh") return Scenario::aps_to_mkh;
  if (s == "mkh-to-akh") return Scenario::mkh_to_akh;
  if (s == "mkh-to-kh") return Scenario::mkh_to_kh;
  if (s == "mkh-to-mkh") return Scenario::mkh_to_mkh;
  throw BadOption("unknown scenario " + s);
}

HomologyTable table_of(const KhovanovComplex& kc, Theory t, int puncture) {
  switch (t) {
    case Theory::kh: return kh(kc);
    case Theory::akh: return akh(kc, puncture);
    case Theory::mkh: return mkh(kc);
    case Theory::aps: return aps_tilde(kc);
  }
  return {};
}

BasedComplex graded_complex(const KhovanovComplex& kc, Theory t, int puncture) {
  switch (t) {
    case Theory::kh: return kc.complex;
    case Theory::akh:
      if (puncture < 1 || puncture > kc.n_punctures) throw BadOption("--puncture out of range");
      return gr_puncture(kc.complex, puncture);
    case Theory::mkh: return gr_gsigma(kc.complex);
    case Theory::aps: return gr_phi(kc.complex);
  }
  return {};
}

GradingKey key_for(Theory t, const MultiDegree& md, int puncture) {
  switch (t) {
    case Theory::kh: return std::monostate{};
    case Theory::akh: return md.gsigma.at(static_cast<std::size_t>(puncture - 1));
    case Theory::mkh: return md.gsigma;
    case Theory::aps: return md.phi;
  }
  return std::monostate{};
}

// --- move scripts -----------------------------------------------------------

std::map<std::string, std::string> move_fields(std::istringstream& words, int line_no) {
  std::map<std::string, std::string> fields;
  std::string w;
  while (words >> w) {
    auto eq = w.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value, got " + w);
    }
    fields[w.substr(0, eq)] = w.substr(eq + 1);
  }
  return fields;
}

long field_int(const std::map<std::string, std::string>& f, const std::string& key, int line_no) {
  auto it = f.find(key);
  if (it == f.end()) throw ParseError("line " + std::to_string(line_no) + ": missing " + key);
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("line " + std::to_string(line_no) + ": " + key + " is not an integer");
  }
}

Chirality field_chirality(const std::map<std::string, std::string>& f, int line_no) {
  auto it = f.find("chirality");
  if (it == f.end()) throw ParseError("line " + std::to_string(line_no) + ": missing chirality");
  if (it->second == "+") return Chirality::positive;
  if (it->second == "-") return Chirality::negative;
  throw ParseError("line " + std::to_string(line_no) + ": chirality must be + or -");
}

std::size_t one_based(long v, std::size_t count, const std::string& what, int line_no) {
  if (v < 1 || static_cast<std::size_t>(v) > count) {
    throw ValidationError("line " + std::to_string(line_no) + ": no " + what + " " + std::to_string(v));
  }
  return static_cast<std::size_t>(v - 1);
}

Diagram apply_script(Diagram d, const std::string& script) {
  std::istringstream lines(script);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string verb;
    if (!(words >> verb)) continue;
    const auto f = move_fields(words, line_no);
    try {
      if (verb == "r1" && f.count("arc")) {
        d = apply_r1(d, static_cast<ArcId>(field_int(f, "arc", line_no)), field_chirality(f, line_no));
      } else if (verb == "r1" && f.count("loop")) {
        auto k = one_based(field_int(f, "loop", line_no), d.free_loops().size(), "free loop", line_no);
        d = apply_r1_free_loop(d, k, field_chirality(f, line_no));
      } else if (verb == "r2" && f.count("arc1")) {
        d = apply_r2(d, static_cast<ArcId>(field_int(f, "arc1", line_no)),
                     static_cast<ArcId>(field_int(f, "arc2", line_no)));
      } else if (verb == "r2" && f.count("loop1")) {
        auto a = one_based(field_int(f, "loop1", line_no), d.free_loops().size(), "free loop", line_no);
        auto b = one_based(field_int(f, "loop2", line_no), d.free_loops().size(), "free loop", line_no);
        d = apply_r2_free_loops(d, a, b);
      } else if (verb == "flip") {
        auto x = one_based(field_int(f, "crossing", line_no), d.crossing_count(), "crossing", line_no);
        d = change_crossing(d, x);
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unknown move " + line);
      }
    } catch (const ValidationError& e) {
      std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      throw ValidationError("line " + std::to_string(line_no) + ": " + what);
    }
  }
  return d;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov homology of links in multipunctured disks", "mkh"};
  app.require_subcommand(1);

  std::string input, theory_name_opt = "kh", format = "text", scenario_opt, script_path, out_path;
  int puncture = 1;
  int r_max = -1;
  std::vector<int> keep;
  bool apply_chi_h = false;
  const std::vector<std::string> formats{"text", "json"};

  auto* compute = app.add_subcommand("compute", "Rank table of kh, akh, mkh or aps");
  compute->add_option("--theory", theory_name_opt, "kh | akh | mkh | aps");
  compute->add_option("--puncture", puncture, "puncture for akh (1-based)");
  compute->add_option("--format", format)->check(CLI::IsMember(formats));
  compute->add_option("diagram", input)->required();

  auto* euler_cmd = app.add_subcommand("euler", "Graded Euler characteristic");
  euler_cmd->add_option("--theory", theory_name_opt, "kh | akh | mkh | aps");
  euler_cmd->add_option("--puncture", puncture, "puncture for akh (1-based)");
  euler_cmd->add_flag("--chi-h", apply_chi_h, "substitute x_c -> prod y_i");
  euler_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  euler_cmd->add_option("diagram", input)->required();

  auto* ss = app.add_subcommand("ss", "Spectral sequence between two theories");
  ss->add_option("--scenario", scenario_opt, "aps-to-mkh | mkh-to-akh | mkh-to-kh | mkh-to-mkh")
      ->required();
  ss->add_option("--puncture", puncture, "puncture kept by mkh-to-akh");
  ss->add_option("--keep", keep, "punctures kept by mkh-to-mkh")->delimiter(',');
  ss->add_option("--r-max", r_max, "last page to print");
  ss->add_option("--format", format)->check(CLI::IsMember(formats));
  ss->add_option("diagram", input)->required();

  auto* dump = app.add_subcommand("gr-dump", "Generators and differential of the graded complex");
  dump->add_option("--theory", theory_name_opt, "kh | akh | mkh | aps");
  dump->add_option("--puncture", puncture, "puncture for akh (1-based)");
  dump->add_option("diagram", input)->required();

  auto* moves = app.add_subcommand("moves", "Apply a Reidemeister move script");
  moves->add_option("diagram", input)->required();
  moves->add_option("script", script_path)->required();
  moves->add_option("-o,--output", out_path, "write here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "mkh: " << e.what() << '\n';
    return bad_options;
  }

  try {
    if (ss->parsed() && r_max < -1) throw BadOption("--r-max must be non-negative");
    const Diagram d = parse_diagram(read_file(input));

    if (moves->parsed()) {
      const Diagram moved = apply_script(d, read_file(script_path));
      if (out_path.empty()) {
        out << emit_diagram(moved);
      } else {
        std::ofstream o(out_path, std::ios::binary);
        if (!o) throw FileNotFound("cannot write " + out_path);
        o << emit_diagram(moved);
      }
      return ok;
    }

    if (ss->parsed()) {
      const Scenario which = parse_scenario(scenario_opt);
      std::vector<int> subset = keep;
      if (which == Scenario::mkh_to_akh) subset = {puncture};
      SpectralReport report;
      try {
        report = scenario(d, which, subset, r_max);
      } catch (const std::invalid_argument& e) {
        throw BadOption(e.what());
      }
      if (format == "json") {
        out << to_json(report).dump(2) << '\n';
      } else {
        out << to_text(report);
      }
      return ok;
    }

    const Theory theory = parse_theory(theory_name_opt);
    if (theory == Theory::akh && (puncture < 1 || puncture > d.n_punctures())) {
      throw BadOption("--puncture " + std::to_string(puncture) + " is outside 1.." +
                      std::to_string(d.n_punctures()));
    }
    const KhovanovComplex kc = build_complex(d);

    if (compute->parsed()) {
      const HomologyTable t = table_of(kc, theory, puncture);
      if (format == "json") {
        out << to_json(t).dump(2) << '\n';
      } else {
        out << to_text(t);
      }
    } else if (euler_cmd->parsed()) {
      LaurentPoly p = euler(table_of(kc, theory, puncture));
      if (apply_chi_h) p = chi_h(p);
      if (format == "json") {
        out << nlohmann::json{{"kind", mkh::theory_name(theory)}, {"euler", p.to_string()}}.dump(2)
            << '\n';
      } else {
        out << p.to_string() << '\n';
      }
    } else if (dump->parsed()) {
      const BasedComplex gr = graded_complex(kc, theory, puncture);
      out << "generators " << gr.size() << '\n';
      for (std::size_t i = 0; i < gr.size(); ++i) {
        const auto& g = kc.generators[i];
        const auto& md = gr.degree(i);
        out << i << " h=" << md.h << " q=" << md.q;
        if (theory != Theory::kh) out << " key=" << format_key(key_for(theory, md, puncture));
        std::string s;
        for (int b : g.vertex_vector(d.crossing_count())) s += static_cast<char>('0' + b);
        out << " vertex=" << (s.empty() ? "-" : s) << " labels=" << g.label_string() << '\n';
      }
      out << "entries " << gr.entry_count() << '\n';
      for (std::size_t i = 0; i < gr.size(); ++i) {
        for (const auto& e : gr.differential(i)) out << i << ' ' << e.target << ' ' << e.coefficient << '\n';
      }
    }
    return ok;
  } catch (const FileNotFound& e) {
    err << "mkh: " << e.what() << '\n';
    return file_not_found;
  } catch (const ParseError& e) {
    err << "mkh: parse error: " << e.what() << '\n';
    return parse_error;
  } catch (const ValidationError& e) {
    err << "mkh: invalid diagram: " << e.what() << '\n';
    return validation_error;
  } catch (const BadOption& e) {
    err << "mkh: " << e.what() << '\n';
    return bad_options;
  } catch (const std::exception& e) {
    err << "mkh: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace mkh::cli
