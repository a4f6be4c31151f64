// Command-line front end.
//
//   mfb info     [--catalog NAME | file.arr] [--json]
//   mfb boundary [...] [--presentation out.txt]
//   mfb cover    [...] --modulus d
//   mfb tower    [...]
//   mfb report   [...]
//   mfb table1   corpus_dir [--jobs k]
//   mfb generate --catalog NAME [-o out.arr]
//
// Exit status: 0 when every check passes or does not apply, 2 when a check
// fails, 1 on bad input.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mfb/arr_format.hpp"
#include "mfb/catalog.hpp"
#include "mfb/pipeline.hpp"

namespace {

using mfb::LineConfiguration;
using json = nlohmann::ordered_json;

struct Input {
  std::string catalog;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--catalog", catalog, "catalog entry, e.g. generic:8, maclane, with_concurrencies:8:1,2,3");
    cmd->add_option("file", file, ".arr configuration file");
  }

  std::pair<LineConfiguration, std::string> load() const {
    if (!catalog.empty() && !file.empty()) throw mfb::Error(mfb::ErrorKind::Parse, "give either --catalog or a file");
    if (!catalog.empty()) return {mfb::catalog(catalog), catalog};
    if (!file.empty()) return {mfb::load_and_validate(file), file};
    throw mfb::Error(mfb::ErrorKind::Parse, "no input: pass --catalog or a file");
  }
};

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

int cmd_info(const Input& in, bool as_json) {
  const auto [config, source] = in.load();
  const auto tuple = mfb::multiplicity_tuple(config);
  const auto betti = mfb::char_poly_and_betti(config);
  json j;
  j["source"] = source;
  j["n"] = config.n;
  j["flats"] = config.flats;
  j["tuple"] = tuple.counts;
  j["double_points"] = tuple.doubles;
  j["b_M"] = betti.b_M;
  j["b_U"] = betti.b_U;
  j["chi_U"] = betti.chi_U;
  j["charpoly"] = betti.charpoly;
  j["assumption_star"] = mfb::assumption_star(config);
  std::ostringstream os;
  os << "lines " << config.n << ", tuple " << tuple.to_string() << ", double points " << tuple.doubles << '\n'
     << "b(M) = " << betti.b_M[0] << ' ' << betti.b_M[1] << ' ' << betti.b_M[2] << ' ' << betti.b_M[3] << '\n'
     << "b(U) = " << betti.b_U[0] << ' ' << betti.b_U[1] << ' ' << betti.b_U[2] << ", chi(U) = " << betti.chi_U << '\n'
     << "assumption (*): " << (mfb::assumption_star(config) ? "yes" : "no") << '\n';
  if (config.n >= 3) {
    const long b1 = mfb::b1_milnor_boundary(config);
    j["b1_milnor_boundary"] = b1;
    os << "b1(dF) formula: " << b1 << '\n';
  }
  emit(j, as_json, os.str());
  return 0;
}

int cmd_boundary(const Input& in, bool as_json, const std::string& export_path) {
  const auto [config, source] = in.load();
  const auto model = mfb::boundary_model(config);
  const auto h = mfb::h1(model.presentation);
  if (!export_path.empty()) {
    std::ofstream out(export_path);
    if (!out) throw mfb::Error(mfb::ErrorKind::Parse, "cannot write '" + export_path + "'");
    out << mfb::write_presentation(model.presentation);
  }
  json j;
  j["source"] = source;
  j["vertices"] = model.graph.vertices.size();
  j["edges"] = model.graph.edges.size();
  j["graph_b1"] = model.graph.first_betti();
  j["generators"] = model.presentation.generators.size();
  j["relators"] = model.presentation.relators.size();
  j["simplified_generators"] = model.simplified.presentation.generators.size();
  j["simplified_relators"] = model.simplified.presentation.relators.size();
  j["h1"] = mfb::to_json(h);
  std::ostringstream os;
  os << "plumbing graph: " << model.graph.vertices.size() << " vertices, " << model.graph.edges.size()
     << " edges, b1 " << model.graph.first_betti() << '\n'
     << "presentation: " << model.presentation.generators.size() << " generators, "
     << model.presentation.relators.size() << " relators (" << model.simplified.presentation.generators.size()
     << " / " << model.simplified.presentation.relators.size() << " after simplification)\n"
     << "H1(dU) = " << h.to_string() << '\n';
  emit(j, as_json, os.str());
  return 0;
}

int cmd_cover(const Input& in, bool as_json, long modulus) {
  const auto [config, source] = in.load();
  const auto model = mfb::boundary_model(config);
  const long d = modulus > 0 ? modulus : config.n;
  const auto h = mfb::h1_cover(model.simplified.presentation, model.omega_simplified, d);
  json j;
  j["source"] = source;
  j["modulus"] = d;
  j["h1"] = mfb::to_json(h);
  emit(j, as_json, "H1 of the " + std::to_string(d) + "-fold cover = " + h.to_string() + '\n');
  return 0;
}

int cmd_tower(const Input& in, bool as_json) {
  const auto [config, source] = in.load();
  if (!mfb::is_power_of_two(config.n))
    throw mfb::Error(mfb::ErrorKind::ModulusNotPowerOfTwo, "line count " + std::to_string(config.n) +
                                                               " is not a power of two");
  const auto report = mfb::run(config, source);
  const auto full = mfb::to_json(report);
  json j;
  j["source"] = source;
  j["tower"] = full["tower"];
  j["alpha0"] = report.alpha0() ? json(*report.alpha0()) : json(nullptr);
  std::ostringstream os;
  const auto& t = *report.tower;
  os << "k  degree  H1                              b1  b1bar  tau  alpha  rho\n";
  for (int k = 0; k <= t.m(); ++k) {
    std::string h = t.levels[static_cast<std::size_t>(k)].h1.to_string();
    h.resize(std::max<std::size_t>(h.size(), 30), ' ');
    os << k << "  " << t.levels[static_cast<std::size_t>(k)].degree << "       " << h << "  " << t.b1(k) << "  "
       << t.b1bar(k) << "  " << t.tau(k) << "  ";
    if (k < t.m())
      os << t.alpha(k) << "  " << t.rho(k) << '\n';
    else
      os << "-  -\n";
  }
  if (report.alpha0()) os << "alpha0 from D(A): " << *report.alpha0() << '\n';
  emit(j, as_json, os.str());
  return 0;
}

int cmd_report(const Input& in, bool as_json) {
  const auto [config, source] = in.load();
  const auto report = mfb::run(config, source);
  emit(mfb::to_json(report), as_json, mfb::to_text(report));
  return report.any_failed() ? 2 : 0;
}

int cmd_table1(const std::string& dir, bool as_json, unsigned jobs) {
  const auto summary = mfb::table1_harness(dir, jobs);
  emit(mfb::to_json(summary), as_json, mfb::to_text(summary));
  bool checks_ok = true;
  for (const auto& e : summary.entries) checks_ok = checks_ok && !e.report.any_failed();
  return summary.all_ok() && checks_ok ? 0 : 2;
}

int cmd_generate(const Input& in, const std::string& out_path) {
  const auto [config, source] = in.load();
  std::string text = "# " + source + "\n" + mfb::write_arr(config);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw mfb::Error(mfb::ErrorKind::Parse, "cannot write '" + out_path + "'");
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor fiber boundary homology of line arrangements"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  Input info_in, boundary_in, cover_in, tower_in, report_in, generate_in;
  auto* info = app.add_subcommand("info", "combinatorics, Betti numbers, b1 formula");
  info_in.attach(info);
  auto* boundary = app.add_subcommand("boundary", "plumbing graph and H1 of the boundary manifold");
  boundary_in.attach(boundary);
  std::string export_path;
  boundary->add_option("--presentation", export_path, "write the presentation of pi_1 to this file");
  auto* cover = app.add_subcommand("cover", "H1 of a cyclic cover of the boundary manifold");
  cover_in.attach(cover);
  long modulus = 0;
  cover->add_option("--modulus", modulus, "degree d dividing n (default n)");
  auto* tower = app.add_subcommand("tower", "tower of double covers");
  tower_in.attach(tower);
  auto* report = app.add_subcommand("report", "full pipeline with every check");
  report_in.attach(report);
  auto* table1 = app.add_subcommand("table1", "regression over an annotated corpus directory");
  std::string corpus;
  unsigned jobs = 1;
  table1->add_option("corpus", corpus, "directory of annotated .arr files")->required();
  table1->add_option("--jobs", jobs, "worker threads");
  auto* generate = app.add_subcommand("generate", "write a catalog entry as .arr");
  generate_in.attach(generate);
  std::string out_path;
  generate->add_option("-o,--output", out_path, "output file (default stdout)");
  for (auto* sub : {info, boundary, cover, tower, report, table1, generate})
    sub->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*info) return cmd_info(info_in, as_json);
    if (*boundary) return cmd_boundary(boundary_in, as_json, export_path);
    if (*cover) return cmd_cover(cover_in, as_json, modulus);
    if (*tower) return cmd_tower(tower_in, as_json);
    if (*report) return cmd_report(report_in, as_json);
    if (*table1) return cmd_table1(corpus, as_json, jobs);
    if (*generate) return cmd_generate(generate_in, out_path);
  } catch (const mfb::ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << "error: " << mfb::to_string(v.kind) << ": " << v.message << '\n';
    return 1;
  } catch (const mfb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
