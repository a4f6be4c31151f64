#pragma once

// End-to-end evaluation of one arrangement: every invariant, the check list,
// JSON and text rendering, batch runs and the eight-line regression harness.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfb/arr_format.hpp"
#include "mfb/arrangement.hpp"
#include "mfb/boundary.hpp"
#include "mfb/covers.hpp"
#include "mfb/os_algebra.hpp"
#include "mfb/table1.hpp"

namespace mfb {

enum class CheckState { Pass, Fail, NotApplicable };

inline std::string_view to_string(CheckState s) {
  switch (s) {
    case CheckState::Pass: return "pass";
    case CheckState::Fail: return "fail";
    case CheckState::NotApplicable: return "n/a";
  }
  return "n/a";
}

struct Check {
  std::string name;
  CheckState state = CheckState::NotApplicable;
  std::string detail;  // both sides of the comparison, or why it does not apply
};

struct Report {
  std::string source;
  LineConfiguration config;
  MultiplicityTuple tuple;
  BettiProfile betti;
  long b1_formula = 0;
  bool star = false;

  std::size_t plumbing_vertices = 0;
  std::size_t plumbing_edges = 0;
  long graph_b1 = 0;
  std::size_t stable_letters = 0;

  AbelianGroupDesc h1_boundary;
  AbelianGroupDesc h1_milnor;
  std::optional<AbelianGroupDesc> h1_double;  // 2-fold cover, n even
  std::optional<TowerStats> tower;            // n a power of two
  std::optional<ResonanceResult> resonance;   // at (omega_bar', 0), n even

  std::optional<Table1Row> table_row;
  bool chi_discrepancy = false;  // printed chi(U) differs from the computed one

  std::vector<Check> checks;
  std::vector<std::string> observations;

  std::optional<std::size_t> alpha0() const {
    if (!resonance) return std::nullopt;
    return resonance->h_D[1];
  }
  const Check* find_check(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool any_failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.state == CheckState::Fail; });
  }
};

namespace detail {

inline Check compare(std::string name, bool applicable, bool ok, const std::string& detail) {
  return Check{std::move(name), applicable ? (ok ? CheckState::Pass : CheckState::Fail) : CheckState::NotApplicable,
               detail};
}

inline int log2_exact(long n) {
  int m = 0;
  while ((1L << m) < n) ++m;
  return m;
}

}  // namespace detail

struct RunOptions {
  bool tower = true;  // compute every level when n is a power of two
  SpanningTree tree = SpanningTree::BreadthFirst;
};

inline Report run(const LineConfiguration& input, std::string source = {}, const RunOptions& options = {}) {
  require_valid(input);
  require_nondegenerate(input);
  Report r;
  r.source = std::move(source);
  r.config = input;
  r.tuple = multiplicity_tuple(input);
  r.betti = char_poly_and_betti(input);
  r.b1_formula = b1_milnor_boundary(input);
  r.star = assumption_star(input);

  const auto model = boundary_model(input, options.tree);
  r.plumbing_vertices = model.graph.vertices.size();
  r.plumbing_edges = model.graph.edges.size();
  r.graph_b1 = model.graph.first_betti();
  r.stable_letters = model.presentation.count(GenKind::Stable);
  r.h1_boundary = h1(model.presentation);

  const auto& pres = model.simplified.presentation;
  const auto& omega = model.omega_simplified;
  const long n = input.n;
  const bool power2 = is_power_of_two(n);
  if (power2 && options.tower) {
    r.tower = tower_stats(pres, omega, detail::log2_exact(n));
    r.h1_milnor = r.tower->levels.back().h1;
  } else {
    r.h1_milnor = h1_cover(pres, omega, n);
  }
  if (n % 2 == 0) {
    r.h1_double = r.tower ? r.tower->levels.at(1).h1 : h1_cover(pres, omega, 2);
    const auto dbl = double_algebra(build_os2(decone(input, input.n)));
    r.resonance = resonance(dbl, omega_bar_prime(dbl.base(), input.n), BitVector(dbl.base().dim(2)));
  }
  r.table_row = table1_lookup(r.tuple);
  r.chi_discrepancy = r.table_row && r.table_row->chi_U != r.betti.chi_U;

  // ---- checks
  const long bU = r.betti.b_U[1] + r.betti.b_U[2];
  const long rankF = static_cast<long>(r.h1_milnor.free_rank);
  const long rankU = static_cast<long>(r.h1_boundary.free_rank);
  const long chi = r.betti.chi_U;
  const long tau2 = static_cast<long>(r.h1_milnor.even_torsion());
  auto num = [](long v) { return std::to_string(v); };

  r.checks.push_back(detail::compare("thm_1_1", true, rankF == r.b1_formula,
                                     "rank H1(dF) = " + num(rankF) + ", formula = " + num(r.b1_formula)));
  r.checks.push_back(detail::compare("prop_4_1", r.star, rankF == rankU,
                                     r.star ? "rank H1(dF) = " + num(rankF) + ", rank H1(dU) = " + num(rankU)
                                            : "assumption (*) fails"));
  r.checks.push_back(detail::compare("boundary_h1", true, r.h1_boundary.torsion_free() && rankU == bU,
                                     "H1(dU) = " + r.h1_boundary.to_string() + ", b1(U) + b2(U) = " + num(bU)));
  r.checks.push_back(detail::compare("graph_cycles", true,
                                     r.graph_b1 == r.betti.b_U[2] && static_cast<long>(r.stable_letters) == r.graph_b1,
                                     "graph b1 = " + num(r.graph_b1) + ", stable letters = " +
                                         num(static_cast<long>(r.stable_letters)) + ", b2(U) = " + num(r.betti.b_U[2])));

  if (r.tower) {
    std::string levels;
    for (int k = 0; k <= r.tower->m(); ++k) levels += (k ? ", " : "") + num(r.tower->b1bar(k));
    r.checks.push_back(detail::compare("prop_3_1", true, r.tower->mod2_monotone(), "mod-2 Betti along tower: " + levels));
  } else {
    r.checks.push_back(Check{"prop_3_1", CheckState::NotApplicable, "line count is not a power of two"});
  }

  if (r.h1_double && r.resonance) {
    const long lhs = static_cast<long>(r.h1_double->mod2_betti()) - rankU;
    const long a0 = static_cast<long>(*r.alpha0());
    r.checks.push_back(detail::compare("thm_3_2_crosscheck", true, lhs == a0,
                                       "b1bar(double) - b1(dU) = " + num(lhs) + ", alpha0 = " + num(a0)));
    r.checks.push_back(detail::compare("prop_2_6", true, r.resonance->lower_bound_ok && a0 >= chi,
                                       "dim H1(D(A)) = " + num(a0) + ", chi(U) = " + num(chi)));
  } else {
    r.checks.push_back(Check{"thm_3_2_crosscheck", CheckState::NotApplicable, "line count is odd"});
    r.checks.push_back(Check{"prop_2_6", CheckState::NotApplicable, "line count is odd"});
  }

  const bool main_applies = power2 && r.star;
  const std::string why_not = !power2 ? "line count is not a power of two" : "assumption (*) fails";
  const int m = power2 ? detail::log2_exact(n) : 0;
  r.checks.push_back(detail::compare("main_lower", main_applies, tau2 >= chi,
                                     main_applies ? "tau2 = " + num(tau2) + ", chi(U) = " + num(chi) : why_not));
  r.checks.push_back(detail::compare("cor_1_5_upper", main_applies, tau2 <= ((1L << m) - 1) * chi,
                                     main_applies ? "tau2 = " + num(tau2) + ", (2^m - 1) chi(U) = " +
                                                        num(((1L << m) - 1) * chi)
                                                  : why_not));
  if (main_applies && r.tower && r.alpha0()) {
    const long a0 = static_cast<long>(*r.alpha0());
    const long tau_top = r.tower->tau(r.tower->m());
    r.checks.push_back(detail::compare("cor_3_7", true, tau_top >= a0 && a0 >= chi,
                                       "tau(m) = " + num(tau_top) + ", alpha0 = " + num(a0) + ", chi(U) = " + num(chi)));
    bool flat = true;
    std::string rhos;
    for (int k = 0; k < r.tower->m(); ++k) {
      flat = flat && r.tower->rho(k) == 0;
      rhos += (k ? ", " : "") + num(r.tower->rho(k));
    }
    r.checks.push_back(detail::compare("rho_zero", true, flat, "rho by level: " + rhos));
  } else {
    r.checks.push_back(Check{"cor_3_7", CheckState::NotApplicable, why_not});
    r.checks.push_back(Check{"rho_zero", CheckState::NotApplicable, why_not});
  }

  if (r.table_row) {
    const auto expected = parse_torsion(r.table_row->torsion);
    const auto got = format_torsion(r.h1_milnor.torsion);
    r.checks.push_back(detail::compare("table1_match", true, expected == r.h1_milnor.torsion,
                                       "computed " + got + ", table " + std::string(r.table_row->torsion)));
  } else {
    r.checks.push_back(Check{"table1_match", CheckState::NotApplicable,
                             n == 8 ? "tuple " + r.tuple.to_string() + " not in table" : "line count is not 8"});
  }

  // ---- observations
  if (r.chi_discrepancy)
    r.observations.push_back("table lists chi(U) = " + num(r.table_row->chi_U) + ", computed 1 - b1(U) + b2(U) = " +
                             num(chi));
  if (n % 2 == 0 || power2)
    r.observations.push_back(std::string("even torsion rank ") + (tau2 == chi ? "equals" : "differs from") +
                             " chi(U): " + num(tau2) + " vs " + num(chi));
  if (!r.star && !r.h1_milnor.torsion.empty())
    r.observations.push_back("torsion orders without (*): " + format_torsion(r.h1_milnor.torsion));
  return r;
}

// ---------------------------------------------------------------------------
// Rendering.

inline nlohmann::ordered_json to_json(const AbelianGroupDesc& g) {
  nlohmann::ordered_json j;
  j["free_rank"] = g.free_rank;
  auto torsion = nlohmann::ordered_json::array();
  for (const auto& d : g.torsion) torsion.push_back(d.str());
  j["torsion"] = torsion;
  j["text"] = g.to_string();
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["source"] = r.source;
  j["n"] = r.config.n;
  j["flats"] = r.config.flats;
  j["tuple"] = r.tuple.counts;
  j["double_points"] = r.tuple.doubles;
  j["betti"] = {{"b_M", r.betti.b_M}, {"b_U", r.betti.b_U}, {"chi_U", r.betti.chi_U}, {"charpoly", r.betti.charpoly}};
  j["b1_formula"] = r.b1_formula;
  j["assumption_star"] = r.star;
  j["plumbing"] = {{"vertices", r.plumbing_vertices},
                   {"edges", r.plumbing_edges},
                   {"graph_b1", r.graph_b1},
                   {"stable_letters", r.stable_letters}};
  j["h1_boundary"] = to_json(r.h1_boundary);
  j["h1_milnor"] = to_json(r.h1_milnor);
  j["h1_double"] = r.h1_double ? to_json(*r.h1_double) : nlohmann::ordered_json(nullptr);
  if (r.resonance) {
    const auto& z = *r.resonance;
    j["resonance"] = {{"h_A", z.h_A}, {"h_Abar", z.h_Abar}, {"h_D", z.h_D}, {"d", z.d}, {"beta", z.beta}, {"alpha0", z.h_D[1]}};
  } else {
    j["resonance"] = nullptr;
  }
  if (r.tower) {
    auto levels = nlohmann::ordered_json::array();
    for (int k = 0; k <= r.tower->m(); ++k) {
      nlohmann::ordered_json level;
      level["k"] = k;
      level["degree"] = r.tower->levels[static_cast<std::size_t>(k)].degree;
      level["h1"] = to_json(r.tower->levels[static_cast<std::size_t>(k)].h1);
      level["b1"] = r.tower->b1(k);
      level["b1bar"] = r.tower->b1bar(k);
      level["tau"] = r.tower->tau(k);
      level["alpha"] = k < r.tower->m() ? nlohmann::ordered_json(r.tower->alpha(k)) : nlohmann::ordered_json(nullptr);
      level["rho"] = k < r.tower->m() ? nlohmann::ordered_json(r.tower->rho(k)) : nlohmann::ordered_json(nullptr);
      levels.push_back(level);
    }
    j["tower"] = levels;
  } else {
    j["tower"] = nullptr;
  }
  if (r.table_row) {
    j["table1"] = {{"torsion", r.table_row->torsion}, {"chi_U", r.table_row->chi_U}, {"star", r.table_row->star},
                   {"remark", r.table_row->remark}};
  } else {
    j["table1"] = nullptr;
  }
  j["chi_discrepancy"] = r.chi_discrepancy;
  auto checks = nlohmann::ordered_json::object();
  for (const auto& c : r.checks) checks[c.name] = {{"state", to_string(c.state)}, {"detail", c.detail}};
  j["checks"] = checks;
  j["observations"] = r.observations;
  return j;
}

/// Human-readable summary.
inline std::string to_text(const Report& r) {
  std::ostringstream os;
  if (!r.source.empty()) os << "source            " << r.source << '\n';
  os << "lines             " << r.config.n << '\n';
  os << "tuple (n_3..n_n)  " << r.tuple.to_string() << ", double points " << r.tuple.doubles << '\n';
  os << "b(U)              " << r.betti.b_U[0] << ' ' << r.betti.b_U[1] << ' ' << r.betti.b_U[2]
     << "   chi(U) = " << r.betti.chi_U << '\n';
  os << "assumption (*)    " << (r.star ? "yes" : "no") << '\n';
  os << "b1(dF) formula    " << r.b1_formula << '\n';
  os << "plumbing graph    " << r.plumbing_vertices << " vertices, " << r.plumbing_edges << " edges, b1 "
     << r.graph_b1 << '\n';
  os << "H1(dU)            " << r.h1_boundary.to_string() << '\n';
  os << "H1(dF)            " << r.h1_milnor.to_string() << '\n';
  if (r.alpha0()) os << "alpha0            " << *r.alpha0() << '\n';
  if (r.tower) {
    std::size_t width = 2;
    for (const auto& level : r.tower->levels) width = std::max(width, level.h1.to_string().size());
    auto row = [&](const std::string& k, const std::string& h, const std::vector<std::string>& cols) {
      os << (k == "k" ? "tower             " : "                  ") << std::left << std::setw(3) << k
         << std::setw(static_cast<int>(width) + 2) << h << std::right;
      for (const auto& c : cols) os << std::setw(7) << c;
      os << '\n';
    };
    row("k", "H1", {"b1", "b1bar", "tau", "alpha", "rho"});
    for (int k = 0; k <= r.tower->m(); ++k) {
      const bool inner = k < r.tower->m();
      row(std::to_string(k), r.tower->levels[static_cast<std::size_t>(k)].h1.to_string(),
          {std::to_string(r.tower->b1(k)), std::to_string(r.tower->b1bar(k)), std::to_string(r.tower->tau(k)),
           inner ? std::to_string(r.tower->alpha(k)) : "-", inner ? std::to_string(r.tower->rho(k)) : "-"});
    }
  }
  os << "checks\n";
  for (const auto& c : r.checks) {
    std::string name = c.name;
    name.resize(std::max<std::size_t>(name.size(), 20), ' ');
    os << "  " << name << to_string(c.state) << "  " << c.detail << '\n';
  }
  for (const auto& o : r.observations) os << "note: " << o << '\n';
  return os.str();
}

/// One row per report in the column layout of the published eight-line table.
inline std::string table_text(const std::vector<Report>& reports) {
  std::vector<std::array<std::string, 5>> rows{{"tuple", "Tor H1(dF)", "chi(U)", "(*)", "remark"}};
  for (const auto& r : reports) {
    std::string remark = r.table_row ? std::string(r.table_row->remark) : "";
    if (r.chi_discrepancy) remark += (remark.empty() ? "" : "; ") + std::string("table chi differs");
    rows.push_back({r.tuple.to_string(), r.h1_milnor.torsion_string(), std::to_string(r.betti.chi_U),
                    r.star ? "o" : "", remark});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < 5; ++c) {
      std::string cell = row[c];
      cell.resize(width[c], ' ');
      line += (c ? " | " : "") + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Batches.

struct BatchItem {
  std::optional<Report> report;
  std::string error;  // set when the item failed
};

/// Runs configurations on up to `parallelism` threads; output order follows
/// input order and a failure affects only its own item.
inline std::vector<BatchItem> batch(const std::vector<LineConfiguration>& configs, unsigned parallelism = 1,
                                    const RunOptions& options = {}) {
  std::vector<BatchItem> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
      try {
        out[i].report = run(configs[i], {}, options);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Regression corpus: .arr files carrying "# expect-tuple: (..)" and
// "# expect-torsion: d^k ..." comment lines.

struct Annotated {
  std::string path;
  LineConfiguration config;
  std::string expect_tuple;
  std::vector<BigInt> expect_torsion;
};

inline Annotated load_annotated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Annotated a;
  a.path = path.filename().string();
  std::optional<std::string> tuple, torsion;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto hash = line.find('#');
    if (hash == std::string::npos) continue;
    std::string comment = line.substr(hash + 1);
    comment.erase(0, comment.find_first_not_of(" \t"));
    auto value_of = [&](std::string_view key) -> std::optional<std::string> {
      if (!comment.starts_with(key)) return std::nullopt;
      std::string v = comment.substr(key.size());
      v.erase(0, v.find_first_not_of(" \t"));
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.pop_back();
      return v;
    };
    if (auto v = value_of("expect-tuple:")) tuple = *v;
    if (auto v = value_of("expect-torsion:")) torsion = *v;
  }
  if (!tuple) throw Error(ErrorKind::MissingAnnotation, a.path + ": no expect-tuple annotation");
  if (!torsion) throw Error(ErrorKind::MissingAnnotation, a.path + ": no expect-torsion annotation");
  a.expect_tuple = *tuple;
  a.expect_torsion = parse_torsion(*torsion);
  std::istringstream body(text);
  a.config = parse_and_validate(body);
  return a;
}

struct Table1Entry {
  std::string file;
  std::string tuple;
  std::string expect_tuple;
  std::string torsion;
  std::string expect_torsion;
  bool tuple_ok = false;
  bool torsion_ok = false;
  bool agrees_with_table = false;  // annotation matches the embedded table row
  Report report;
};

struct Table1Summary {
  std::vector<Table1Entry> entries;
  /// tuple -> whether every configuration with that tuple has the same H1(dF)
  std::map<std::string, bool> group_consistent;

  bool all_ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Table1Entry& e) { return e.tuple_ok && e.torsion_ok && e.agrees_with_table; }) &&
           std::all_of(group_consistent.begin(), group_consistent.end(), [](const auto& kv) { return kv.second; });
  }
};

inline Table1Summary table1_harness(const std::filesystem::path& corpus_dir, unsigned parallelism = 1) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".arr") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<Annotated> inputs;
  std::vector<LineConfiguration> configs;
  for (const auto& f : files) {
    inputs.push_back(load_annotated(f));
    configs.push_back(inputs.back().config);
  }
  auto results = batch(configs, parallelism);

  Table1Summary s;
  std::map<std::string, std::vector<const Report*>> groups;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!results[i].report) throw Error(ErrorKind::Parse, inputs[i].path + ": " + results[i].error);
    Table1Entry e;
    e.file = inputs[i].path;
    e.report = std::move(*results[i].report);
    e.report.source = e.file;
    e.tuple = e.report.tuple.to_string();
    e.expect_tuple = inputs[i].expect_tuple;
    e.torsion = format_torsion(e.report.h1_milnor.torsion);
    e.expect_torsion = format_torsion(inputs[i].expect_torsion);
    e.tuple_ok = e.tuple == e.expect_tuple;
    e.torsion_ok = e.report.h1_milnor.torsion == inputs[i].expect_torsion;
    e.agrees_with_table = e.report.table_row && parse_torsion(e.report.table_row->torsion) == inputs[i].expect_torsion;
    s.entries.push_back(std::move(e));
  }
  for (const auto& e : s.entries) groups[e.tuple].push_back(&e.report);
  for (const auto& [tuple, reports] : groups)
    s.group_consistent[tuple] = std::all_of(reports.begin(), reports.end(), [&](const Report* r) {
      return r->h1_milnor == reports.front()->h1_milnor;
    });
  return s;
}

inline std::string to_text(const Table1Summary& s) {
  std::vector<Report> reports;
  for (const auto& e : s.entries) reports.push_back(e.report);
  std::ostringstream os;
  os << table_text(reports) << '\n';
  for (const auto& e : s.entries)
    os << (e.tuple_ok && e.torsion_ok && e.agrees_with_table ? "ok    " : "FAIL  ") << e.file << "  tuple "
       << e.tuple << "  torsion " << e.torsion << " (expected " << e.expect_torsion << ")\n";
  for (const auto& [tuple, same] : s.group_consistent)
    os << "group " << tuple << (same ? " homology coincides" : " homology differs") << '\n';
  return os.str();
}

inline nlohmann::ordered_json to_json(const Table1Summary& s) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& e : s.entries)
    rows.push_back({{"file", e.file},
                    {"tuple", e.tuple},
                    {"expect_tuple", e.expect_tuple},
                    {"torsion", e.torsion},
                    {"expect_torsion", e.expect_torsion},
                    {"tuple_ok", e.tuple_ok},
                    {"torsion_ok", e.torsion_ok},
                    {"agrees_with_table", e.agrees_with_table},
                    {"chi_U", e.report.betti.chi_U}});
  j["rows"] = rows;
  j["groups"] = s.group_consistent;
  j["all_ok"] = s.all_ok();
  return j;
}

}  // namespace mfb
