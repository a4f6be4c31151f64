// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfb/catalog.hpp"
#include "mfb/covers.hpp"
#include "mfb/pipeline.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mfb;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << "[" << what << "] ";
    }
  }
};

const Table1Summary& corpus() {
  static const Table1Summary s = table1_harness(MFB_CORPUS_DIR, 4);
  return s;
}

const Report& corpus_report(std::string_view file) {
  for (const auto& e : corpus().entries)
    if (e.file == file) return e.report;
  throw Error(ErrorKind::Parse, "corpus file missing: " + std::string(file));
}

std::string torsion_of(const Report& r) { return format_torsion(r.h1_milnor.torsion); }

void c1(Outcome& o) {
  const auto r = run(generic(8));
  o.expect(r.h1_milnor.to_string() == "Z^28 + Z_8^15", "H1 = " + r.h1_milnor.to_string());
  o.expect(r.b1_formula == 28, "formula rank");
  o.expect(static_cast<long>(r.h1_milnor.even_torsion()) == r.betti.chi_U && r.betti.chi_U == 15, "tau = chi = 15");
  o.note << "H1(dF) = " << r.h1_milnor.to_string() << ", tau = chi(U) = " << r.betti.chi_U;
}

void c2(Outcome& o) {
  const auto& r = corpus_report("maclane.arr");
  o.expect(r.config == maclane(), "fixture equals search result");
  o.expect(r.tuple.to_string() == "(8,0,0,0,0,0)", "tuple " + r.tuple.to_string());
  o.expect(r.betti.chi_U == 7, "chi " + std::to_string(r.betti.chi_U));
  o.expect(torsion_of(r) == "8^7", "torsion " + torsion_of(r));
  o.note << "tuple " << r.tuple.to_string() << ", chi(U) = " << r.betti.chi_U << ", Tor = " << torsion_of(r);
}

void c3(Outcome& o) {
  const auto& r = corpus_report("near_pencil8.arr");
  o.expect(r.b1_formula == 13 && r.h1_milnor.free_rank == 13, "rank");
  o.expect(r.h1_milnor.torsion.empty(), "torsion");
  o.note << "formula " << r.b1_formula << ", SNF " << r.h1_milnor.to_string();
}

void c4(Outcome& o) {
  const auto& r = corpus_report("pencil8.arr");
  o.expect(r.b1_formula == 49 && r.h1_milnor.free_rank == 49, "rank");
  o.expect(r.h1_milnor.torsion.empty(), "torsion");
  o.expect(r.betti.chi_U == 1 - r.betti.b_U[1] + r.betti.b_U[2], "chi formula");
  o.expect(r.chi_discrepancy, "discrepancy flagged");
  o.note << "formula " << r.b1_formula << ", SNF " << r.h1_milnor.to_string() << ", chi(U) = " << r.betti.chi_U
         << " vs table " << (r.table_row ? std::to_string(r.table_row->chi_U) : "?");
}

void c5(Outcome& o) {
  const std::vector<std::pair<std::string, std::string>> rows{
      {"(1,0,0,0,0,0)", "8^14"}, {"(2,0,0,0,0,0)", "8^13"}, {"(3,0,0,0,0,0)", "8^12"},
      {"(0,0,0,1,0,0)", "4^4 8"}, {"(1,0,0,1,0,0)", "4^4"},  {"(0,1,0,0,0,0)", "2^2 8^10"}};
  for (const auto& [tuple, torsion] : rows) {
    std::size_t seen = 0;
    for (const auto& e : corpus().entries) {
      if (e.tuple != tuple) continue;
      ++seen;
      o.expect(e.torsion == torsion && e.agrees_with_table, e.file + " gave " + e.torsion);
    }
    o.expect(seen > 0, "no corpus entry for " + tuple);
  }
  if (o.ok) o.note << rows.size() << " rows reproduced";
}

void c6(Outcome& o) {
  std::size_t checked = 0;
  for (const auto& e : corpus().entries) {
    const auto& r = e.report;
    if (r.config.n % 2 || !r.h1_double || !r.alpha0()) continue;
    const long snf = static_cast<long>(r.h1_double->mod2_betti()) - static_cast<long>(r.h1_boundary.free_rank);
    o.expect(static_cast<long>(*r.alpha0()) == snf,
             e.file + ": " + std::to_string(*r.alpha0()) + " vs " + std::to_string(snf));
    ++checked;
  }
  o.expect(checked == corpus().entries.size(), "every corpus entry has even n");
  o.note << checked << " configurations";
}

void c7(Outcome& o) {
  std::mt19937 rng(2718);
  std::bernoulli_distribution bit(0.5);
  const std::vector<std::string> files{"generic8.arr", "maclane.arr", "near_pencil8.arr", "sextuple.arr",
                                       "quadruple_triple.arr"};
  std::size_t samples = 0;
  for (const auto& f : files) {
    const auto& r = corpus_report(f);
    const auto dbl = double_algebra(build_os2(decone(r.config, r.config.n)));
    for (int t = 0; t < 100; ++t) {
      BitVector a(dbl.base().dim(1)), b(dbl.base().dim(2));
      do {
        for (std::size_t i = 0; i < a.size(); ++i) a.set(i, bit(rng));
      } while (!a.any());
      for (std::size_t i = 0; i < b.size(); ++i) b.set(i, bit(rng));
      const auto res = resonance(dbl, a, b);
      o.expect(static_cast<long>(res.h_D[1]) >= r.betti.chi_U, f);
      ++samples;
    }
  }
  o.note << samples << " samples";
}

void c8(Outcome& o) {
  for (const auto& e : corpus().entries) {
    const auto& r = e.report;
    o.expect(r.h1_boundary.torsion_free() &&
                 static_cast<long>(r.h1_boundary.free_rank) == r.betti.b_U[1] + r.betti.b_U[2],
             e.file + ": " + r.h1_boundary.to_string());
  }
  o.note << corpus().entries.size() << " configurations";
}

void c9(Outcome& o) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<int> dim(1, 5);
  int snf_cases = 0;
  for (; snf_cases < 200; ++snf_cases) {
    const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    std::vector<std::vector<long>> m(r, std::vector<long>(c));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    o.expect(smith_normal_form(m).diagonal == oracle::minor_gcd_invariants(m), "SNF trial " + std::to_string(snf_cases));
  }

  int poset_cases = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<LineConfiguration> configs{generic(n)};
    if (n >= 3) configs.push_back(pencil(n));
    for (int k = 0; k < 10; ++k) configs.push_back(sample::random_config(rng, n, 5, 5));
    for (const auto& c : configs) {
      o.expect(char_poly_and_betti(c).charpoly == oracle::whitney_charpoly(c), "Betti n=" + std::to_string(n));
      ++poset_cases;
    }
  }

  GroupPresentation free2, torus;
  free2.add_generator("a");
  free2.add_generator("b");
  const auto x = torus.add_generator("x"), y = torus.add_generator("y");
  torus.add_relator(commutator(power(x, 1), power(y, 1)));
  int rs_cases = 0;
  for (long d = 1; d <= 6; ++d, rs_cases += 2) {
    // index-d subgroup of F_2 is free of rank d + 1; every finite cover of T^2 is T^2
    o.expect(h1_cover(free2, CharacterMap{d, {1, 0}}, d) == AbelianGroupDesc{static_cast<std::size_t>(d + 1), {}},
             "free d=" + std::to_string(d));
    o.expect(h1_cover(torus, CharacterMap{d, {1, 1}}, d) == AbelianGroupDesc{2, {}}, "torus d=" + std::to_string(d));
  }
  o.note << snf_cases << " SNF, " << poset_cases << " Betti, " << rs_cases << " R-S cases";
}

void c10(Outcome& o) {
  std::size_t monotone = 0, chains = 0;
  for (const auto& e : corpus().entries) {
    const auto& r = e.report;
    if (!r.tower) continue;
    o.expect(r.tower->mod2_monotone(), e.file + " monotone");
    ++monotone;
    if (!r.star || r.config.n != 8 || !r.alpha0()) continue;
    for (int k = 0; k < r.tower->m(); ++k) o.expect(r.tower->rho(k) == 0, e.file + " rho(" + std::to_string(k) + ")");
    const long tau3 = r.tower->tau(3), a0 = static_cast<long>(*r.alpha0());
    o.expect(tau3 >= a0 && a0 >= r.betti.chi_U,
             e.file + " chain " + std::to_string(tau3) + " >= " + std::to_string(a0) + " >= " + std::to_string(r.betti.chi_U));
    ++chains;
  }
  o.note << monotone << " towers, " << chains << " chains";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"generic n=8", c1},
      {"MacLane fixture", c2},
      {"near-pencil n=8", c3},
      {"pencil n=8", c4},
      {"constructed rows", c5},
      {"resonance vs double cover", c6},
      {"resonance lower bound on random pairs", c7},
      {"boundary manifold homology", c8},
      {"oracle suites", c9},
      {"tower monotonicity, rho and chain", c10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << "  ("
              << o.note.str() << ")\n";
  }
  return failed ? 1 : 0;
}
