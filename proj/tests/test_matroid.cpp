#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "lpmw/matroid.hpp"
#include "lpmw/paths.hpp"
#include "oracle.hpp"

using namespace lpmw;

namespace {

LatticePath P(const char* s) { return LatticePath::parse(s); }

std::vector<std::vector<int>> basis_family(const LatticePathMatroid& matroid) {
  std::vector<std::vector<int>> family;
  for (const auto& p : matroid.basis_paths()) family.push_back(up_step_indices(p));
  std::sort(family.begin(), family.end());
  return family;
}

}  // namespace

TEST_CASE("make: catalan(3), the cube family, single basis") {
  const auto cat3 = LatticePathMatroid(P("UDUDUD"), P("UUUDDD"));
  CHECK(cat3.ground_size() == 6);
  CHECK(cat3.rank() == 3);
  CHECK(cat3.basis_count() == 5);
  CHECK(cat3 == catalan_matroid(3));

  const auto cube3 = LatticePathMatroid(P("DUDUDU"), P("UDUDUD"));
  CHECK(cube3.basis_count() == 8);
  CHECK(cube3 == cube_matroid(3));

  const auto single = LatticePathMatroid(P("UUDD"), P("UUDD"));
  CHECK(single.basis_count() == 1);

  CHECK_THROWS_AS(LatticePathMatroid(P("UUDD"), P("UDUD")), std::invalid_argument);
}

TEST_CASE("catalan matroid examples") {
  CHECK(basis_family(catalan_matroid(2)) ==
        std::vector<std::vector<int>>{{1, 2}, {1, 3}});

  const auto cat8 = catalan_matroid(8);
  CHECK(cat8.contains_path(path_from_up_set(16, {1, 2, 3, 4, 6, 8, 9, 13})));
  CHECK(cat8.basis_count() == 1430);

  CHECK(basis_family(catalan_matroid(1)) == std::vector<std::vector<int>>{{1}});
}

TEST_CASE("element 1 in every basis of catalan(n); element 2n in none") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& basis : basis_family(catalan_matroid(n))) {
      CHECK(std::binary_search(basis.begin(), basis.end(), 1));
      CHECK_FALSE(std::binary_search(basis.begin(), basis.end(), 2 * n));
    }
  }
}

TEST_CASE("transversal system of catalan(3)") {
  const auto intervals = transversal_system(catalan_matroid(3));
  REQUIRE(intervals.size() == 3);
  CHECK(intervals[0] == Interval{1, 1});
  CHECK(intervals[1] == Interval{2, 3});
  CHECK(intervals[2] == Interval{3, 5});
}

TEST_CASE("transversal system: SDR family equals the basis family") {
  const std::pair<const char*, const char*> bounds[] = {
      {"UDUDUD", "UUUDDD"}, {"DUDUDU", "UDUDUD"}, {"DDUUDU", "UDUUDD"},
      {"UDUDUDUD", "UUUUDDDD"}, {"DUDUUDDU", "UUDUUDDD"}};
  for (const auto& [lo, hi] : bounds) {
    const LatticePathMatroid matroid(P(lo), P(hi));
    std::vector<std::pair<int, int>> intervals;
    for (const auto& iv : transversal_system(matroid)) intervals.push_back({iv.lo, iv.hi});
    CHECK(oracle::sdr_family(intervals, matroid.ground_size()) == basis_family(matroid));
  }
}

TEST_CASE("catalan(n) also represented by the odd singleton prefixes [1],[3],...") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> prefixes;
    for (int i = 1; i <= n; ++i) prefixes.push_back({1, 2 * i - 1});
    CHECK(oracle::sdr_family(prefixes, 2 * n) == basis_family(catalan_matroid(n)));
  }
}

TEST_CASE("single-basis matroid has singleton intervals") {
  const LatticePathMatroid single(P("UDUDDU"), P("UDUDDU"));
  for (const auto& iv : transversal_system(single)) CHECK(iv.lo == iv.hi);
}

TEST_CASE("minor pair counts: worked verdicts on catalan matroids") {
  SUBCASE("catalan(3), e=2, f=4") {
    const auto v = minor_pair_counts(catalan_matroid(3), {}, 2, 4);
    CHECK(v.both_in == 1);
    CHECK(v.both_out == 1);
    CHECK(v.e_in_f_out == 2);
    CHECK(v.f_in_e_out == 1);
    CHECK(v.holds);
    CHECK(v.slack == 1);
  }
  SUBCASE("catalan(3), e=4, f=5") {
    const auto v = minor_pair_counts(catalan_matroid(3), {}, 4, 5);
    CHECK(v.both_in == 0);
    CHECK(v.both_out == 1);
    CHECK(v.e_in_f_out == 2);
    CHECK(v.f_in_e_out == 2);
    CHECK(v.holds);
    CHECK(v.slack == 4);
  }
  SUBCASE("catalan(2), e=2, f=3") {
    const auto v = minor_pair_counts(catalan_matroid(2), {}, 2, 3);
    CHECK(v.both_in == 0);
    CHECK(v.both_out == 0);
    CHECK(v.e_in_f_out == 1);
    CHECK(v.f_in_e_out == 1);
    CHECK(v.holds);
    CHECK(v.slack == 1);
  }
  CHECK_THROWS_AS(minor_pair_counts(catalan_matroid(3), {}, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(minor_pair_counts(catalan_matroid(3), MinorSpec({2}, {}), 2, 4),
                  std::invalid_argument);
}

TEST_CASE("negative correlation holds on catalan matroids and a small sweep") {
  for (int n = 1; n <= 6; ++n) CHECK(is_negatively_correlated(catalan_matroid(n)));
  CHECK(is_negatively_correlated(LatticePathMatroid(P("UUDD"), P("UUDD"))));
  for (int m = 1; m <= 7; ++m) {
    long matroids = 0;
    for_each_lattice_path_matroid(m, [&](const LatticePathMatroid& matroid) {
      ++matroids;
      CHECK(is_negatively_correlated(matroid));
    });
    CHECK(matroids > 0);
  }
}

TEST_CASE("probabilistic form via cross-multiplication on uniform random bases") {
  // Pr[e in B] >= Pr[e in B | f in B]  <=>  |B_e| |B_f| >= |B_ef| |B|
  for (int n = 2; n <= 5; ++n) {
    const auto matroid = catalan_matroid(n);
    const int m = matroid.ground_size();
    const Count total = matroid.basis_count();
    for (int e = 1; e <= m; ++e) {
      for (int f = 1; f <= m; ++f) {
        if (e == f) continue;
        const Count be = matroid.basis_count(StepConstraints({e}, {}));
        const Count bf = matroid.basis_count(StepConstraints({f}, {}));
        const Count bef = matroid.basis_count(StepConstraints({e, f}, {}));
        if (bf == 0) continue;  // conditioning event has probability 0
        CHECK(be * bf >= bef * total);
      }
    }
  }
}

TEST_CASE("ratio form (1) and product form (2) agree when denominators allow") {
  for_each_lattice_path_matroid(6, [&](const LatticePathMatroid& matroid) {
    const int m = matroid.ground_size();
    const Count total = matroid.basis_count();
    for (int e = 1; e < m; ++e) {
      for (int f = e + 1; f <= m; ++f) {
        const auto v = minor_pair_counts(matroid, {}, e, f);
        const Count be = v.both_in + v.e_in_f_out;
        const Count bf = v.both_in + v.f_in_e_out;
        if (bf == 0 || total == 0) continue;
        const bool ratio_form = be * bf >= v.both_in * total;
        CHECK(ratio_form == v.holds);
      }
    }
  });
}

TEST_CASE("check_balanced: catalan and cube instances stay clean") {
  const auto cat4 = check_balanced(catalan_matroid(4), 1000, 7);
  CHECK(cat4.ok());
  CHECK(cat4.minors_checked > 1000);

  CHECK(check_balanced(catalan_matroid(1), 10, 7).ok());
  CHECK(check_balanced(cube_matroid(3), 1000, 7).ok());
}

TEST_CASE("check_balanced is deterministic per seed") {
  const auto a = check_balanced(catalan_matroid(3), 100, 5);
  const auto b = check_balanced(catalan_matroid(3), 100, 5);
  CHECK(a.minors_checked == b.minors_checked);
  CHECK(a.pairs_checked == b.pairs_checked);
}

TEST_CASE("dual: complements, involution, single basis") {
  CHECK(basis_family(dual(catalan_matroid(2))) ==
        std::vector<std::vector<int>>{{2, 4}, {3, 4}});

  for (const char* spec : {"UDUDUD", "DUDUDU", "UUDDUD"}) {
    const LatticePathMatroid matroid(P(spec), P("UUUDDD"));
    CHECK(dual(dual(matroid)) == matroid);
  }

  const LatticePathMatroid single(P("UDUD"), P("UDUD"));
  CHECK(basis_family(dual(single)) == std::vector<std::vector<int>>{{2, 4}});
}

TEST_CASE("dual basis family is exactly the complement family, m <= 10") {
  const std::pair<const char*, const char*> bounds[] = {
      {"UDUDUDUD", "UUUUDDDD"}, {"DUDUDU", "UDUDUD"}, {"DDUUDUUDDU", "UUDUUDDUDD"}};
  for (const auto& [lo, hi] : bounds) {
    const LatticePathMatroid matroid(P(lo), P(hi));
    const int m = matroid.ground_size();
    std::set<std::vector<int>> complements;
    for (const auto& basis : basis_family(matroid)) {
      std::vector<int> comp;
      for (int i = 1; i <= m; ++i)
        if (!std::binary_search(basis.begin(), basis.end(), i)) comp.push_back(i);
      complements.insert(comp);
    }
    const auto dual_family = basis_family(dual(matroid));
    CHECK(std::set<std::vector<int>>(dual_family.begin(), dual_family.end()) == complements);
  }
}

TEST_CASE("dual preserves negative correlation on tested instances") {
  for_each_lattice_path_matroid(6, [&](const LatticePathMatroid& matroid) {
    CHECK(is_negatively_correlated(dual(matroid)));
  });
}

TEST_CASE("basis count equals enumeration for m <= 12 spot checks") {
  const std::pair<const char*, const char*> bounds[] = {
      {"UDUDUDUDUDUD", "UUUUUUDDDDDD"}, {"DUDUDUDUDU", "UDUDUDUDUD"}};
  for (const auto& [lo, hi] : bounds) {
    const LatticePathMatroid matroid(P(lo), P(hi));
    CHECK(matroid.basis_count() == Count(matroid.basis_paths().size()));
  }
}

TEST_CASE("exchange axiom: catalan bases pass, a split pair fails") {
  std::vector<std::vector<int>> cat4;
  for (const auto& p : catalan_matroid(4).basis_paths()) cat4.push_back(up_step_indices(p));
  CHECK(verify_exchange_axiom(cat4));

  CHECK_FALSE(verify_exchange_axiom({{1, 2}, {3, 4}}));
  CHECK(verify_exchange_axiom({{1}}));
  CHECK_THROWS_AS(verify_exchange_axiom({{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(verify_exchange_axiom({}), std::invalid_argument);
}

TEST_CASE("matroid file parsing") {
  std::istringstream good("UDUDUD\nUUUDDD\n");
  const auto matroid = parse_matroid(good);
  CHECK(matroid == catalan_matroid(3));

  std::istringstream synonyms("+-+-\r\n++--\n");
  CHECK(parse_matroid(synonyms) == catalan_matroid(2));

  std::istringstream missing("UDUD\n");
  CHECK_THROWS_AS(parse_matroid(missing), std::invalid_argument);

  std::istringstream bad_order("UUDD\nUDUD\n");
  CHECK_THROWS_AS(parse_matroid(bad_order), std::invalid_argument);

  CHECK_THROWS_AS(read_matroid_file("/nonexistent/file.lpm"), std::invalid_argument);
}

TEST_CASE("for_each_lattice_path_matroid covers the expected counts") {
  long count = 0;
  for_each_lattice_path_matroid(4, [&](const LatticePathMatroid&) { ++count; });
  // r=0:1, r=4:1, r=1: pairs among D..U paths, etc.; pinned by enumeration
  long expect = 0;
  for (int r = 0; r <= 4; ++r) {
    const auto all = enumerate_between(min_path(4, r), max_path(4, r));
    for (const auto& a : all)
      for (const auto& b : all)
        if (dominates(b, a)) ++expect;
  }
  CHECK(count == expect);
}
