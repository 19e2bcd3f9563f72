#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <utility>

#include "lpmw/injection.hpp"
#include "lpmw/matroid.hpp"
#include "lpmw/paths.hpp"
#include "lpmw/rng.hpp"

using namespace lpmw;

namespace {

LatticePath P(const char* s) { return LatticePath::parse(s); }

// Test-side splice: base with steps [lo..hi] replaced from donor.
std::string splice(const std::string& base, const std::string& donor, int lo, int hi) {
  std::string out = base;
  for (int i = lo; i <= hi; ++i) out[static_cast<std::size_t>(i - 1)] = donor[static_cast<std::size_t>(i - 1)];
  return out;
}

std::vector<int> gap_of(const LatticePath& p, const LatticePath& q) {
  std::vector<int> gap{0};
  const auto hp = heights(p), hq = heights(q);
  for (int i = 1; i <= p.length(); ++i) gap.push_back(hp.at(i) - hq.at(i));
  return gap;
}

}  // namespace

TEST_CASE("worked example: case 1 with suffix swap at x = 3") {
  const auto matroid = catalan_matroid(3);
  const auto move = classify_and_apply(matroid, 2, 4, P("UUDUDD"), P("UDUDUD"));
  CHECK(move.tag == InjectionCase::Case1);
  CHECK(move.pivot == 3);
  CHECK(move.up_at_e.str() == "UUDDUD");
  CHECK(move.up_at_f.str() == "UDUUDD");

  const auto back = invert(matroid, 2, 4, move.up_at_e, move.up_at_f);
  REQUIRE(back.has_value());
  CHECK(back->first.str() == "UUDUDD");
  CHECK(back->second.str() == "UDUDUD");
}

TEST_CASE("worked example: case 2 with block swap [4..5]") {
  const auto matroid = catalan_matroid(4);
  const auto move = classify_and_apply(matroid, 2, 4, P("UUUUDDDD"), P("UDUDUUDD"));
  CHECK(move.tag == InjectionCase::Case2);
  CHECK(move.pivot == 5);
  CHECK(move.up_at_e.str() == "UUUDUDDD");
  CHECK(move.up_at_f.str() == "UDUUDUDD");
  CHECK(heights(move.up_at_e).values() == std::vector<int>{1, 2, 3, 2, 3, 2, 1, 0});
  CHECK(heights(move.up_at_f).values() == std::vector<int>{1, 0, 1, 2, 1, 2, 1, 0});

  const auto back = invert(matroid, 2, 4, move.up_at_e, move.up_at_f);
  REQUIRE(back.has_value());
  CHECK(back->first.str() == "UUUUDDDD");
  CHECK(back->second.str() == "UDUDUUDD");
}

TEST_CASE("worked example: case 2 fails, case 3 splices at x = 3") {
  const auto matroid = catalan_matroid(4);
  const auto move = classify_and_apply(matroid, 5, 6, P("UUDDUUDD"), P("UUUUDDDD"));
  CHECK(move.tag == InjectionCase::Case3);
  CHECK(move.pivot == 3);
  CHECK(move.up_at_e.str() == "UUUDUDDD");
  CHECK(move.up_at_f.str() == "UUDUDUDD");

  const auto back = invert(matroid, 5, 6, move.up_at_e, move.up_at_f);
  REQUIRE(back.has_value());
  CHECK(back->first.str() == "UUDDUUDD");
  CHECK(back->second.str() == "UUUUDDDD");
}

TEST_CASE("classify_and_apply rejects bad inputs") {
  const auto matroid = catalan_matroid(3);
  CHECK_THROWS_AS(classify_and_apply(matroid, 4, 2, P("UUDUDD"), P("UDUDUD")),
                  std::invalid_argument);
  // q with an up-step at e
  CHECK_THROWS_AS(classify_and_apply(matroid, 2, 4, P("UUDUDD"), P("UUDDUD")),
                  std::invalid_argument);
  // p outside the bounds (not a Dyck path)
  CHECK_THROWS_AS(classify_and_apply(matroid, 2, 4, P("DUUUDD"), P("UDUDUD")),
                  std::invalid_argument);
}

TEST_CASE("invert returns nothing outside the image") {
  // codomain pair not produced by any domain pair at n=3, e=2, f=4
  const auto matroid = catalan_matroid(3);
  CHECK_FALSE(invert(matroid, 2, 4, P("UUUDDD"), P("UDUUDD")).has_value());

  // empty domain at n=2, e=2, f=3: nothing is in the image
  CHECK_FALSE(invert(catalan_matroid(2), 2, 3, P("UUDD"), P("UDUD")).has_value());

  CHECK_THROWS_AS(invert(matroid, 2, 4, P("UDUUDD"), P("UUUDDD")), std::invalid_argument);
}

TEST_CASE("verify_injection on the worked instances") {
  const auto r34 = verify_injection(catalan_matroid(3), 2, 4);
  CHECK(r34.domain_size == 1);
  CHECK(r34.image_size == 1);
  CHECK(r34.injective());

  const auto r23 = verify_injection(catalan_matroid(2), 2, 3);
  CHECK(r23.domain_size == 0);
  CHECK(r23.injective());
}

TEST_CASE("bit engine and path-level map agree move for move") {
  for (int m = 2; m <= 6; ++m) {
    for_each_lattice_path_matroid(m, [&](const LatticePathMatroid& matroid) {
      const auto bases = matroid.basis_paths();
      for (int e = 1; e < m; ++e) {
        for (int f = e + 1; f <= m; ++f) {
          // replicate the verification with the general layer
          InjectionReport general;
          std::map<std::pair<std::string, std::string>, int> image;
          for (const auto& p : bases) {
            if (p.step(e) != Step::Up || p.step(f) != Step::Up) continue;
            for (const auto& q : bases) {
              if (q.step(e) != Step::Down || q.step(f) != Step::Down) continue;
              ++general.domain_size;
              const auto move = classify_and_apply(matroid, e, f, p, q);
              ++general.case_tally[static_cast<std::size_t>(move.tag)];
              REQUIRE(matroid.contains_path(move.up_at_e));
              REQUIRE(matroid.contains_path(move.up_at_f));
              ++image[{move.up_at_e.str(), move.up_at_f.str()}];
              const auto back = invert(matroid, e, f, move.up_at_e, move.up_at_f);
              REQUIRE(back.has_value());
              REQUIRE(back->first == p);
              REQUIRE(back->second == q);
            }
          }
          general.image_size = static_cast<long long>(image.size());

          const auto fast = verify_injection(matroid, e, f);
          CHECK(fast.domain_size == general.domain_size);
          CHECK(fast.image_size == general.image_size);
          CHECK(fast.case_tally == general.case_tally);
          CHECK(fast.violation_count == 0);
        }
      }
    });
  }
}

TEST_CASE("exhaustive sweep: injective on all matroids with m <= 8") {
  for (int m = 1; m <= 8; ++m) {
    InjectionReport merged;
    for_each_lattice_path_matroid(
        m, [&](const LatticePathMatroid& matroid) { merged.merge(verify_injection_all(matroid)); });
    CHECK(merged.injective());
    CHECK(merged.violation_count == 0);
    CHECK(merged.case_tally[0] + merged.case_tally[1] + merged.case_tally[2] ==
          merged.domain_size);
  }
  for (int n = 2; n <= 5; ++n) CHECK(verify_injection_all(catalan_matroid(n)).injective());
}

TEST_CASE("outputs preserve any minor constraints disjoint from {e, f}") {
  Rng rng(97);
  for_each_lattice_path_matroid(6, [&](const LatticePathMatroid& matroid) {
    const int m = matroid.ground_size();
    const auto bases = matroid.basis_paths();
    for (int trial = 0; trial < 3; ++trial) {
      const int e = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
      const int f = e + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - e)));
      // a random disjoint (I, J) avoiding e, f
      std::vector<int> contracted, deleted;
      for (int i = 1; i <= m; ++i) {
        if (i == e || i == f) continue;
        const auto coin = rng.below(4);
        if (coin == 0) contracted.push_back(i);
        if (coin == 1) deleted.push_back(i);
      }
      const StepConstraints minor(contracted, deleted);
      const auto satisfies = [&](const LatticePath& p) {
        for (int i : minor.forced_up())
          if (p.step(i) != Step::Up) return false;
        for (int i : minor.forced_down())
          if (p.step(i) != Step::Down) return false;
        return true;
      };
      for (const auto& p : bases) {
        if (p.step(e) != Step::Up || p.step(f) != Step::Up || !satisfies(p)) continue;
        for (const auto& q : bases) {
          if (q.step(e) != Step::Down || q.step(f) != Step::Down || !satisfies(q)) continue;
          const auto move = classify_and_apply(matroid, e, f, p, q);
          CHECK(satisfies(move.up_at_e));
          CHECK(satisfies(move.up_at_f));
        }
      }
    }
  });
}

TEST_CASE("case-3 outputs never admit the case-2 inverse") {
  // the recovery argument: un-doing case 2 on a case-3 result must fail,
  // otherwise the case could not be identified from the output
  for_each_lattice_path_matroid(7, [&](const LatticePathMatroid& matroid) {
    const int m = matroid.ground_size();
    const auto bases = matroid.basis_paths();
    for (int e = 1; e < m; ++e) {
      for (int f = e + 1; f <= m; ++f) {
        for (const auto& p : bases) {
          if (p.step(e) != Step::Up || p.step(f) != Step::Up) continue;
          for (const auto& q : bases) {
            if (q.step(e) != Step::Down || q.step(f) != Step::Down) continue;
            const auto move = classify_and_apply(matroid, e, f, p, q);
            if (move.tag != InjectionCase::Case3) continue;
            const auto gap = gap_of(move.up_at_e, move.up_at_f);
            const int d = gap[static_cast<std::size_t>(f - 1)];
            bool case2_inverse_works = false;
            for (int x = f; x <= m; ++x) {
              if (gap[static_cast<std::size_t>(x)] != d) continue;
              const auto a = move.up_at_e.str(), b = move.up_at_f.str();
              const LatticePath pc = P(splice(a, b, f, x).c_str());
              const LatticePath qc = P(splice(b, a, f, x).c_str());
              case2_inverse_works = matroid.contains_path(pc) && matroid.contains_path(qc);
              break;
            }
            CHECK_FALSE(case2_inverse_works);
          }
        }
      }
    }
  });
}

TEST_CASE("block swaps preserve endpoints and produce in-class outputs") {
  for_each_lattice_path_matroid(6, [&](const LatticePathMatroid& matroid) {
    const int m = matroid.ground_size();
    const auto bases = matroid.basis_paths();
    for (int e = 1; e < m; ++e) {
      for (int f = e + 1; f <= m; ++f) {
        for (const auto& p : bases) {
          if (p.step(e) != Step::Up || p.step(f) != Step::Up) continue;
          for (const auto& q : bases) {
            if (q.step(e) != Step::Down || q.step(f) != Step::Down) continue;
            const auto move = classify_and_apply(matroid, e, f, p, q);
            CHECK(move.up_at_e.step(e) == Step::Up);
            CHECK(move.up_at_e.step(f) == Step::Down);
            CHECK(move.up_at_f.step(e) == Step::Down);
            CHECK(move.up_at_f.step(f) == Step::Up);
            CHECK(move.up_at_e.up_count() == p.up_count());
            CHECK(move.up_at_f.up_count() == p.up_count());
            // pivot ranges per case
            if (move.tag == InjectionCase::Case1) {
              CHECK(move.pivot >= e);
              CHECK(move.pivot <= f - 1);
            } else if (move.tag == InjectionCase::Case2) {
              CHECK(move.pivot >= f);
              CHECK(move.pivot <= m);
            } else {
              CHECK(move.pivot >= 0);
              CHECK(move.pivot <= e - 1);
            }
          }
        }
      }
    }
  });
}

TEST_CASE("verify_injection refuses oversized ground sets") {
  CHECK_THROWS_AS(verify_injection(catalan_matroid(9), 1, 2), std::invalid_argument);
}
