#include "lpmw/matroid.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lpmw/rng.hpp"

namespace lpmw {

LatticePathMatroid::LatticePathMatroid(LatticePath lower, LatticePath upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.length() != upper_.length() || lower_.up_count() != upper_.up_count() ||
      !dominates(upper_, lower_))
    throw std::invalid_argument("LatticePathMatroid: bounds not comparable");
}

Count LatticePathMatroid::basis_count(const StepConstraints& c) const {
  return count_between(lower_, upper_, c);
}

std::vector<LatticePath> LatticePathMatroid::basis_paths() const {
  if (ground_size() > 16)
    throw std::invalid_argument("basis_paths: refusing to materialize beyond m = 16");
  return enumerate_between(lower_, upper_);
}

bool LatticePathMatroid::contains_path(const LatticePath& p) const {
  if (p.length() != lower_.length() || p.up_count() != lower_.up_count()) return false;
  return dominates(p, lower_) && dominates(upper_, p);
}

LatticePathMatroid catalan_matroid(int n) {
  if (n < 1) throw std::invalid_argument("catalan_matroid: n must be >= 1");
  return LatticePathMatroid(sawtooth_path(n), max_path(2 * n, n));
}

LatticePathMatroid cube_matroid(int n) {
  if (n < 1) throw std::invalid_argument("cube_matroid: n must be >= 1");
  return LatticePathMatroid(complemented(sawtooth_path(n)), sawtooth_path(n));
}

LatticePathMatroid uniform_matroid(int m, int r) {
  return LatticePathMatroid(min_path(m, r), max_path(m, r));
}

LatticePathMatroid dual(const LatticePathMatroid& matroid) {
  // Complementing every step negates heights pointwise, so the path family
  // between A and B maps onto the family between ~B and ~A; up-step sets
  // become exact complements on the same ground labels.
  return LatticePathMatroid(complemented(matroid.upper()), complemented(matroid.lower()));
}

MinorSpec::MinorSpec(std::vector<int> contracted, std::vector<int> deleted)
    : constraints_(std::move(contracted), std::move(deleted)) {}

std::vector<Interval> transversal_system(const LatticePathMatroid& matroid) {
  const auto from_upper = up_step_indices(matroid.upper());
  const auto from_lower = up_step_indices(matroid.lower());
  std::vector<Interval> intervals;
  intervals.reserve(from_upper.size());
  for (std::size_t i = 0; i < from_upper.size(); ++i)
    intervals.push_back({from_upper[i], from_lower[i]});
  return intervals;
}

CorrelationVerdict minor_pair_counts(const LatticePathMatroid& matroid, const MinorSpec& minor,
                                     int e, int f) {
  if (e == f) throw std::invalid_argument("minor_pair_counts: e and f must differ");
  if (minor.touches(e) || minor.touches(f))
    throw std::invalid_argument("minor_pair_counts: e, f overlap the minor");
  const StepConstraints& base = minor.constraints();
  CorrelationVerdict v;
  v.both_in = matroid.basis_count(base.with_up(e).with_up(f));
  v.both_out = matroid.basis_count(base.with_down(e).with_down(f));
  v.e_in_f_out = matroid.basis_count(base.with_up(e).with_down(f));
  v.f_in_e_out = matroid.basis_count(base.with_down(e).with_up(f));
  v.slack = v.e_in_f_out * v.f_in_e_out - v.both_in * v.both_out;
  v.holds = v.slack >= 0;
  return v;
}

namespace {

// Pair sweep over a single minor via the fused table; returns false on the
// first violating pair (also reported through the out-parameters).
bool minor_pairs_hold(const LatticePathMatroid& matroid, const MinorSpec& minor, int* bad_e,
                      int* bad_f, long long* pairs_seen) {
  const PairCountTable table(matroid.lower(), matroid.upper(), minor.constraints());
  const int m = matroid.ground_size();
  for (int e = 1; e < m; ++e) {
    if (minor.touches(e)) continue;
    for (int f = e + 1; f <= m; ++f) {
      if (minor.touches(f)) continue;
      const PairStepCounts& cell = table.pair(e, f);
      if (pairs_seen) ++*pairs_seen;
      if (cell.up_down * cell.down_up < cell.up_up * cell.down_down) {
        if (bad_e) *bad_e = e;
        if (bad_f) *bad_f = f;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_negatively_correlated(const LatticePathMatroid& matroid, const MinorSpec& minor) {
  return minor_pairs_hold(matroid, minor, nullptr, nullptr, nullptr);
}

BalanceReport check_balanced(const LatticePathMatroid& matroid, int random_budget,
                             std::uint64_t seed, int exhaustive_budget) {
  BalanceReport report;
  const int m = matroid.ground_size();

  auto run_minor = [&](const MinorSpec& minor) {
    ++report.minors_checked;
    int e = 0, f = 0;
    if (!minor_pairs_hold(matroid, minor, &e, &f, &report.pairs_checked))
      report.violations.push_back({minor, e, f});
  };

  // Exhaustive part: every disjoint (I, J) with |I| + |J| <= budget. The
  // chosen elements are a combination; membership in I vs J is a 2^k sweep.
  std::vector<int> chosen;
  auto assign = [&](auto&& self, std::size_t idx, std::vector<int>& contracted,
                    std::vector<int>& deleted) -> void {
    if (idx == chosen.size()) {
      run_minor(MinorSpec(contracted, deleted));
      return;
    }
    contracted.push_back(chosen[idx]);
    self(self, idx + 1, contracted, deleted);
    contracted.pop_back();
    deleted.push_back(chosen[idx]);
    self(self, idx + 1, contracted, deleted);
    deleted.pop_back();
  };
  auto choose = [&](auto&& self, int next, int remaining) -> void {
    std::vector<int> contracted, deleted;
    assign(assign, 0, contracted, deleted);
    if (remaining == 0) return;
    for (int i = next; i <= m; ++i) {
      chosen.push_back(i);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  choose(choose, 1, exhaustive_budget);

  // Random part, deterministic per (seed, k).
  for (int k = 0; k < random_budget; ++k) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(k)));
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(m, 6) + 1)));
    std::vector<int> pool(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> contracted, deleted;
    for (int j = 0; j < t; ++j) {
      const auto pick = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m - j)));
      std::swap(pool[pick], pool[static_cast<std::size_t>(m - 1 - j)]);
      const int element = pool[static_cast<std::size_t>(m - 1 - j)];
      if (rng.next() & 1)
        contracted.push_back(element);
      else
        deleted.push_back(element);
    }
    run_minor(MinorSpec(std::move(contracted), std::move(deleted)));
  }
  return report;
}

bool verify_exchange_axiom(const std::vector<std::vector<int>>& bases) {
  if (bases.empty()) throw std::invalid_argument("verify_exchange_axiom: empty family");
  std::set<std::vector<int>> family;
  const std::size_t rank = bases.front().size();
  for (auto b : bases) {
    if (b.size() != rank)
      throw std::invalid_argument("verify_exchange_axiom: sets of unequal size");
    std::sort(b.begin(), b.end());
    family.insert(std::move(b));
  }
  for (const auto& a : family) {
    for (const auto& b : family) {
      for (int e : a) {
        if (std::binary_search(b.begin(), b.end(), e)) continue;
        bool fixed = false;
        for (int f : b) {
          if (std::binary_search(a.begin(), a.end(), f)) continue;
          std::vector<int> candidate;
          candidate.reserve(rank);
          for (int x : a)
            if (x != e) candidate.push_back(x);
          candidate.push_back(f);
          std::sort(candidate.begin(), candidate.end());
          if (family.count(candidate)) {
            fixed = true;
            break;
          }
        }
        if (!fixed) return false;
      }
    }
  }
  return true;
}

namespace {

std::string next_path_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (!line.empty()) return line;
  }
  throw std::invalid_argument("matroid spec: expected two non-empty path lines");
}

}  // namespace

LatticePathMatroid parse_matroid(std::istream& in) {
  const std::string lower = next_path_line(in);
  const std::string upper = next_path_line(in);
  return LatticePathMatroid(LatticePath::parse(lower), LatticePath::parse(upper));
}

LatticePathMatroid read_matroid_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open matroid file: " + filename);
  return parse_matroid(in);
}

void for_each_lattice_path_matroid(
    int m, const std::function<void(const LatticePathMatroid&)>& fn) {
  if (m < 1) throw std::invalid_argument("for_each_lattice_path_matroid: m must be >= 1");
  for (int r = 0; r <= m; ++r) {
    const auto all = enumerate_between(min_path(m, r), max_path(m, r));
    std::vector<std::vector<int>> hs;
    hs.reserve(all.size());
    for (const auto& p : all) hs.push_back(heights(p).values());
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        bool leq = true;
        for (std::size_t k = 0; k < hs[i].size() && leq; ++k) leq = hs[i][k] <= hs[j][k];
        if (leq) fn(LatticePathMatroid(all[i], all[j]));
      }
    }
  }
}

}  // namespace lpmw
