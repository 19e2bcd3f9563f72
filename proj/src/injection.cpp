#include "lpmw/injection.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lpmw {

const char* to_string(InjectionCase c) {
  switch (c) {
    case InjectionCase::Case1: return "case1";
    case InjectionCase::Case2: return "case2";
    case InjectionCase::Case3: return "case3";
  }
  return "?";
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// gap[x] = h_x(p) - h_x(q) for lattice positions x = 0..m; always even.
std::vector<int> height_gap(const LatticePath& p, const LatticePath& q) {
  std::vector<int> gap(static_cast<std::size_t>(p.length()) + 1, 0);
  for (int i = 1; i <= p.length(); ++i) {
    const int dp = p.step(i) == Step::Up ? 1 : -1;
    const int dq = q.step(i) == Step::Up ? 1 : -1;
    gap[static_cast<std::size_t>(i)] = gap[static_cast<std::size_t>(i - 1)] + dp - dq;
  }
  return gap;
}

// base with the steps in [lo..hi] taken from donor instead.
LatticePath splice_block(const LatticePath& base, const LatticePath& donor, int lo, int hi) {
  std::vector<Step> steps = base.steps();
  for (int i = lo; i <= hi; ++i)
    steps[static_cast<std::size_t>(i - 1)] = donor.step(i);
  return LatticePath(std::move(steps));
}

void check_pair_args(const LatticePathMatroid& matroid, int e, int f) {
  require(1 <= e && e < f && f <= matroid.ground_size(),
          "injection: need 1 <= e < f <= m");
}

}  // namespace

InjectionMove classify_and_apply(const LatticePathMatroid& matroid, int e, int f,
                                 const LatticePath& p, const LatticePath& q) {
  check_pair_args(matroid, e, f);
  require(p.length() == matroid.ground_size() && q.length() == matroid.ground_size(),
          "classify_and_apply: wrong path length");
  require(p.step(e) == Step::Up && p.step(f) == Step::Up,
          "classify_and_apply: p must have up-steps at e and f");
  require(q.step(e) == Step::Down && q.step(f) == Step::Down,
          "classify_and_apply: q must have down-steps at e and f");
  require(matroid.contains_path(p) && matroid.contains_path(q),
          "classify_and_apply: paths must lie between the bounds");

  const int m = matroid.ground_size();
  const auto gap = height_gap(p, q);

  // Case 1: first shared height in [e, f-1]; swap suffixes.
  for (int x = e; x < f; ++x) {
    if (gap[static_cast<std::size_t>(x)] == 0)
      return {InjectionCase::Case1, x, splice_block(p, q, x + 1, m), splice_block(q, p, x + 1, m)};
  }

  // Case 2: realign the gap value of position f-1 at the first position
  // >= f where it recurs; swap the step blocks [f..x].
  const int d = gap[static_cast<std::size_t>(f - 1)];
  for (int x = f; x <= m; ++x) {
    if (gap[static_cast<std::size_t>(x)] != d) continue;
    LatticePath pp = splice_block(p, q, f, x);
    LatticePath qq = splice_block(q, p, f, x);
    if (matroid.contains_path(pp) && matroid.contains_path(qq))
      return {InjectionCase::Case2, x, std::move(pp), std::move(qq)};
    break;  // only the first recurrence is eligible
  }

  // Case 3: mirror image on the left of e; swap blocks [x+1..e] at the last
  // position < e where the gap equals its value at e. Existence is forced
  // once cases 1 and 2 have failed.
  const int dd = gap[static_cast<std::size_t>(e)];
  for (int x = e - 1; x >= 0; --x) {
    if (gap[static_cast<std::size_t>(x)] != dd) continue;
    return {InjectionCase::Case3, x, splice_block(q, p, x + 1, e), splice_block(p, q, x + 1, e)};
  }
  throw std::logic_error("classify_and_apply: no case applies (coverage violated)");
}

std::optional<std::pair<LatticePath, LatticePath>> invert(const LatticePathMatroid& matroid,
                                                          int e, int f,
                                                          const LatticePath& up_at_e,
                                                          const LatticePath& up_at_f) {
  check_pair_args(matroid, e, f);
  require(up_at_e.length() == matroid.ground_size() && up_at_f.length() == matroid.ground_size(),
          "invert: wrong path length");
  require(up_at_e.step(e) == Step::Up && up_at_e.step(f) == Step::Down,
          "invert: first path must be up at e, down at f");
  require(up_at_f.step(e) == Step::Down && up_at_f.step(f) == Step::Up,
          "invert: second path must be down at e, up at f");
  require(matroid.contains_path(up_at_e) && matroid.contains_path(up_at_f),
          "invert: paths must lie between the bounds");

  const int m = matroid.ground_size();
  const auto gap = height_gap(up_at_e, up_at_f);

  std::optional<std::pair<LatticePath, LatticePath>> candidate;

  for (int x = e; x < f && !candidate; ++x) {
    if (gap[static_cast<std::size_t>(x)] == 0)
      candidate.emplace(splice_block(up_at_e, up_at_f, x + 1, m),
                        splice_block(up_at_f, up_at_e, x + 1, m));
  }

  if (!candidate) {
    // The case-2 block swap is its own inverse; accept when it lands in the
    // domain classes.
    const int d = gap[static_cast<std::size_t>(f - 1)];
    for (int x = f; x <= m; ++x) {
      if (gap[static_cast<std::size_t>(x)] != d) continue;
      LatticePath p = splice_block(up_at_e, up_at_f, f, x);
      LatticePath q = splice_block(up_at_f, up_at_e, f, x);
      if (matroid.contains_path(p) && matroid.contains_path(q))
        candidate.emplace(std::move(p), std::move(q));
      break;
    }
  }

  if (!candidate) {
    const int dd = gap[static_cast<std::size_t>(e)];
    for (int x = e - 1; x >= 0; --x) {
      if (gap[static_cast<std::size_t>(x)] != dd) continue;
      LatticePath p = splice_block(up_at_f, up_at_e, x + 1, e);
      LatticePath q = splice_block(up_at_e, up_at_f, x + 1, e);
      if (matroid.contains_path(p) && matroid.contains_path(q))
        candidate.emplace(std::move(p), std::move(q));
      break;
    }
  }

  if (!candidate) return std::nullopt;

  // A candidate outside the domain classes, or whose forward image is not
  // the given pair, certifies that the pair is outside the image.
  const LatticePath& p = candidate->first;
  const LatticePath& q = candidate->second;
  if (p.step(e) != Step::Up || p.step(f) != Step::Up || q.step(e) != Step::Down ||
      q.step(f) != Step::Down)
    return std::nullopt;
  const InjectionMove forward = classify_and_apply(matroid, e, f, p, q);
  if (forward.up_at_e != up_at_e || forward.up_at_f != up_at_f) return std::nullopt;
  return candidate;
}

void InjectionReport::merge(const InjectionReport& other) {
  domain_size += other.domain_size;
  image_size += other.image_size;
  for (std::size_t i = 0; i < case_tally.size(); ++i) case_tally[i] += other.case_tally[i];
  violation_count += other.violation_count;
  for (const auto& v : other.violations)
    if (violations.size() < 8) violations.push_back(v);
}

namespace {

// ---------------------------------------------------------------------------
// Bit-level sweep engine. Paths live in uint32 codes (bit i-1 set <=> step i
// is Up); membership between the bounds is one table lookup. Mirrors the
// path-level logic above exactly; the two are cross-checked in the tests.
// ---------------------------------------------------------------------------

struct BitMove {
  int tag;  // 0, 1, 2
  std::uint32_t up_at_e, up_at_f;
};

inline std::uint32_t block_mask(int lo, int hi) {
  return ((hi >= 32 ? 0xffffffffu : ((1u << hi) - 1))) & ~((1u << (lo - 1)) - 1);
}

inline void gap_profile(std::uint32_t p, std::uint32_t q, int m, int* gap) {
  gap[0] = 0;
  for (int i = 1; i <= m; ++i) {
    const int bp = (p >> (i - 1)) & 1u;
    const int bq = (q >> (i - 1)) & 1u;
    gap[i] = gap[i - 1] + 2 * (bp - bq);
  }
}

struct BitContext {
  int m, e, f;
  const std::vector<char>* valid;
  bool ok(std::uint32_t code) const { return (*valid)[code] != 0; }
};

bool bit_apply(const BitContext& ctx, std::uint32_t p, std::uint32_t q, BitMove* out) {
  int gap[33];
  gap_profile(p, q, ctx.m, gap);
  const std::uint32_t x_bits = p ^ q;

  for (int x = ctx.e; x < ctx.f; ++x) {
    if (gap[x] != 0) continue;
    const std::uint32_t mask = x_bits & block_mask(x + 1, ctx.m);
    *out = {0, p ^ mask, q ^ mask};
    return true;
  }

  const int d = gap[ctx.f - 1];
  for (int x = ctx.f; x <= ctx.m; ++x) {
    if (gap[x] != d) continue;
    const std::uint32_t mask = x_bits & block_mask(ctx.f, x);
    const std::uint32_t pp = p ^ mask, qq = q ^ mask;
    if (ctx.ok(pp) && ctx.ok(qq)) {
      *out = {1, pp, qq};
      return true;
    }
    break;
  }

  const int dd = gap[ctx.e];
  for (int x = ctx.e - 1; x >= 0; --x) {
    if (gap[x] != dd) continue;
    const std::uint32_t mask = x_bits & block_mask(x + 1, ctx.e);
    *out = {2, q ^ mask, p ^ mask};
    return true;
  }
  return false;  // coverage violated; reported by the caller
}

bool bit_invert(const BitContext& ctx, std::uint32_t a, std::uint32_t b, std::uint32_t* p_out,
                std::uint32_t* q_out) {
  int gap[33];
  gap_profile(a, b, ctx.m, gap);
  const std::uint32_t x_bits = a ^ b;

  std::uint32_t p = 0, q = 0;
  bool found = false;

  for (int x = ctx.e; x < ctx.f && !found; ++x) {
    if (gap[x] != 0) continue;
    const std::uint32_t mask = x_bits & block_mask(x + 1, ctx.m);
    p = a ^ mask;
    q = b ^ mask;
    found = true;
  }

  if (!found) {
    const int d = gap[ctx.f - 1];
    for (int x = ctx.f; x <= ctx.m; ++x) {
      if (gap[x] != d) continue;
      const std::uint32_t mask = x_bits & block_mask(ctx.f, x);
      if (ctx.ok(a ^ mask) && ctx.ok(b ^ mask)) {
        p = a ^ mask;
        q = b ^ mask;
        found = true;
      }
      break;
    }
  }

  if (!found) {
    const int dd = gap[ctx.e];
    for (int x = ctx.e - 1; x >= 0; --x) {
      if (gap[x] != dd) continue;
      const std::uint32_t mask = x_bits & block_mask(x + 1, ctx.e);
      if (ctx.ok(b ^ mask) && ctx.ok(a ^ mask)) {
        p = b ^ mask;
        q = a ^ mask;
        found = true;
      }
      break;
    }
  }

  if (!found) return false;
  // domain-class and forward round-trip confirmation
  const std::uint32_t be = 1u << (ctx.e - 1), bf = 1u << (ctx.f - 1);
  if ((p & be) == 0 || (p & bf) == 0 || (q & be) != 0 || (q & bf) != 0) return false;
  BitMove forward;
  if (!bit_apply(ctx, p, q, &forward)) return false;
  if (forward.up_at_e != a || forward.up_at_f != b) return false;
  *p_out = p;
  *q_out = q;
  return true;
}

std::string witness(const LatticePathMatroid& matroid, int e, int f, const char* what,
                    std::uint32_t p, std::uint32_t q) {
  std::ostringstream os;
  const int m = matroid.ground_size();
  os << "L[" << matroid.lower().str() << "," << matroid.upper().str() << "] e=" << e
     << " f=" << f << " " << what << " p=" << path_from_code(m, p).str()
     << " q=" << path_from_code(m, q).str();
  return os.str();
}

}  // namespace

InjectionReport verify_injection(const LatticePathMatroid& matroid, int e, int f) {
  check_pair_args(matroid, e, f);
  const int m = matroid.ground_size();
  if (m > 16) throw std::invalid_argument("verify_injection: ground set larger than 16");

  const auto codes = enumerate_between_codes(matroid.lower(), matroid.upper());
  std::vector<char> valid(std::size_t{1} << m, 0);
  for (auto c : codes) valid[c] = 1;

  const std::uint32_t be = 1u << (e - 1), bf = 1u << (f - 1);
  std::vector<std::uint32_t> both_up, both_down;
  for (auto c : codes) {
    const bool ue = (c & be) != 0, uf = (c & bf) != 0;
    if (ue && uf) both_up.push_back(c);
    if (!ue && !uf) both_down.push_back(c);
  }

  InjectionReport report;
  report.domain_size =
      static_cast<long long>(both_up.size()) * static_cast<long long>(both_down.size());

  const BitContext ctx{m, e, f, &valid};
  std::unordered_map<std::uint64_t, std::uint64_t> image;
  image.reserve(static_cast<std::size_t>(report.domain_size) * 2 + 8);

  auto flag = [&](const char* what, std::uint32_t p, std::uint32_t q) {
    ++report.violation_count;
    if (report.violations.size() < 8) report.violations.push_back(witness(matroid, e, f, what, p, q));
  };

  BitMove move;
  for (const std::uint32_t p : both_up) {
    for (const std::uint32_t q : both_down) {
      if (!bit_apply(ctx, p, q, &move)) {
        flag("no case applies", p, q);
        continue;
      }
      ++report.case_tally[static_cast<std::size_t>(move.tag)];
      if (!ctx.ok(move.up_at_e) || !ctx.ok(move.up_at_f) || (move.up_at_e & be) == 0 ||
          (move.up_at_e & bf) != 0 || (move.up_at_f & be) != 0 || (move.up_at_f & bf) == 0) {
        flag("output outside codomain", p, q);
        continue;
      }
      const std::uint64_t key =
          (static_cast<std::uint64_t>(move.up_at_e) << 32) | move.up_at_f;
      const std::uint64_t origin = (static_cast<std::uint64_t>(p) << 32) | q;
      const auto [it, inserted] = image.emplace(key, origin);
      if (!inserted) flag("image collision", p, q);
      std::uint32_t back_p = 0, back_q = 0;
      if (!bit_invert(ctx, move.up_at_e, move.up_at_f, &back_p, &back_q) || back_p != p ||
          back_q != q)
        flag("round trip failed", p, q);
    }
  }
  report.image_size = static_cast<long long>(image.size());
  return report;
}

InjectionReport verify_injection_all(const LatticePathMatroid& matroid) {
  InjectionReport merged;
  const int m = matroid.ground_size();
  for (int e = 1; e < m; ++e)
    for (int f = e + 1; f <= m; ++f) merged.merge(verify_injection(matroid, e, f));
  return merged;
}

}  // namespace lpmw
