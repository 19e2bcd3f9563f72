#include "lpmw/paths.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace lpmw {

LatticePath::LatticePath(std::vector<Step> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw std::invalid_argument("LatticePath: empty step sequence");
  for (Step s : steps_)
    if (s == Step::Up) ++up_count_;
}

LatticePath LatticePath::parse(std::string_view text) {
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'U':
      case '+':
        steps.push_back(Step::Up);
        break;
      case 'D':
      case '-':
        steps.push_back(Step::Down);
        break;
      default:
        throw std::invalid_argument(std::string("LatticePath::parse: bad step character '") +
                                    c + "'");
    }
  }
  return LatticePath(std::move(steps));
}

std::string LatticePath::str() const {
  std::string out;
  out.reserve(steps_.size());
  for (Step s : steps_) out.push_back(s == Step::Up ? 'U' : 'D');
  return out;
}

HeightProfile::HeightProfile(std::vector<int> values) : values_(std::move(values)) {
  int prev = 0;
  for (int h : values_) {
    if (std::abs(h - prev) != 1)
      throw std::invalid_argument("HeightProfile: consecutive heights must differ by 1");
    prev = h;
  }
}

HeightProfile heights(const LatticePath& p) {
  std::vector<int> h;
  h.reserve(static_cast<std::size_t>(p.length()));
  int cur = 0;
  for (Step s : p.steps()) {
    cur += (s == Step::Up) ? 1 : -1;
    h.push_back(cur);
  }
  return HeightProfile(std::move(h));
}

bool is_dyck(const LatticePath& p) {
  if (p.length() % 2 != 0) return false;
  int cur = 0;
  for (Step s : p.steps()) {
    cur += (s == Step::Up) ? 1 : -1;
    if (cur < 0) return false;
  }
  return cur == 0;
}

bool dominates(const LatticePath& q, const LatticePath& p) {
  if (p.length() != q.length())
    throw std::invalid_argument("dominates: paths have different lengths");
  if (p.up_count() != q.up_count())
    throw std::invalid_argument("dominates: paths have different up-counts");
  int hp = 0, hq = 0;
  for (int i = 0; i < p.length(); ++i) {
    hp += (p.steps()[static_cast<std::size_t>(i)] == Step::Up) ? 1 : -1;
    hq += (q.steps()[static_cast<std::size_t>(i)] == Step::Up) ? 1 : -1;
    if (hp > hq) return false;
  }
  return true;
}

std::vector<int> up_step_indices(const LatticePath& p) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p.up_count()));
  for (int i = 1; i <= p.length(); ++i)
    if (p.step(i) == Step::Up) out.push_back(i);
  return out;
}

LatticePath path_from_up_set(int m, const std::vector<int>& up_indices) {
  if (m <= 0) throw std::invalid_argument("path_from_up_set: length must be positive");
  std::vector<Step> steps(static_cast<std::size_t>(m), Step::Down);
  for (int i : up_indices) {
    if (i < 1 || i > m)
      throw std::out_of_range("path_from_up_set: index outside [1, m]");
    steps[static_cast<std::size_t>(i - 1)] = Step::Up;
  }
  return LatticePath(std::move(steps));
}

int narayana_statistic(const LatticePath& p) {
  int count = 0;
  for (int i = 2; i <= p.length(); i += 2)
    if (p.step(i) == Step::Down) ++count;
  return count;
}

namespace {

void check_comparable(const LatticePath& a, const LatticePath& b) {
  bool ok = a.length() == b.length() && a.up_count() == b.up_count();
  if (ok) ok = dominates(b, a);
  if (!ok) throw std::invalid_argument("bounds not comparable: need a <= b with equal endpoints");
}

// DFS in U-before-D order between the height envelopes of a and b.
template <typename Emit>
void walk_between(const std::vector<int>& ha, const std::vector<int>& hb, Emit&& emit) {
  const int m = static_cast<int>(ha.size());
  std::vector<Step> cur(static_cast<std::size_t>(m), Step::Up);
  std::uint32_t code = 0;
  auto rec = [&](auto&& self, int pos, int h) -> void {
    if (pos == m) {
      emit(cur, code);
      return;
    }
    const std::size_t idx = static_cast<std::size_t>(pos);
    if (h + 1 <= hb[idx]) {
      cur[idx] = Step::Up;
      code |= (1u << pos);
      self(self, pos + 1, h + 1);
      code &= ~(1u << pos);
    }
    if (h - 1 >= ha[idx]) {
      cur[idx] = Step::Down;
      self(self, pos + 1, h - 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::vector<LatticePath> enumerate_between(const LatticePath& a, const LatticePath& b) {
  check_comparable(a, b);
  std::vector<LatticePath> out;
  walk_between(heights(a).values(), heights(b).values(),
               [&](const std::vector<Step>& cur, std::uint32_t) { out.emplace_back(cur); });
  return out;
}

std::vector<std::uint32_t> enumerate_between_codes(const LatticePath& a, const LatticePath& b) {
  check_comparable(a, b);
  if (a.length() > 31)
    throw std::invalid_argument("enumerate_between_codes: path length exceeds 31");
  std::vector<std::uint32_t> out;
  walk_between(heights(a).values(), heights(b).values(),
               [&](const std::vector<Step>&, std::uint32_t code) { out.push_back(code); });
  return out;
}

std::uint32_t path_code(const LatticePath& p) {
  if (p.length() > 31) throw std::invalid_argument("path_code: path length exceeds 31");
  std::uint32_t code = 0;
  for (int i = 1; i <= p.length(); ++i)
    if (p.step(i) == Step::Up) code |= (1u << (i - 1));
  return code;
}

LatticePath path_from_code(int m, std::uint32_t code) {
  std::vector<Step> steps(static_cast<std::size_t>(m), Step::Down);
  for (int i = 0; i < m; ++i)
    if (code & (1u << i)) steps[static_cast<std::size_t>(i)] = Step::Up;
  return LatticePath(std::move(steps));
}

LatticePath complemented(const LatticePath& p) {
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(p.length()));
  for (Step s : p.steps()) steps.push_back(s == Step::Up ? Step::Down : Step::Up);
  return LatticePath(std::move(steps));
}

LatticePath sawtooth_path(int n) {
  if (n < 1) throw std::invalid_argument("sawtooth_path: n must be >= 1");
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    steps.push_back(Step::Up);
    steps.push_back(Step::Down);
  }
  return LatticePath(std::move(steps));
}

LatticePath max_path(int m, int r) {
  if (m < 1 || r < 0 || r > m) throw std::invalid_argument("max_path: need 0 <= r <= m, m >= 1");
  std::vector<Step> steps(static_cast<std::size_t>(m), Step::Down);
  std::fill(steps.begin(), steps.begin() + r, Step::Up);
  return LatticePath(std::move(steps));
}

LatticePath min_path(int m, int r) {
  if (m < 1 || r < 0 || r > m) throw std::invalid_argument("min_path: need 0 <= r <= m, m >= 1");
  std::vector<Step> steps(static_cast<std::size_t>(m), Step::Up);
  std::fill(steps.begin(), steps.begin() + (m - r), Step::Down);
  return LatticePath(std::move(steps));
}

}  // namespace lpmw
