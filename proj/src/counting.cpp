#include "lpmw/counting.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpmw/rng.hpp"

namespace lpmw {

Count binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Count result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;  // exact at every stage: product of i+1 consecutive integers
  }
  return result;
}

Count catalan_number(int n) {
  if (n < 0) throw std::invalid_argument("catalan_number: n must be >= 0");
  return binomial(2 * n, n) / (n + 1);
}

Count narayana_number(int n, int k) {
  if (n < 1) throw std::invalid_argument("narayana_number: n must be >= 1");
  if (k < 1 || k > n) throw std::out_of_range("narayana_number: k outside [1, n]");
  return binomial(n, k) * binomial(n, k - 1) / n;
}

namespace {

std::vector<int> normalized(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const std::vector<int>& sorted, int i) {
  return std::binary_search(sorted.begin(), sorted.end(), i);
}

}  // namespace

StepConstraints::StepConstraints(std::vector<int> forced_up, std::vector<int> forced_down)
    : forced_up_(normalized(std::move(forced_up))),
      forced_down_(normalized(std::move(forced_down))) {
  for (int i : forced_up_)
    if (contains(forced_down_, i))
      throw std::invalid_argument("StepConstraints: forced_up and forced_down overlap");
  if ((!forced_up_.empty() && forced_up_.front() < 1) ||
      (!forced_down_.empty() && forced_down_.front() < 1))
    throw std::invalid_argument("StepConstraints: indices are 1-based");
}

bool StepConstraints::requires_up(int i) const { return contains(forced_up_, i); }
bool StepConstraints::requires_down(int i) const { return contains(forced_down_, i); }

int StepConstraints::max_index() const {
  int m = 0;
  if (!forced_up_.empty()) m = std::max(m, forced_up_.back());
  if (!forced_down_.empty()) m = std::max(m, forced_down_.back());
  return m;
}

StepConstraints StepConstraints::with_up(int i) const {
  auto up = forced_up_;
  up.push_back(i);
  return StepConstraints(std::move(up), forced_down_);
}

StepConstraints StepConstraints::with_down(int i) const {
  auto down = forced_down_;
  down.push_back(i);
  return StepConstraints(forced_up_, std::move(down));
}

namespace {

struct Window {
  int m;
  std::vector<int> lower, upper;  // h_i(a), h_i(b) for i = 0..m

  Window(const LatticePath& a, const LatticePath& b, const StepConstraints& c) {
    if (a.length() != b.length() || a.up_count() != b.up_count() || !dominates(b, a))
      throw std::invalid_argument("incompatible bounds: need a <= b with equal endpoints");
    m = a.length();
    if (c.max_index() > m)
      throw std::out_of_range("constraint index outside [1, m]");
    lower.resize(static_cast<std::size_t>(m) + 1);
    upper.resize(static_cast<std::size_t>(m) + 1);
    lower[0] = upper[0] = 0;
    const auto ha = heights(a), hb = heights(b);
    for (int i = 1; i <= m; ++i) {
      lower[static_cast<std::size_t>(i)] = ha.at(i);
      upper[static_cast<std::size_t>(i)] = hb.at(i);
    }
  }

  int width(int i) const {
    return (upper[static_cast<std::size_t>(i)] - lower[static_cast<std::size_t>(i)]) / 2 + 1;
  }
  int slot(int i, int h) const { return (h - lower[static_cast<std::size_t>(i)]) / 2; }
  bool in_window(int i, int h) const {
    return h >= lower[static_cast<std::size_t>(i)] && h <= upper[static_cast<std::size_t>(i)] &&
           ((h - lower[static_cast<std::size_t>(i)]) % 2 == 0);
  }
};

// Backward (suffix) pass shared by CompletionTable and count_between.
std::vector<std::vector<Count>> suffix_counts(const Window& w, const StepConstraints& c) {
  std::vector<std::vector<Count>> rows(static_cast<std::size_t>(w.m) + 1);
  for (int i = 0; i <= w.m; ++i)
    rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(w.width(i)), Count(0));
  rows[static_cast<std::size_t>(w.m)][0] = 1;  // terminal height is pinned
  for (int i = w.m - 1; i >= 0; --i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    const auto& next = rows[static_cast<std::size_t>(i + 1)];
    const bool up_ok = !c.requires_down(i + 1);
    const bool down_ok = !c.requires_up(i + 1);
    for (int s = 0; s < w.width(i); ++s) {
      const int h = w.lower[static_cast<std::size_t>(i)] + 2 * s;
      Count total = 0;
      if (up_ok && w.in_window(i + 1, h + 1)) total += next[static_cast<std::size_t>(w.slot(i + 1, h + 1))];
      if (down_ok && w.in_window(i + 1, h - 1)) total += next[static_cast<std::size_t>(w.slot(i + 1, h - 1))];
      row[static_cast<std::size_t>(s)] = std::move(total);
    }
  }
  return rows;
}

// Forward (prefix) pass used by PairCountTable.
std::vector<std::vector<Count>> prefix_counts(const Window& w, const StepConstraints& c) {
  std::vector<std::vector<Count>> rows(static_cast<std::size_t>(w.m) + 1);
  for (int i = 0; i <= w.m; ++i)
    rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(w.width(i)), Count(0));
  rows[0][0] = 1;
  for (int i = 1; i <= w.m; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    const auto& prev = rows[static_cast<std::size_t>(i - 1)];
    const bool up_ok = !c.requires_down(i);
    const bool down_ok = !c.requires_up(i);
    for (int s = 0; s < w.width(i); ++s) {
      const int h = w.lower[static_cast<std::size_t>(i)] + 2 * s;
      Count total = 0;
      if (up_ok && w.in_window(i - 1, h - 1)) total += prev[static_cast<std::size_t>(w.slot(i - 1, h - 1))];
      if (down_ok && w.in_window(i - 1, h + 1)) total += prev[static_cast<std::size_t>(w.slot(i - 1, h + 1))];
      row[static_cast<std::size_t>(s)] = std::move(total);
    }
  }
  return rows;
}

}  // namespace

Count count_between(const LatticePath& a, const LatticePath& b, const StepConstraints& c) {
  const Window w(a, b, c);
  return suffix_counts(w, c)[0][0];
}

const Count CompletionTable::zero_ = 0;

CompletionTable::CompletionTable(const LatticePath& a, const LatticePath& b,
                                 const StepConstraints& c) {
  const Window w(a, b, c);
  m_ = w.m;
  lower_ = w.lower;
  upper_ = w.upper;
  rows_ = suffix_counts(w, c);
  up_ok_.assign(static_cast<std::size_t>(m_) + 1, 1);
  down_ok_.assign(static_cast<std::size_t>(m_) + 1, 1);
  for (int i = 1; i <= m_; ++i) {
    up_ok_[static_cast<std::size_t>(i)] = c.requires_down(i) ? 0 : 1;
    down_ok_[static_cast<std::size_t>(i)] = c.requires_up(i) ? 0 : 1;
  }
}

const Count& CompletionTable::at(int position, int height) const {
  if (position < 0 || position > m_) throw std::out_of_range("CompletionTable::at: position");
  const int lo = lower_[static_cast<std::size_t>(position)];
  const int hi = upper_[static_cast<std::size_t>(position)];
  if (height < lo || height > hi || ((height - lo) % 2 != 0)) return zero_;
  return rows_[static_cast<std::size_t>(position)][static_cast<std::size_t>((height - lo) / 2)];
}

bool CompletionTable::step_up_allowed(int i) const {
  return up_ok_[static_cast<std::size_t>(i)] != 0;
}
bool CompletionTable::step_down_allowed(int i) const {
  return down_ok_[static_cast<std::size_t>(i)] != 0;
}

LatticePath sample_between(const LatticePath& a, const LatticePath& b,
                           const StepConstraints& c, std::uint64_t seed) {
  const CompletionTable table(a, b, c);
  if (table.total() == 0) throw std::domain_error("sample_between: empty constraint set");
  Rng rng(seed);
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(table.length()));
  int h = 0;
  for (int i = 1; i <= table.length(); ++i) {
    const Count up = table.step_up_allowed(i) ? table.at(i, h + 1) : Count(0);
    const Count down = table.step_down_allowed(i) ? table.at(i, h - 1) : Count(0);
    const Count total = up + down;
    // total > 0 along any prefix reachable from a state with completions
    const Count draw = rng.below(total);
    if (draw < up) {
      steps.push_back(Step::Up);
      ++h;
    } else {
      steps.push_back(Step::Down);
      --h;
    }
  }
  return LatticePath(std::move(steps));
}

PairCountTable::PairCountTable(const LatticePath& a, const LatticePath& b,
                               const StepConstraints& c) {
  const Window w(a, b, c);
  m_ = w.m;
  cells_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), PairStepCounts{});
  const auto forward = prefix_counts(w, c);
  const auto backward = suffix_counts(w, c);

  // For each e and a forced direction at e, propagate a conditioned prefix
  // vector rightward; reading it against the suffix table at every f > e
  // yields all four class counts without per-pair DPs.
  std::vector<Count> vec, nxt;
  for (int e = 1; e <= m_; ++e) {
    for (int dir = 0; dir < 2; ++dir) {
      const bool step_up = (dir == 0);
      if (step_up && c.requires_down(e)) continue;
      if (!step_up && c.requires_up(e)) continue;
      // seed: distribution over heights at position e after the forced step
      vec.assign(static_cast<std::size_t>(w.width(e)), Count(0));
      bool any = false;
      for (int s = 0; s < w.width(e); ++s) {
        const int h = w.lower[static_cast<std::size_t>(e)] + 2 * s;
        const int hp = step_up ? h - 1 : h + 1;
        if (!w.in_window(e - 1, hp)) continue;
        const Count& ways = forward[static_cast<std::size_t>(e - 1)]
                                   [static_cast<std::size_t>(w.slot(e - 1, hp))];
        if (ways != 0) {
          vec[static_cast<std::size_t>(s)] = ways;
          any = true;
        }
      }
      if (!any) continue;
      for (int f = e + 1; f <= m_; ++f) {
        // combine with a forced step at f and the suffix counts
        PairStepCounts& cell = cells_[static_cast<std::size_t>(e - 1) * static_cast<std::size_t>(m_) +
                                      static_cast<std::size_t>(f - 1)];
        const bool f_up_ok = !c.requires_down(f);
        const bool f_down_ok = !c.requires_up(f);
        Count with_up = 0, with_down = 0;
        for (int s = 0; s < w.width(f - 1); ++s) {
          const Count& ways = vec[static_cast<std::size_t>(s)];
          if (ways == 0) continue;
          const int h = w.lower[static_cast<std::size_t>(f - 1)] + 2 * s;
          if (f_up_ok && w.in_window(f, h + 1))
            with_up += ways * backward[static_cast<std::size_t>(f)]
                                      [static_cast<std::size_t>(w.slot(f, h + 1))];
          if (f_down_ok && w.in_window(f, h - 1))
            with_down += ways * backward[static_cast<std::size_t>(f)]
                                        [static_cast<std::size_t>(w.slot(f, h - 1))];
        }
        if (step_up) {
          cell.up_up = std::move(with_up);
          cell.up_down = std::move(with_down);
        } else {
          cell.down_up = std::move(with_up);
          cell.down_down = std::move(with_down);
        }
        if (f == m_) break;
        // advance the conditioned vector across the free step at f
        nxt.assign(static_cast<std::size_t>(w.width(f)), Count(0));
        for (int s = 0; s < w.width(f); ++s) {
          const int h = w.lower[static_cast<std::size_t>(f)] + 2 * s;
          Count total = 0;
          if (f_up_ok && w.in_window(f - 1, h - 1))
            total += vec[static_cast<std::size_t>(w.slot(f - 1, h - 1))];
          if (f_down_ok && w.in_window(f - 1, h + 1))
            total += vec[static_cast<std::size_t>(w.slot(f - 1, h + 1))];
          nxt[static_cast<std::size_t>(s)] = std::move(total);
        }
        vec.swap(nxt);
      }
    }
  }
}

const PairStepCounts& PairCountTable::pair(int e, int f) const {
  if (e < 1 || f <= e || f > m_) throw std::out_of_range("PairCountTable::pair: need 1 <= e < f <= m");
  return cells_[static_cast<std::size_t>(e - 1) * static_cast<std::size_t>(m_) +
                static_cast<std::size_t>(f - 1)];
}

}  // namespace lpmw
