#pragma once

// Test-only reference implementations. Nothing here shares code with the library paths
// it is used to check.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct Event {
  std::int64_t t;  // shifted time
  int channel;     // 0 = stream 1, 1 = stream 2
};

inline std::vector<Event> merged(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                 std::int64_t offset) {
  std::vector<Event> ev;
  for (auto t : a) ev.push_back({t, 0});
  for (auto t : b) ev.push_back({t - offset, 1});
  std::stable_sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
    return x.t != y.t ? x.t < y.t : x.channel < y.channel;
  });
  return ev;
}

/// O(n^2): every event, in time order, scans all earlier events and pairs with the
/// earliest unconsumed opposite-channel event within +-window/2.
inline std::uint64_t brute_force_count(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b, std::int64_t window,
                                       std::int64_t offset) {
  const auto ev = merged(a, b, offset);
  std::vector<char> used(ev.size(), 0);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (used[k] || ev[k].channel == ev[i].channel) continue;
      if (2 * (ev[i].t - ev[k].t) > window) continue;
      used[k] = used[i] = 1;
      ++count;
      break;
    }
  }
  return count;
}

/// Same rule as brute_force_count; the backward scan stops once events fall outside the
/// window, which cannot change the outcome because the merged list is time-sorted.
inline std::uint64_t brute_force_count_windowed(const std::vector<std::int64_t>& a,
                                                const std::vector<std::int64_t>& b,
                                                std::int64_t window, std::int64_t offset) {
  const auto ev = merged(a, b, offset);
  std::vector<char> used(ev.size(), 0);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    std::size_t best = ev.size();
    for (std::size_t k = i; k-- > 0;) {
      if (2 * (ev[i].t - ev[k].t) > window) break;
      if (!used[k] && ev[k].channel != ev[i].channel) best = k;
    }
    if (best != ev.size()) {
      used[best] = used[i] = 1;
      ++count;
    }
  }
  return count;
}

/// Maximum-cardinality bipartite matching (augmenting paths) on the window graph.
inline std::uint64_t max_matching(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                  std::int64_t window, std::int64_t offset) {
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto d = b[j] - offset - a[i];
      if (2 * (d < 0 ? -d : d) <= window) adj[i].push_back(j);
    }
  }
  std::vector<long> match_b(b.size(), -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (auto v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_b[v] < 0 || augment(static_cast<std::size_t>(match_b[v]))) {
        match_b[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  std::uint64_t count = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    seen.assign(b.size(), 0);
    if (augment(u)) ++count;
  }
  return count;
}

/// Composite Simpson's rule for |int_0^L exp(i dk z) dz|^2.
inline double simpson_rate(std::complex<double> dk, double L, int panels = 10000) {
  const double h = L / panels;
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> sum = std::exp(i * dk * 0.0) + std::exp(i * dk * L);
  for (int k = 1; k < panels; ++k) {
    sum += (k % 2 ? 4.0 : 2.0) * std::exp(i * dk * (k * h));
  }
  return std::norm(sum * h / 3.0);
}

/// Sorted random timestamps: uniform over [0, span] with occasional near-duplicates.
inline std::vector<std::int64_t> random_times(std::mt19937_64& rng, std::size_t n, std::int64_t span) {
  std::uniform_int_distribution<std::int64_t> t(0, span);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = t(rng);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace oracle
