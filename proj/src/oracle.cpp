#include "dichroma/oracle.hpp"

#include <bit>
#include <string>

namespace dichroma::oracle {

namespace {

void check_order(const Digraph& d) {
  if (d.order() > kMaxOracleOrder) {
    throw InputError("brute-force oracle supports at most " + std::to_string(kMaxOracleOrder) + " vertices");
  }
}

// D[m] is acyclic iff repeatedly stripping vertices without an in-neighbour
// inside the remaining set empties it.
bool strip_to_empty(std::uint32_t m, const std::vector<std::uint32_t>& pred) {
  while (m) {
    std::uint32_t sources = 0;
    for (std::uint32_t r = m; r; r &= r - 1) {
      const int v = std::countr_zero(r);
      if ((pred[v] & m) == 0) sources |= 1u << v;
    }
    if (!sources) return false;
    m &= ~sources;
  }
  return true;
}

}  // namespace

std::vector<bool> acyclic_masks(const Digraph& d) {
  check_order(d);
  const std::size_t n = d.order();
  std::vector<std::uint32_t> pred(n, 0);
  for (const auto& [u, v] : d.arcs()) pred[v] |= 1u << u;
  std::vector<bool> ok(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < ok.size(); ++m) ok[m] = strip_to_empty(m, pred);
  return ok;
}

std::size_t max_acyclic_set(const Digraph& d) {
  const auto ok = acyclic_masks(d);
  std::size_t best = 0;
  for (std::uint32_t m = 0; m < ok.size(); ++m) {
    if (ok[m]) best = std::max<std::size_t>(best, std::popcount(m));
  }
  return best;
}

std::size_t chromatic_number(const Digraph& d) {
  const std::size_t n = d.order();
  if (n == 0) return 0;
  const auto ok = acyclic_masks(d);
  // Restricted growth strings: vertex i joins an existing block or opens
  // block number `used`. Singletons are always a valid partition.
  std::vector<std::uint32_t> masks(n, 0);
  std::size_t best = n;
  auto rec = [&](auto& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      for (std::size_t b = 0; b < used; ++b) {
        if (!ok[masks[b]]) return;
      }
      best = std::min(best, used);
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      const std::size_t next_used = b == used ? used + 1 : used;
      if (next_used >= best && next_used > used) continue;
      masks[b] |= 1u << i;
      self(self, i + 1, next_used);
      masks[b] &= ~(1u << i);
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace dichroma::oracle
