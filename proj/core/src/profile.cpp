#include "popmatch/profile.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "popmatch/rng.hpp"

namespace popmatch {
namespace {

// Partial Fisher-Yates: writes a uniform k-permutation of {0..m-1} to out.
// The three storage strategies below consume identical draws from rng and
// produce identical output; they differ only in how the virtual array
// {0..m-1} is materialized.
void sample_k_permutation(Rng& rng, std::uint32_t m, std::uint32_t k, ItemId* out) {
  if (2ull * k >= m) {
    // Dense: worth materializing the whole array.
    std::vector<ItemId> items(m);
    std::iota(items.begin(), items.end(), 0u);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::uint32_t>(i + rng.below(m - i));
      std::swap(items[i], items[j]);
      out[i] = items[i];
    }
    return;
  }
  if (k <= 64) {
    // Tiny k: flat list of displaced positions, linear scans. Positions stay
    // unique: a repeated swap target updates its slot in place.
    std::pair<std::uint32_t, ItemId> moved[64];
    std::uint32_t used = 0;
    auto value_at = [&](std::uint32_t pos) {
      for (std::uint32_t t = 0; t < used; ++t)
        if (moved[t].first == pos) return moved[t].second;
      return pos;
    };
    auto set_value = [&](std::uint32_t pos, ItemId value) {
      for (std::uint32_t t = 0; t < used; ++t)
        if (moved[t].first == pos) {
          moved[t].second = value;
          return;
        }
      moved[used++] = {pos, value};
    };
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::uint32_t>(i + rng.below(m - i));
      const ItemId vj = value_at(j);
      set_value(j, value_at(i));
      out[i] = vj;
    }
    return;
  }
  // Sparse swap map for large k that is still far below m.
  std::unordered_map<std::uint32_t, ItemId> moved;
  moved.reserve(2 * k);
  auto value_at = [&](std::uint32_t pos) -> ItemId {
    auto it = moved.find(pos);
    return it == moved.end() ? pos : it->second;
  };
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::uint32_t>(i + rng.below(m - i));
    const ItemId vj = value_at(j);
    moved[j] = value_at(i);
    out[i] = vj;
  }
}

void check_generator_args(std::uint32_t n, std::uint32_t m, std::uint32_t k) {
  if (n == 0) throw std::invalid_argument("generator: n must be at least 1");
  if (n > m) throw std::invalid_argument("generator: requires m >= n (alpha >= 1)");
  if (k == 0 || k > m) throw std::invalid_argument("generator: k must be in [1, m]");
}

}  // namespace

PreferenceProfile PreferenceProfile::from_lists(std::uint32_t m,
                                                const std::vector<std::vector<ItemId>>& lists) {
  PreferenceProfile p;
  p.n = static_cast<std::uint32_t>(lists.size());
  p.m = m;
  p.offsets.resize(p.n + 1, 0);
  for (std::uint32_t a = 0; a < p.n; ++a)
    p.offsets[a + 1] = p.offsets[a] + static_cast<std::uint32_t>(lists[a].size());
  p.entries.reserve(p.offsets.back());
  for (const auto& list : lists) p.entries.insert(p.entries.end(), list.begin(), list.end());
  return p;
}

std::uint32_t rank_of(const PreferenceProfile& p, PersonId a, ItemId b) {
  if (LastResort::is(p, b))
    return LastResort::owner(p, b) == a ? LastResort::rank(p, a) : 0;
  const auto list = p.list(a);
  for (std::uint32_t pos = 0; pos < list.size(); ++pos)
    if (list[pos] == b) return pos + 1;
  return 0;
}

PreferenceProfile generate_incomplete(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                                      std::uint64_t seed) {
  check_generator_args(n, m, k);
  PreferenceProfile p;
  p.n = n;
  p.m = m;
  p.offsets.resize(n + 1);
  for (std::uint32_t a = 0; a <= n; ++a) p.offsets[a] = a * k;
  p.entries.resize(static_cast<std::size_t>(n) * k);
  for (std::uint32_t a = 0; a < n; ++a) {
    Rng rng(derive_seed(seed, a));
    sample_k_permutation(rng, m, k, p.entries.data() + p.offsets[a]);
  }
  return p;
}

PreferenceProfile generate_complete(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  return generate_incomplete(n, m, m, seed);
}

PreferenceProfile generate_mixed(const std::map<std::uint32_t, std::uint32_t>& people_per_length,
                                 std::uint32_t m, std::uint64_t seed) {
  std::uint64_t total = 0;
  for (const auto& [length, count] : people_per_length) {
    if (length == 0 || length > m)
      throw std::invalid_argument("generate_mixed: list length must be in [1, m]");
    total += count;
  }
  if (total == 0) throw std::invalid_argument("generate_mixed: no people requested");
  if (total > m) throw std::invalid_argument("generate_mixed: requires m >= total people");

  PreferenceProfile p;
  p.n = static_cast<std::uint32_t>(total);
  p.m = m;
  p.offsets.resize(p.n + 1, 0);
  std::uint32_t a = 0;
  for (const auto& [length, count] : people_per_length)
    for (std::uint32_t i = 0; i < count; ++i, ++a) p.offsets[a + 1] = p.offsets[a] + length;
  p.entries.resize(p.offsets.back());
  a = 0;
  for (const auto& [length, count] : people_per_length)
    for (std::uint32_t i = 0; i < count; ++i, ++a) {
      Rng rng(derive_seed(seed, a));
      sample_k_permutation(rng, m, length, p.entries.data() + p.offsets[a]);
    }
  return p;
}

std::optional<std::string> validate(const PreferenceProfile& profile) {
  if (profile.n == 0) return "profile: n must be at least 1";
  if (profile.m < profile.n)
    return "profile: m = " + std::to_string(profile.m) + " < n = " + std::to_string(profile.n);
  if (profile.offsets.size() != profile.n + 1 || profile.offsets.front() != 0 ||
      profile.offsets.back() != profile.entries.size())
    return "profile: offset table inconsistent with entries";
  std::vector<std::uint32_t> last_seen(profile.m, 0);  // person id + 1 stamps
  for (PersonId a = 0; a < profile.n; ++a) {
    if (profile.offsets[a + 1] < profile.offsets[a])
      return "person " + std::to_string(a) + ": negative list length";
    const auto list = profile.list(a);
    if (list.empty()) return "person " + std::to_string(a) + ": empty preference list";
    for (const ItemId b : list) {
      if (b >= profile.m)
        return "person " + std::to_string(a) + ": item " + std::to_string(b) +
               " out of range [0, " + std::to_string(profile.m) + ")";
      if (last_seen[b] == a + 1)
        return "person " + std::to_string(a) + ": duplicate item " + std::to_string(b);
      last_seen[b] = a + 1;
    }
  }
  return std::nullopt;
}

}  // namespace popmatch
