#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace popmatch {

using PersonId = std::uint32_t;
using ItemId = std::uint32_t;

/// A matching instance: n people, m real items, and one strict (duplicate
/// free, possibly incomplete) ranked list per person. Lists are stored in one
/// flat array; position 0 of a list is rank 1. Immutable after construction
/// and safe to share across threads.
struct PreferenceProfile {
  std::uint32_t n = 0;  // people, ids [0, n)
  std::uint32_t m = 0;  // real items, ids [0, m)
  std::vector<std::uint32_t> offsets;  // size n + 1
  std::vector<ItemId> entries;         // concatenated rank-ordered lists

  std::span<const ItemId> list(PersonId a) const {
    return {entries.data() + offsets[a], offsets[a + 1] - offsets[a]};
  }
  std::uint32_t list_size(PersonId a) const { return offsets[a + 1] - offsets[a]; }

  static PreferenceProfile from_lists(std::uint32_t m,
                                      const std::vector<std::vector<ItemId>>& lists);
};

/// Encoding of the per-person last resort item: person a's last resort gets
/// the virtual id m + a, usable only by a and ranked strictly below every
/// real item on a's list. Last resorts are never stored in the lists.
struct LastResort {
  static ItemId id(const PreferenceProfile& p, PersonId a) { return p.m + a; }
  static bool is(const PreferenceProfile& p, ItemId b) { return b >= p.m; }
  static PersonId owner(const PreferenceProfile& p, ItemId b) { return b - p.m; }
  static std::uint32_t rank(const PreferenceProfile& p, PersonId a) {
    return p.list_size(a) + 1;
  }
};

/// Rank of item b for person a: list position + 1. The last resort of a ranks
/// list length + 1. Returns 0 when b is neither listed by a nor a's own last
/// resort.
std::uint32_t rank_of(const PreferenceProfile& p, PersonId a, ItemId b);

/// Independent uniform k-permutations of the m items, one per person.
/// Per-person streams are derived as hash(seed, person), so the result does
/// not depend on generation order. Throws std::invalid_argument when n = 0,
/// n > m or k is outside [1, m].
PreferenceProfile generate_incomplete(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                                      std::uint64_t seed);

/// Full-length lists: generate_incomplete with k = m.
PreferenceProfile generate_complete(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

/// Fixed but unequal list lengths: people_per_length maps a list length to
/// how many people get that length. People are numbered by ascending length.
PreferenceProfile generate_mixed(const std::map<std::uint32_t, std::uint32_t>& people_per_length,
                                 std::uint32_t m, std::uint64_t seed);

/// Checks every PreferenceProfile invariant. Returns std::nullopt when the
/// profile is well formed, otherwise a description naming the first offending
/// person (or the profile-level violation).
std::optional<std::string> validate(const PreferenceProfile& profile);

}  // namespace popmatch
