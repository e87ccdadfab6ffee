#include "popmatch/matching.hpp"

#include <limits>

namespace popmatch {
namespace {

// Shared backtracking core: walks all valid assignments in deterministic
// order (people by index, choices by rank, last resort last) without
// allocating per matching. choice[a] == list_size(a) encodes the last resort.
class EnumeratorCore {
 public:
  explicit EnumeratorCore(const PreferenceProfile& profile)
      : profile_(profile),
        choice_(profile.n, 0),
        item_used_(profile.m, 0) {}

  // Advances to the next complete assignment; false when exhausted.
  bool next() {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      descend_from(0);
      return true;
    }
    std::uint32_t depth = profile_.n;
    while (depth > 0) {
      --depth;
      release(depth);
      if (advance_choice(depth)) {
        descend_from(depth + 1);
        return true;
      }
    }
    done_ = true;
    return false;
  }

  ItemId assigned(PersonId a) const {
    const auto list = profile_.list(a);
    return choice_[a] < list.size() ? list[choice_[a]] : LastResort::id(profile_, a);
  }

  // rank of the current choice: list position + 1, last resort = length + 1.
  std::uint32_t rank(PersonId a) const { return choice_[a] + 1; }

  Matching materialize() const {
    Matching m;
    m.assignment.resize(profile_.n);
    for (PersonId a = 0; a < profile_.n; ++a) m.assignment[a] = assigned(a);
    return m;
  }

 private:
  bool feasible(PersonId a, std::uint32_t c) const {
    const auto list = profile_.list(a);
    return c >= list.size() || !item_used_[list[c]];
  }

  void take(PersonId a) {
    const auto list = profile_.list(a);
    if (choice_[a] < list.size()) item_used_[list[choice_[a]]] = 1;
  }

  void release(PersonId a) {
    const auto list = profile_.list(a);
    if (choice_[a] < list.size()) item_used_[list[choice_[a]]] = 0;
  }

  // Moves person a to the next feasible choice strictly after the current
  // one; false when the last resort (always last) has been passed.
  bool advance_choice(PersonId a) {
    const std::uint32_t limit = profile_.list_size(a);
    for (std::uint32_t c = choice_[a] + 1; c <= limit; ++c) {
      if (feasible(a, c)) {
        choice_[a] = c;
        take(a);
        return true;
      }
    }
    return false;
  }

  // Gives every person from depth on their first feasible choice. Always
  // succeeds: the last resort is feasible for everyone.
  void descend_from(std::uint32_t depth) {
    for (PersonId a = depth; a < profile_.n; ++a) {
      const std::uint32_t limit = profile_.list_size(a);
      for (std::uint32_t c = 0; c <= limit; ++c) {
        if (feasible(a, c)) {
          choice_[a] = c;
          take(a);
          break;
        }
      }
    }
  }

  const PreferenceProfile& profile_;
  std::vector<std::uint32_t> choice_;
  std::vector<std::uint8_t> item_used_;
  bool started_ = false;
  bool done_ = false;
};

void require_valid(const Matching& matching, const PreferenceProfile& profile) {
  if (auto violation = validate_matching(matching, profile))
    throw std::invalid_argument("invalid matching: " + *violation);
}

void check_cap(const PreferenceProfile& profile, std::uint64_t cap) {
  const std::uint64_t bound = enumeration_bound(profile);
  if (bound > cap) throw EnumerationCapExceeded(bound, cap);
}

}  // namespace

std::optional<std::string> validate_matching(const Matching& matching,
                                             const PreferenceProfile& profile) {
  if (matching.assignment.size() != profile.n)
    return "assignment size " + std::to_string(matching.assignment.size()) +
           " does not match n = " + std::to_string(profile.n);
  std::vector<std::uint8_t> used(profile.m, 0);
  for (PersonId a = 0; a < profile.n; ++a) {
    const ItemId b = matching.assignment[a];
    if (LastResort::is(profile, b)) {
      if (LastResort::owner(profile, b) != a)
        return "person " + std::to_string(a) + " assigned a foreign last resort";
      continue;
    }
    if (rank_of(profile, a, b) == 0)
      return "person " + std::to_string(a) + " assigned unlisted item " + std::to_string(b);
    if (used[b]) return "item " + std::to_string(b) + " assigned twice";
    used[b] = 1;
  }
  return std::nullopt;
}

std::uint32_t phi(const Matching& matching, const Matching& other,
                  const PreferenceProfile& profile) {
  require_valid(matching, profile);
  require_valid(other, profile);
  std::uint32_t prefer = 0;
  for (PersonId a = 0; a < profile.n; ++a)
    if (rank_of(profile, a, matching.assignment[a]) <
        rank_of(profile, a, other.assignment[a]))
      ++prefer;
  return prefer;
}

Comparison compare(const Matching& matching, const Matching& other,
                   const PreferenceProfile& profile) {
  const std::uint32_t forward = phi(matching, other, profile);
  const std::uint32_t backward = phi(other, matching, profile);
  if (forward > backward) return Comparison::wins;
  if (forward < backward) return Comparison::loses;
  return Comparison::ties;
}

std::uint64_t enumeration_bound(const PreferenceProfile& profile) {
  std::uint64_t bound = 1;
  for (PersonId a = 0; a < profile.n; ++a) {
    const std::uint64_t factor = profile.list_size(a) + 1ull;
    if (bound > std::numeric_limits<std::uint64_t>::max() / factor)
      return std::numeric_limits<std::uint64_t>::max();
    bound *= factor;
  }
  return bound;
}

struct MatchingEnumerator::Impl {
  explicit Impl(const PreferenceProfile& profile) : core(profile) {}
  EnumeratorCore core;
};

MatchingEnumerator::MatchingEnumerator(const PreferenceProfile& profile, std::uint64_t cap) {
  check_cap(profile, cap);
  impl_ = std::make_unique<Impl>(profile);
}

MatchingEnumerator::~MatchingEnumerator() = default;
MatchingEnumerator::MatchingEnumerator(MatchingEnumerator&&) noexcept = default;
MatchingEnumerator& MatchingEnumerator::operator=(MatchingEnumerator&&) noexcept = default;

std::optional<Matching> MatchingEnumerator::next() {
  if (!impl_->core.next()) return std::nullopt;
  return impl_->core.materialize();
}

std::vector<Matching> enumerate_matchings(const PreferenceProfile& profile, std::uint64_t cap) {
  check_cap(profile, cap);
  std::vector<Matching> all;
  EnumeratorCore core(profile);
  while (core.next()) all.push_back(core.materialize());
  return all;
}

bool is_popular_bruteforce(const Matching& matching, const PreferenceProfile& profile,
                           std::uint64_t cap) {
  check_cap(profile, cap);
  require_valid(matching, profile);
  std::vector<std::uint32_t> ranks(profile.n);
  for (PersonId a = 0; a < profile.n; ++a)
    ranks[a] = rank_of(profile, a, matching.assignment[a]);

  EnumeratorCore core(profile);
  while (core.next()) {
    std::int64_t margin = 0;  // phi(other, matching) - phi(matching, other)
    for (PersonId a = 0; a < profile.n; ++a) {
      const std::uint32_t r = core.rank(a);
      margin += (r < ranks[a]) - (ranks[a] < r);
    }
    if (margin > 0) return false;
  }
  return true;
}

std::optional<Matching> exists_popular_bruteforce(const PreferenceProfile& profile,
                                                  std::uint64_t cap) {
  check_cap(profile, cap);
  const std::uint32_t n = profile.n;

  // Flat snapshot of the whole enumeration: ranks drive the popularity
  // scans, choices let us rebuild the witness without re-enumerating.
  std::vector<std::uint32_t> ranks;
  EnumeratorCore core(profile);
  while (core.next())
    for (PersonId a = 0; a < n; ++a) ranks.push_back(core.rank(a));
  const std::size_t count = ranks.size() / n;

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t* mine = ranks.data() + i * n;
    bool popular = true;
    for (std::size_t j = 0; j < count && popular; ++j) {
      if (j == i) continue;
      const std::uint32_t* theirs = ranks.data() + j * n;
      std::int64_t margin = 0;
      for (std::uint32_t a = 0; a < n; ++a) margin += (theirs[a] < mine[a]) - (mine[a] < theirs[a]);
      if (margin > 0) popular = false;
    }
    if (popular) {
      // Re-walk the enumeration to materialize witness i.
      EnumeratorCore rebuild(profile);
      for (std::size_t step = 0; step <= i; ++step) rebuild.next();
      return rebuild.materialize();
    }
  }
  return std::nullopt;
}

}  // namespace popmatch
