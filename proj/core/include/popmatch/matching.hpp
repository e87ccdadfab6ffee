#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "popmatch/profile.hpp"

namespace popmatch {

/// Assignment of every person to a real item from their list or to their own
/// last resort (id m + a). Real items are used at most once.
struct Matching {
  std::vector<ItemId> assignment;  // indexed by person

  bool operator==(const Matching&) const = default;
};

/// Checks injectivity on real items, list membership of every assigned real
/// item, and that last resorts are only used by their owner. Returns
/// std::nullopt when valid.
std::optional<std::string> validate_matching(const Matching& matching,
                                             const PreferenceProfile& profile);

/// phi(M, M2): how many people strictly prefer their item under M to their
/// item under M2. Last resorts rank below all listed items. Throws
/// std::invalid_argument on an invalid matching.
std::uint32_t phi(const Matching& matching, const Matching& other,
                  const PreferenceProfile& profile);

enum class Comparison { wins, loses, ties };

/// M wins over M2 iff phi(M, M2) > phi(M2, M).
Comparison compare(const Matching& matching, const Matching& other,
                   const PreferenceProfile& profile);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Thrown when the enumeration search space bound (product over people of
/// list length + 1) exceeds the configured cap.
struct EnumerationCapExceeded : std::runtime_error {
  EnumerationCapExceeded(std::uint64_t required_, std::uint64_t cap_)
      : std::runtime_error("matching enumeration needs a cap of at least " +
                           std::to_string(required_) + " (configured: " + std::to_string(cap_) +
                           ")"),
        required(required_),
        cap(cap_) {}
  std::uint64_t required;  // saturates at uint64 max
  std::uint64_t cap;
};

/// Product over people of (list length + 1), saturated; the enumeration
/// search-space bound checked against the cap.
std::uint64_t enumeration_bound(const PreferenceProfile& profile);

/// Streams every valid Matching exactly once: people in index order, choices
/// in rank order with the last resort last, real items used injectively.
/// Single consumer.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const PreferenceProfile& profile, std::uint64_t cap = kDefaultEnumerationCap);
  ~MatchingEnumerator();
  MatchingEnumerator(MatchingEnumerator&&) noexcept;
  MatchingEnumerator& operator=(MatchingEnumerator&&) noexcept;

  /// Next matching in deterministic order, or std::nullopt when exhausted.
  std::optional<Matching> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Materializes the full enumeration (ordering as above).
std::vector<Matching> enumerate_matchings(const PreferenceProfile& profile,
                                          std::uint64_t cap = kDefaultEnumerationCap);

/// True iff the matching loses to no enumerated matching. Exhaustive; only
/// meaningful within the enumeration cap.
bool is_popular_bruteforce(const Matching& matching, const PreferenceProfile& profile,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Scans the enumeration order for a popular matching; returns the first one
/// found (a deterministic witness) or std::nullopt when none exists.
std::optional<Matching> exists_popular_bruteforce(const PreferenceProfile& profile,
                                                  std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace popmatch
