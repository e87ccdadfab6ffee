#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "popmatch/analysis.hpp"
#include "popmatch/profile.hpp"

namespace popmatch {

struct ProfileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented text format: header "n m", then one line per person with
/// item indices in rank order.
void write_profile(std::ostream& out, const PreferenceProfile& profile);
std::string profile_to_string(const PreferenceProfile& profile);

/// Parses and validates; throws ProfileParseError with a line-level message.
PreferenceProfile read_profile(std::istream& in);

/// Shared numeric formatting for all machine-readable output (%.12g).
std::string format_double(double value);

/// CSV schema:
/// n,m,k,alpha_requested,alpha_realized,trials,exists_freq,exists_se,a2_mean,a2_sd,elapsed_ms
std::string sweep_csv(const SweepReport& report);

/// JSON array mirroring the CSV fields, in CSV column order.
std::string sweep_json(const SweepReport& report);

/// Self-contained S-curve plot (frequency vs alpha) with an optional dashed
/// vertical marker at the transition point.
std::string sweep_svg(const SweepReport& report, std::optional<double> alpha_marker);

/// CSV table "k,alpha_k" with no-root markers, alpha_star footer comment.
std::string curve_csv(const TransitionCurve& curve, double alpha_star_value);
std::string curve_json(const TransitionCurve& curve, double alpha_star_value);

/// Transition-point curve with a dashed line at alpha_star.
std::string curve_svg(const TransitionCurve& curve, double alpha_star_value);

}  // namespace popmatch
