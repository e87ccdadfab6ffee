#include "popmatch/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace popmatch {
namespace {

std::string fmt(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

}  // namespace

std::string format_double(double value) { return fmt("%.12g", value); }

void write_profile(std::ostream& out, const PreferenceProfile& profile) {
  out << profile.n << ' ' << profile.m << '\n';
  for (PersonId a = 0; a < profile.n; ++a) {
    const auto list = profile.list(a);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out << ' ';
      out << list[i];
    }
    out << '\n';
  }
}

std::string profile_to_string(const PreferenceProfile& profile) {
  std::ostringstream out;
  write_profile(out, profile);
  return out.str();
}

PreferenceProfile read_profile(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ProfileParseError("empty input, expected header \"n m\"");
  std::istringstream header(line);
  std::int64_t n = 0;
  std::int64_t m = 0;
  if (!(header >> n >> m) || n < 0 || m < 0)
    throw ProfileParseError("line 1: malformed header, expected \"n m\"");
  std::string extra;
  if (header >> extra) throw ProfileParseError("line 1: trailing tokens after header");

  std::vector<std::vector<ItemId>> lists;
  lists.reserve(static_cast<std::size_t>(n));
  for (std::int64_t a = 0; a < n; ++a) {
    if (!std::getline(in, line))
      throw ProfileParseError("line " + std::to_string(a + 2) + ": missing list for person " +
                              std::to_string(a));
    std::istringstream items(line);
    std::vector<ItemId> list;
    std::int64_t value = 0;
    while (items >> value) {
      if (value < 0 || value >= m)
        throw ProfileParseError("line " + std::to_string(a + 2) + ": item " +
                                std::to_string(value) + " out of range [0, " + std::to_string(m) +
                                ")");
      list.push_back(static_cast<ItemId>(value));
    }
    if (!items.eof())
      throw ProfileParseError("line " + std::to_string(a + 2) + ": malformed item index");
    lists.push_back(std::move(list));
  }

  auto profile = PreferenceProfile::from_lists(static_cast<std::uint32_t>(m), lists);
  profile.n = static_cast<std::uint32_t>(n);
  if (auto violation = validate(profile)) throw ProfileParseError(*violation);
  return profile;
}

namespace {

constexpr const char* kSweepColumns[] = {
    "n",      "m",           "k",         "alpha_requested", "alpha_realized", "trials",
    "exists_freq", "exists_se", "a2_mean", "a2_sd",           "elapsed_ms"};

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kSweepColumns); ++i)
    out << (i ? "," : "") << kSweepColumns[i];
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.n << ',' << row.m << ',' << row.k << ',' << format_double(row.alpha_requested)
        << ',' << format_double(row.alpha_realized) << ',' << row.trials << ','
        << format_double(row.exists_freq) << ',' << format_double(row.exists_se) << ','
        << format_double(row.a2_mean) << ',' << format_double(row.a2_sd) << ','
        << format_double(row.elapsed_ms) << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["m"] = row.m;
    r["k"] = row.k;
    r["alpha_requested"] = row.alpha_requested;
    r["alpha_realized"] = row.alpha_realized;
    r["trials"] = row.trials;
    r["exists_freq"] = row.exists_freq;
    r["exists_se"] = row.exists_se;
    r["a2_mean"] = row.a2_mean;
    r["a2_sd"] = row.a2_sd;
    r["elapsed_ms"] = row.elapsed_ms;
    rows.push_back(std::move(r));
  }
  return rows.dump(2) + "\n";
}

namespace {

// Minimal SVG scaffolding; coordinates are emitted with fixed precision so
// output bytes are stable.
struct Frame {
  double x0, x1, y0, y1;        // data ranges
  double px0, px1, py0, py1;    // pixel box (py0 is the top)

  double x(double v) const { return px0 + (v - x0) / (x1 - x0) * (px1 - px0); }
  double y(double v) const { return py1 - (v - y0) / (y1 - y0) * (py1 - py0); }
};

std::string coord(double v) { return fmt("%.2f", v); }

void svg_open(std::ostringstream& out, int width, int height) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ostringstream& out, const Frame& f, const std::string& x_label,
              const std::string& y_label, const std::vector<double>& x_ticks,
              const std::vector<double>& y_ticks) {
  out << "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n"
      << "<line x1=\"" << coord(f.px0) << "\" y1=\"" << coord(f.py1) << "\" x2=\""
      << coord(f.px1) << "\" y2=\"" << coord(f.py1) << "\"/>\n"
      << "<line x1=\"" << coord(f.px0) << "\" y1=\"" << coord(f.py0) << "\" x2=\""
      << coord(f.px0) << "\" y2=\"" << coord(f.py1) << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (const double t : x_ticks) {
    out << "<line stroke=\"black\" x1=\"" << coord(f.x(t)) << "\" y1=\"" << coord(f.py1)
        << "\" x2=\"" << coord(f.x(t)) << "\" y2=\"" << coord(f.py1 + 4) << "\"/>\n";
    out << "<text text-anchor=\"middle\" x=\"" << coord(f.x(t)) << "\" y=\""
        << coord(f.py1 + 16) << "\">" << fmt("%g", t) << "</text>\n";
  }
  for (const double t : y_ticks) {
    out << "<line stroke=\"black\" x1=\"" << coord(f.px0 - 4) << "\" y1=\"" << coord(f.y(t))
        << "\" x2=\"" << coord(f.px0) << "\" y2=\"" << coord(f.y(t)) << "\"/>\n";
    out << "<text text-anchor=\"end\" x=\"" << coord(f.px0 - 7) << "\" y=\""
        << coord(f.y(t) + 4) << "\">" << fmt("%g", t) << "</text>\n";
  }
  out << "<text text-anchor=\"middle\" x=\"" << coord((f.px0 + f.px1) / 2) << "\" y=\""
      << coord(f.py1 + 34) << "\">" << x_label << "</text>\n";
  out << "<text text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << coord((f.py0 + f.py1) / 2) << ")\" x=\"14\" y=\"" << coord((f.py0 + f.py1) / 2)
      << "\">" << y_label << "</text>\n</g>\n";
}

void svg_dashed_vline(std::ostringstream& out, const Frame& f, double x,
                      const std::string& label) {
  if (x < f.x0 || x > f.x1) return;
  out << "<line stroke=\"gray\" stroke-dasharray=\"6 4\" x1=\"" << coord(f.x(x)) << "\" y1=\""
      << coord(f.py0) << "\" x2=\"" << coord(f.x(x)) << "\" y2=\"" << coord(f.py1) << "\"/>\n";
  out << "<text font-family=\"sans-serif\" font-size=\"11\" fill=\"gray\" x=\""
      << coord(f.x(x) + 4) << "\" y=\"" << coord(f.py0 + 12) << "\">" << label << "</text>\n";
}

std::vector<double> ticks(double lo, double hi, int target) {
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double s : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (mag * s >= raw) {
      step = mag * s;
      break;
    }
  std::vector<double> result;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    result.push_back(t);
  return result;
}

}  // namespace

std::string sweep_svg(const SweepReport& report, std::optional<double> alpha_marker) {
  const int width = 640;
  const int height = 420;
  double lo = 1.0;
  double hi = 2.0;
  if (!report.rows.empty()) {
    lo = hi = report.rows.front().alpha_realized;
    for (const auto& row : report.rows) {
      lo = std::min(lo, row.alpha_realized);
      hi = std::max(hi, row.alpha_realized);
    }
    if (alpha_marker) {
      lo = std::min(lo, *alpha_marker);
      hi = std::max(hi, *alpha_marker);
    }
    const double pad = std::max(0.02, (hi - lo) * 0.05);
    lo -= pad;
    hi += pad;
  }
  Frame f{lo, hi, 0.0, 1.0, 56.0, width - 16.0, 16.0, height - 48.0};

  std::ostringstream out;
  svg_open(out, width, height);
  svg_axes(out, f, "alpha = m/n", "existence frequency", ticks(lo, hi, 8),
           {0.0, 0.25, 0.5, 0.75, 1.0});
  if (alpha_marker) svg_dashed_vline(out, f, *alpha_marker, "alpha_k");

  if (!report.rows.empty()) {
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : report.rows)
      out << coord(f.x(row.alpha_realized)) << ',' << coord(f.y(row.exists_freq)) << ' ';
    out << "\"/>\n";
    for (const auto& row : report.rows) {
      out << "<circle fill=\"steelblue\" cx=\"" << coord(f.x(row.alpha_realized)) << "\" cy=\""
          << coord(f.y(row.exists_freq)) << "\" r=\"2.5\"/>\n";
      // 2-sigma error bar
      const double y_lo = std::max(0.0, row.exists_freq - 2 * row.exists_se);
      const double y_hi = std::min(1.0, row.exists_freq + 2 * row.exists_se);
      out << "<line stroke=\"steelblue\" x1=\"" << coord(f.x(row.alpha_realized)) << "\" y1=\""
          << coord(f.y(y_lo)) << "\" x2=\"" << coord(f.x(row.alpha_realized)) << "\" y2=\""
          << coord(f.y(y_hi)) << "\"/>\n";
    }
    const auto& first = report.rows.front();
    out << "<text font-family=\"sans-serif\" font-size=\"12\" fill=\"black\" x=\""
        << coord(f.px0 + 8) << "\" y=\"" << coord(f.py0 + 14) << "\">n=" << first.n
        << " k=" << first.k << " trials=" << first.trials << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string curve_csv(const TransitionCurve& curve, double alpha_star_value) {
  std::ostringstream out;
  out << "k,alpha_k\n";
  for (const auto& point : curve.points) {
    out << point.k << ',';
    out << (point.alpha ? format_double(*point.alpha) : "no-root") << '\n';
  }
  out << "# alpha_star," << format_double(alpha_star_value) << '\n';
  return out.str();
}

std::string curve_json(const TransitionCurve& curve, double alpha_star_value) {
  nlohmann::ordered_json doc;
  doc["points"] = nlohmann::ordered_json::array();
  for (const auto& point : curve.points) {
    nlohmann::ordered_json p;
    p["k"] = point.k;
    if (point.alpha)
      p["alpha_k"] = *point.alpha;
    else
      p["alpha_k"] = nullptr;
    doc["points"].push_back(std::move(p));
  }
  doc["alpha_star"] = alpha_star_value;
  return doc.dump(2) + "\n";
}

std::string curve_svg(const TransitionCurve& curve, double alpha_star_value) {
  const int width = 640;
  const int height = 420;
  std::uint32_t k_max = 4;
  for (const auto& point : curve.points)
    if (point.alpha) k_max = std::max(k_max, point.k);
  Frame f{1.0, 1.5, 0.0, static_cast<double>(k_max) + 1.0, 56.0, width - 16.0, 16.0,
          height - 48.0};

  std::ostringstream out;
  svg_open(out, width, height);
  svg_axes(out, f, "alpha", "k", ticks(1.0, 1.5, 6), ticks(0.0, k_max + 1.0, 8));
  svg_dashed_vline(out, f, alpha_star_value, "alpha_*");
  out << "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.5\" points=\"";
  for (const auto& point : curve.points)
    if (point.alpha) out << coord(f.x(*point.alpha)) << ',' << coord(f.y(point.k)) << ' ';
  out << "\"/>\n";
  for (const auto& point : curve.points)
    if (point.alpha)
      out << "<circle fill=\"firebrick\" cx=\"" << coord(f.x(*point.alpha)) << "\" cy=\""
          << coord(f.y(point.k)) << "\" r=\"2.5\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace popmatch
