#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/operator.hpp"
#include "gluskabi/trajectory.hpp"

namespace gluskabi::cli {

struct SampleRow
{
  double t{0.0};
  double x{0.0};
  /// Defect value; empty outside its support.
  std::optional<double> u;
};

/// Grid a + j h (h = tau / samples_per_period) covering [a - 2 tau, b + 2 tau].
inline std::vector<double> sample_times(double a, double b, double tau, std::size_t samples_per_period)
{
  if (samples_per_period == 0) {
    throw DomainError("samples per period must be positive");
  }
  const double h = tau / static_cast<double>(samples_per_period);
  const auto lo = -2 * static_cast<long>(samples_per_period);
  const auto hi = static_cast<long>(std::floor((b + 2.0 * tau - a) / h + 1e-9));
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long j = lo; j <= hi; ++j) {
    t.push_back(a + static_cast<double>(j) * h);
  }
  return t;
}

inline std::vector<SampleRow> sample(
  const Trajectory & x, double a, double b, double tau, std::size_t samples_per_period)
{
  const auto u = defect(x, tau);
  std::vector<SampleRow> rows;
  for (const double t : sample_times(a, b, tau, samples_per_period)) {
    SampleRow row{t, x(t), std::nullopt};
    if (t >= a && t <= b + tau) {
      row.u = u(t);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_g17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream & os, const std::vector<SampleRow> & rows)
{
  os << "t,x,u\n";
  for (const auto & r : rows) {
    os << format_g17(r.t) << ',' << format_g17(r.x) << ',';
    if (r.u) {
      os << format_g17(*r.u);
    }
    os << '\n';
  }
}

namespace detail {

inline double parse_field(std::string_view s, std::size_t line)
{
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw DomainError("malformed CSV number '" + std::string(s) + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace detail

/// Read a `t,x,u` file as written by write_csv.
inline std::vector<SampleRow> read_csv(std::istream & is)
{
  std::string line;
  if (!std::getline(is, line) || line != "t,x,u") {
    throw DomainError("CSV must start with the header 't,x,u'");
  }
  std::vector<SampleRow> rows;
  std::size_t n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) {
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw DomainError("CSV line " + std::to_string(n) + " does not have three columns");
    }
    const std::string_view v(line);
    SampleRow r;
    r.t = detail::parse_field(v.substr(0, c1), n);
    r.x = detail::parse_field(v.substr(c1 + 1, c2 - c1 - 1), n);
    if (c2 + 1 < line.size()) {
      r.u = detail::parse_field(v.substr(c2 + 1), n);
    }
    rows.push_back(r);
  }
  return rows;
}

struct SvgOptions
{
  /// Samples per period along each continuous piece.
  std::size_t samples_per_period{200};
  std::string title;
};

/// Plot x over [a - 2 tau, b + 2 tau]; each piece between jumps becomes its own polyline.
inline void write_svg(
  std::ostream & os, const Trajectory & x, double a, double b, double tau,
  const SvgOptions & opts = {})
{
  constexpr double W = 800.0;
  constexpr double H = 400.0;
  constexpr double margin = 40.0;
  const double t0 = a - 2.0 * tau;
  const double t1 = b + 2.0 * tau;
  const double h = tau / static_cast<double>(std::max<std::size_t>(opts.samples_per_period, 2));

  std::vector<double> cuts{t0};
  for (const double s : x.discontinuities(t0, t1)) {
    if (s > t0 && s < t1 && std::abs(x(s) - x.left_limit(s)) > 1e-12) {
      cuts.push_back(s);
    }
  }
  cuts.push_back(t1);

  std::vector<std::vector<std::pair<double, double>>> pieces;
  double y0 = 0.0;
  double y1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const auto steps = std::max<long>(1, std::lround(std::ceil((hi - lo) / h)));
    std::vector<std::pair<double, double>> pts;
    for (long k = 0; k <= steps; ++k) {
      const double t = k == steps ? hi : lo + (hi - lo) * static_cast<double>(k) / steps;
      const double v = k == steps && i + 2 < cuts.size() ? x.left_limit(t) : x(t);
      pts.emplace_back(t, v);
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
    pieces.push_back(std::move(pts));
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double sx = (W - 2.0 * margin) / (t1 - t0);
  const double sy = (H - 2.0 * margin) / (y1 - y0);
  const auto px = [&](double t) {return margin + (t - t0) * sx;};
  const auto py = [&](double v) {return H - margin - (v - y0) * sy;};
  char buf[256];

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
        "viewBox=\"0 0 800 400\">\n";
  std::snprintf(
    buf, sizeof buf, "<!-- axes: px = %.6g + (t - %.6g) * %.6g, py = %.6g - (x - %.6g) * %.6g -->\n",
    margin, t0, sx, H - margin, y0, sy);
  os << buf;
  if (!opts.title.empty()) {
    os << "<title>" << opts.title << "</title>\n";
  }
  os << "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
  std::snprintf(
    buf, sizeof buf,
    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"#eeeeee\"/>\n",
    px(a), margin, px(b) - px(a), H - 2.0 * margin);
  os << buf;
  if (y0 < 0.0 && y1 > 0.0) {
    std::snprintf(
      buf, sizeof buf,
      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999999\"/>\n",
      margin, py(0.0), W - margin, py(0.0));
    os << buf;
  }
  std::snprintf(
    buf, sizeof buf,
    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.6g</text>\n"
    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n",
    margin, H - margin / 3.0, t0, W - margin, H - margin / 3.0, t1);
  os << buf;
  for (const auto & pts : pieces) {
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", k ? " " : "", px(pts[k].first), py(pts[k].second));
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace gluskabi::cli
