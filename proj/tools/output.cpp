#include "output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "config.hpp"

namespace gbcli {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed-point coordinate for SVG attributes.
std::string coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string hex_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r = 255;
  int g = 255;
  int b = 255;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = g = static_cast<int>(std::lround(255.0 * u));
  } else {
    const double u = (t - 0.5) / 0.5;
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - u)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string over_pi(double x) { return format_number(x / kPi, 4); }

}  // namespace

std::string format_number(double x, int max_digits) {
  if (x == 0.0) return "0";
  char buf[64];
  for (int p = 1; p <= max_digits; ++p) {
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, p);
    double back = 0.0;
    std::from_chars(buf, res.ptr, back);
    if (back == x || p == max_digits) return std::string(buf, res.ptr);
  }
  return {};
}

std::string scan_csv(const GridView& grid) {
  std::string out = "theta1,theta2,S\n";
  out.reserve(grid.values.size() * 36);
  for (std::size_t i = 0; i < grid.theta1.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta2.size(); ++j) {
      out += format_csv(grid.theta1[i]);
      out += ',';
      out += format_csv(grid.theta2[j]);
      out += ',';
      out += format_csv(grid.at(i, j));
      out += '\n';
    }
  }
  return out;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "beta,theta,S_qm,S_s1,S_s2,S_s3\n";
  for (std::size_t c = 0; c < table.betas.size(); ++c) {
    for (std::size_t t = 0; t < table.theta.size(); ++t) {
      out += format_csv(table.betas[c]);
      out += ',';
      out += format_csv(table.theta[t]);
      for (const auto& series : table.series[c]) {
        out += ',';
        out += format_csv(series[t]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string heatmap_svg(const GridView& grid, double threshold) {
  const std::size_t rows = grid.theta1.size();
  const std::size_t cols = grid.theta2.size();
  const auto [lo_it, hi_it] = std::minmax_element(grid.values.begin(), grid.values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  const bool constant = !(hi > lo);
  if (constant) {
    lo = -4.0;
    hi = 4.0;
  }

  constexpr double left = 70.0;
  constexpr double top = 30.0;
  constexpr double plot = 600.0;
  constexpr double legend_x = left + plot + 40.0;
  const double cw = plot / static_cast<double>(rows);
  const double ch = plot / static_cast<double>(cols);

  std::string out;
  out.reserve(rows * cols * 110 + 4096);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"830\" height=\"700\" "
         "viewBox=\"0 0 830 700\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"830\" height=\"700\" fill=\"#ffffff\"/>\n";
  out += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double s = grid.at(i, j);
      const bool above = !constant && s > threshold;
      const double x = left + cw * static_cast<double>(i);
      const double y = top + ch * static_cast<double>(cols - 1 - j);
      out += above ? "<rect class=\"cell above\" x=\"" : "<rect class=\"cell\" x=\"";
      out += coord(x) + "\" y=\"" + coord(y) + "\" width=\"" + coord(cw) + "\" height=\"" +
             coord(ch) + "\" fill=\"" + hex_color((s - lo) / (hi - lo)) + "\"";
      if (above) out += " stroke=\"#000000\" stroke-width=\"0.4\"";
      out += "/>\n";
    }
  }
  out += "</g>\n";

  // Axes with ticks every pi/2.
  out += "<g id=\"axes\" stroke=\"#000000\" fill=\"none\">\n";
  out += "<rect x=\"" + coord(left) + "\" y=\"" + coord(top) + "\" width=\"" + coord(plot) +
         "\" height=\"" + coord(plot) + "\"/>\n</g>\n";
  out += "<g id=\"ticks\" text-anchor=\"middle\">\n";
  const auto ticks = [](std::span<const double> axis) {
    std::vector<double> t;
    const double a = axis.front();
    const double b = axis.back();
    for (double k = std::ceil(a / (kPi / 2.0) - 1e-9); k * kPi / 2.0 <= b + 1e-9; k += 1.0) {
      t.push_back(k * kPi / 2.0);
    }
    return t;
  };
  const double t1_span = grid.theta1.back() - grid.theta1.front();
  const double t2_span = grid.theta2.back() - grid.theta2.front();
  for (double t : ticks(grid.theta1)) {
    const double x = left + plot * (t - grid.theta1.front()) / t1_span;
    out += "<text x=\"" + coord(x) + "\" y=\"" + coord(top + plot + 16.0) + "\">" + over_pi(t) +
           "</text>\n";
  }
  for (double t : ticks(grid.theta2)) {
    const double y = top + plot - plot * (t - grid.theta2.front()) / t2_span;
    out += "<text x=\"" + coord(left - 18.0) + "\" y=\"" + coord(y + 4.0) + "\">" +
           over_pi(t) + "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + coord(left + plot / 2.0) + "\" y=\"" + coord(top + plot + 40.0) +
         "\" text-anchor=\"middle\">θ1/π</text>\n";
  out += "<text x=\"" + coord(left - 48.0) + "\" y=\"" + coord(top + plot / 2.0) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 " + coord(left - 48.0) + " " +
         coord(top + plot / 2.0) + ")\">θ2/π</text>\n";

  // Legend: gradient bar with the colour-map range.
  out += "<defs><linearGradient id=\"cmap\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
         "<stop offset=\"0\" stop-color=\"#0000ff\"/>"
         "<stop offset=\"0.5\" stop-color=\"#ffffff\"/>"
         "<stop offset=\"1\" stop-color=\"#ff0000\"/></linearGradient></defs>\n";
  out += "<g id=\"legend\">\n";
  out += "<text x=\"" + coord(legend_x) + "\" y=\"" + coord(top + 10.0) + "\">S</text>\n";
  out += "<rect x=\"" + coord(legend_x) + "\" y=\"" + coord(top + 20.0) +
         "\" width=\"20\" height=\"300\" fill=\"url(#cmap)\" stroke=\"#000000\"/>\n";
  out += "<text class=\"legend-max\" x=\"" + coord(legend_x + 26.0) + "\" y=\"" +
         coord(top + 28.0) + "\">" + format_csv(hi) + "</text>\n";
  out += "<text class=\"legend-min\" x=\"" + coord(legend_x + 26.0) + "\" y=\"" +
         coord(top + 320.0) + "\">" + format_csv(lo) + "</text>\n";
  out += "<rect x=\"" + coord(legend_x) + "\" y=\"" + coord(top + 340.0) +
         "\" width=\"20\" height=\"12\" fill=\"none\" stroke=\"#000000\"/>\n";
  out += "<text x=\"" + coord(legend_x + 26.0) + "\" y=\"" + coord(top + 350.0) + "\">S &gt; " +
         format_csv(threshold) + "</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitIo, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw CliError(kExitIo, "failed writing '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir, ec)) {
    throw CliError(kExitIo, "output directory '" + dir.string() + "' is not usable");
  }
}

}  // namespace gbcli
