#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/rates/regimes.hpp"
#include "mixlab/report/io.hpp"

namespace mixlab::report {

struct PlotPoint {
  double x;
  double y;
  double err = 0.0;  // half-width of the error bar; 0 draws none
};

struct Series {
  std::string label;
  std::vector<PlotPoint> points;
};

// y = exp(log_intercept) * x^slope, drawn across the x range of the plot.
struct TheoryLine {
  std::string label;
  double slope;
  double log_intercept;
};

struct LogLogPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<TheoryLine> theory;
};

namespace svgdetail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Log10 axis range with decade ticks, or 1-2-5 ticks when the span is short.
struct LogAxis {
  double lo, hi;
  std::vector<double> ticks;

  LogAxis(double lo_, double hi_) {
    if (hi_ - lo_ < 1e-9) {
      lo_ -= 0.5;
      hi_ += 0.5;
    }
    const double pad = 0.05 * (hi_ - lo_);
    lo = lo_ - pad;
    hi = hi_ + pad;
    const bool fine = hi - lo < 2.0;
    for (int e = static_cast<int>(std::floor(lo)); e <= static_cast<int>(std::ceil(hi)); ++e)
      for (double m : fine ? std::vector<double>{1, 2, 5} : std::vector<double>{1}) {
        const double t = std::log10(m) + e;
        if (t >= lo && t <= hi) ticks.push_back(t);
      }
  }
};

struct Frame {
  double left = 80, top = 40, width = 560, height = 400;
};

}  // namespace svgdetail

inline std::string render_loglog(const LogLogPlot& plot) {
  using namespace svgdetail;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  std::size_t count = 0;
  for (const auto& s : plot.series)
    for (const auto& p : s.points) {
      if (!(p.x > 0.0) || !(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      ++count;
      xmin = std::min(xmin, std::log10(p.x));
      xmax = std::max(xmax, std::log10(p.x));
      const double lo = p.y - p.err > 0.0 ? p.y - p.err : p.y;
      ymin = std::min(ymin, std::log10(lo));
      ymax = std::max(ymax, std::log10(p.y + p.err));
    }
  if (count == 0) throw InvalidArgument(kModule, "plot needs at least one positive data point");
  for (const auto& t : plot.theory)
    for (double lx : {xmin, xmax}) {
      const double ly = (t.log_intercept + t.slope * lx * std::log(10.0)) / std::log(10.0);
      ymin = std::min(ymin, ly);
      ymax = std::max(ymax, ly);
    }
  const LogAxis ax(xmin, xmax), ay(ymin, ymax);
  const Frame f;
  auto px = [&](double lx) { return f.left + (lx - ax.lo) / (ax.hi - ax.lo) * f.width; };
  auto py = [&](double ly) { return f.top + f.height - (ly - ay.lo) / (ay.hi - ay.lo) * f.height; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"500\" viewBox=\"0 0 900 500\" "
       "font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"900\" height=\"500\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(plot.title) + "</text>\n";
  o += "<rect x=\"" + num(f.left) + "\" y=\"" + num(f.top) + "\" width=\"" + num(f.width) + "\" height=\"" +
       num(f.height) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks) {
    const double x = px(t);
    o += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.top) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(f.top + f.height) + "\" stroke=\"#e0e0e0\"/>\n";
    o += "<text x=\"" + num(x) + "\" y=\"" + num(f.top + f.height + 16) + "\" text-anchor=\"middle\">" +
         tick_label(std::pow(10.0, t)) + "</text>\n";
  }
  for (double t : ay.ticks) {
    const double y = py(t);
    o += "<line x1=\"" + num(f.left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.left + f.width) + "\" y2=\"" +
         num(y) + "\" stroke=\"#e0e0e0\"/>\n";
    o += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
         tick_label(std::pow(10.0, t)) + "</text>\n";
  }
  o += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top + f.height + 36) +
       "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  o += "<text transform=\"translate(20," + num(f.top + f.height / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + escape(plot.y_label) + "</text>\n";

  o += "<clipPath id=\"frame\"><rect x=\"" + num(f.left) + "\" y=\"" + num(f.top) + "\" width=\"" +
       num(f.width) + "\" height=\"" + num(f.height) + "\"/></clipPath>\n";
  o += "<g clip-path=\"url(#frame)\">\n";
  for (std::size_t i = 0; i < plot.theory.size(); ++i) {
    const auto& t = plot.theory[i];
    auto ly = [&](double lx) { return (t.log_intercept + t.slope * lx * std::log(10.0)) / std::log(10.0); };
    o += "<line class=\"theory\" x1=\"" + num(px(ax.lo)) + "\" y1=\"" + num(py(ly(ax.lo))) + "\" x2=\"" +
         num(px(ax.hi)) + "\" y2=\"" + num(py(ly(ax.hi))) + "\" stroke=\"" + palette(i) +
         "\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const char* c = palette(i);
    std::string path;
    for (const auto& p : plot.series[i].points) {
      if (!(p.x > 0.0) || !(p.y > 0.0)) continue;
      const double x = px(std::log10(p.x)), y = py(std::log10(p.y));
      path += (path.empty() ? "M" : " L") + num(x) + "," + num(y);
      if (p.err > 0.0) {
        const double top = py(std::log10(p.y + p.err));
        const double bot = p.y - p.err > 0.0 ? py(std::log10(p.y - p.err)) : f.top + f.height;
        o += "<line class=\"errorbar\" x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(bot) + "\" stroke=\"" + c + "\"/>\n";
      }
      o += "<circle class=\"point\" cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3.5\" fill=\"" + c + "\"/>\n";
    }
    if (!path.empty())
      o += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + c + "\" stroke-opacity=\"0.5\"/>\n";
  }
  o += "</g>\n";

  double ly = f.top + 10;
  const double lx = f.left + f.width + 14;
  for (std::size_t i = 0; i < plot.series.size(); ++i, ly += 18) {
    o += "<circle cx=\"" + num(lx + 6) + "\" cy=\"" + num(ly) + "\" r=\"3.5\" fill=\"" + palette(i) + "\"/>\n";
    o += "<text class=\"legend\" x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 4) + "\">" +
         escape(plot.series[i].label) + "</text>\n";
  }
  for (std::size_t i = 0; i < plot.theory.size(); ++i, ly += 18) {
    o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 12) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + palette(i) + "\" stroke-dasharray=\"4,2\"/>\n";
    o += "<text class=\"legend\" x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 4) + "\">" +
         escape(plot.theory[i].label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

inline const char* regime_color(rates::Regime r) {
  switch (r) {
    case rates::Regime::iid_like: return "#9ecae1";
    case rates::Regime::dependence_dominated: return "#fc9272";
    case rates::Regime::donsker_bounded: return "#a1d99b";
    case rates::Regime::boundary: return "#bdbdbd";
  }
  return "#ffffff";
}

// Cells are drawn as rectangles centred on the grid points in log coordinates.
inline std::string render_phase(const rates::PhaseDiagram& d, const std::string& title) {
  using namespace svgdetail;
  if (d.cells.empty()) throw InvalidArgument(kModule, "phase plot needs at least one cell");
  std::vector<double> bs, as;
  for (const auto& c : d.cells) {
    bs.push_back(std::log10(c.beta));
    as.push_back(std::log10(c.alpha));
  }
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  auto half_step = [](const std::vector<double>& v) { return v.size() > 1 ? 0.5 * (v[1] - v[0]) : 0.25; };
  const double hb = half_step(bs), ha = half_step(as);
  const double blo = bs.front() - hb, bhi = bs.back() + hb, alo = as.front() - ha, ahi = as.back() + ha;
  const Frame f;
  auto px = [&](double lb) { return f.left + (lb - blo) / (bhi - blo) * f.width; };
  auto py = [&](double la) { return f.top + f.height - (la - alo) / (ahi - alo) * f.height; };
  auto cell_edge = [](const std::vector<double>& v, double x, int side, double h) {
    const auto it = std::lower_bound(v.begin(), v.end(), x - 1e-12);
    const std::size_t i = static_cast<std::size_t>(it - v.begin());
    if (side < 0) return i == 0 ? x - h : 0.5 * (v[i - 1] + x);
    return i + 1 >= v.size() ? x + h : 0.5 * (v[i + 1] + x);
  };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"500\" viewBox=\"0 0 900 500\" "
       "font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"900\" height=\"500\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(title) + "</text>\n";
  for (const auto& c : d.cells) {
    const double lb = std::log10(c.beta), la = std::log10(c.alpha);
    const double x0 = px(cell_edge(bs, lb, -1, hb)), x1 = px(cell_edge(bs, lb, 1, hb));
    const double y0 = py(cell_edge(as, la, 1, ha)), y1 = py(cell_edge(as, la, -1, ha));
    o += "<rect class=\"cell " + rates::to_string(c.report.regime) + "\" x=\"" + num(x0) + "\" y=\"" + num(y0) +
         "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y1 - y0) + "\" fill=\"" +
         regime_color(c.report.regime) + "\" stroke=\"" + regime_color(c.report.regime) + "\" stroke-width=\"0.6\"/>\n";
  }
  std::string path;
  for (const auto& [b, a] : d.curve) {
    const double lb = std::log10(b), la = std::log10(a);
    if (la < alo || la > ahi) continue;
    path += (path.empty() ? "M" : " L") + num(px(lb)) + "," + num(py(la));
  }
  if (!path.empty())
    o += "<path class=\"boundary\" d=\"" + path + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  o += "<rect x=\"" + num(f.left) + "\" y=\"" + num(f.top) + "\" width=\"" + num(f.width) + "\" height=\"" +
       num(f.height) + "\" fill=\"none\" stroke=\"black\"/>\n";
  const LogAxis ax(blo, bhi), ay(alo, ahi);
  for (double t : ax.ticks)
    if (t >= blo && t <= bhi)
      o += "<text x=\"" + num(px(t)) + "\" y=\"" + num(f.top + f.height + 16) + "\" text-anchor=\"middle\">" +
           tick_label(std::pow(10.0, t)) + "</text>\n";
  for (double t : ay.ticks)
    if (t >= alo && t <= ahi)
      o += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
           tick_label(std::pow(10.0, t)) + "</text>\n";
  o += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top + f.height + 36) +
       "\" text-anchor=\"middle\">mixing decay exponent beta</text>\n";
  o += "<text transform=\"translate(20," + num(f.top + f.height / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">entropy exponent alpha</text>\n";
  double ly = f.top + 10;
  const double lx = f.left + f.width + 14;
  for (auto r : {rates::Regime::iid_like, rates::Regime::dependence_dominated, rates::Regime::donsker_bounded,
                 rates::Regime::boundary}) {
    o += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 6) + "\" width=\"12\" height=\"12\" fill=\"" +
         regime_color(r) + "\"/>\n";
    o += "<text class=\"legend\" x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 4) + "\">" + rates::to_string(r) +
         "</text>\n";
    ly += 18;
  }
  o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 12) + "\" y2=\"" + num(ly) +
       "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  o += "<text class=\"legend\" x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 4) + "\">boundary curve</text>\n";
  o += "</svg>\n";
  return o;
}

}  // namespace mixlab::report
