#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mixlab/core/error.hpp"

namespace mixlab::classes {

enum class ClassId { monotone01, lipschitz01 };

// A bracket on [0, 1): lower(x) <= f(x) <= upper(x).
struct Bracket {
  std::function<double(double)> lower;
  std::function<double(double)> upper;
  double width = 0.0;  // L2(Uniform) width for monotone01, sup width for lipschitz01
};

// Implicit bracket net. Brackets are indexed by integer codes (level
// crossing cells for monotone01, rounded grid values for lipschitz01), so the
// net can be counted and audited without listing all exp(c/delta) members.
class BracketNet {
 public:
  ClassId class_id;
  double delta = 1.0;
  int grid = 1;
  int levels = 1;       // number of value levels used by the construction
  double h = 1.0;       // value step
  double log_count = 0.0;
  double c = 0.0;       // delta * log(count)
  double width_bound = 0.0;

  // Codes of the bracket containing f.
  std::vector<int> locate(const std::function<double(double)>& f) const {
    std::vector<int> code;
    if (envelope_) return code;
    if (class_id == ClassId::monotone01) {
      // code[k-1] = cell of the level-k crossing, grid meaning "no crossing".
      for (int k = 1; k <= levels; ++k) {
        const double level = k * h;
        int cell = grid;
        for (int j = 0; j < grid; ++j) {
          if (f(static_cast<double>(j + 1) / grid) >= level - 1e-15) {
            cell = j;
            break;
          }
        }
        code.push_back(cell);
      }
    } else {
      for (int j = 0; j <= grid; ++j)
        code.push_back(std::min(levels - 1, static_cast<int>(std::floor(f(static_cast<double>(j) / grid) / h))));
    }
    return code;
  }

  Bracket bracket(const std::vector<int>& code) const {
    Bracket br;
    if (envelope_) {
      br.lower = [](double) { return 0.0; };
      br.upper = [](double) { return 1.0; };
      br.width = 1.0;
      return br;
    }
    const int G = grid;
    const double step = h;
    if (class_id == ClassId::monotone01) {
      br.lower = [code, G, step](double x) {
        int k = 0;
        for (int ck : code)
          if (static_cast<double>(ck + 1) / G <= x) ++k;
        return std::min(1.0, k * step);
      };
      br.upper = [code, G, step](double x) {
        for (std::size_t k = 0; k < code.size(); ++k)
          if (static_cast<double>(code[k]) / G > x) return std::min(1.0, static_cast<double>(k + 1) * step);
        return 1.0;
      };
      double w2 = 0.0;
      for (int j = 0; j < G; ++j) {
        const auto nj = std::count(code.begin(), code.end(), j);
        const double w = std::min(1.0, step * static_cast<double>(1 + nj));
        w2 += w * w / G;
      }
      br.width = std::sqrt(w2);
    } else {
      auto cell_of = [G](double x) { return std::clamp(static_cast<int>(std::floor(x * G)), 0, G - 1); };
      br.lower = [code, G, step, cell_of](double x) {
        const int j = cell_of(x);
        const double x0 = static_cast<double>(j) / G, x1 = static_cast<double>(j + 1) / G;
        return std::max({0.0, code[j] * step - (x - x0), code[j + 1] * step - (x1 - x)});
      };
      br.upper = [code, G, step, cell_of](double x) {
        const int j = cell_of(x);
        const double x0 = static_cast<double>(j) / G, x1 = static_cast<double>(j + 1) / G;
        return std::min({1.0, (code[j] + 1) * step + (x - x0), (code[j + 1] + 1) * step + (x1 - x)});
      };
      br.width = width_bound;
    }
    return br;
  }

  // All brackets; only for coarse nets.
  std::vector<Bracket> enumerate(double max_count = 1e5) const {
    if (log_count > std::log(max_count))
      throw InvalidArgument("function_classes", "bracket net too large to enumerate");
    std::vector<Bracket> out;
    if (envelope_) {
      out.push_back(bracket({}));
      return out;
    }
    std::vector<int> code(class_id == ClassId::monotone01 ? levels : grid + 1, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == code.size()) {
        out.push_back(bracket(code));
        return;
      }
      if (class_id == ClassId::monotone01) {
        for (int cell = pos == 0 ? 0 : code[pos - 1]; cell <= grid; ++cell) {
          code[pos] = cell;
          rec(pos + 1);
        }
      } else {
        for (int a = 0; a < levels; ++a) {
          if (pos > 0 && std::abs(a - code[pos - 1]) > max_jump_) continue;
          code[pos] = a;
          rec(pos + 1);
        }
      }
    };
    rec(0);
    return out;
  }

  bool is_envelope() const { return envelope_; }

  friend BracketNet build_bracket_net(ClassId, double, int);

 private:
  bool envelope_ = false;
  int max_jump_ = 0;
};

// delta-bracket net for non-decreasing [0,1]-valued functions (L2(Uniform)
// width) or 1-Lipschitz [0,1]-valued functions (sup width) on [0, 1).
inline BracketNet build_bracket_net(ClassId id, double delta, int grid_size) {
  if (!(delta > 0.0)) throw InvalidArgument("function_classes", "bracket width delta must be > 0");
  BracketNet net;
  net.class_id = id;
  net.delta = delta;
  net.grid = grid_size;
  if (delta >= 1.0) {
    // The envelope pair [0, 1] has width 1 in either norm.
    net.envelope_ = true;
    net.width_bound = 1.0;
    net.log_count = 0.0;
    net.c = 0.0;
    return net;
  }
  if (grid_size < static_cast<int>(std::ceil(2.0 / delta)))
    throw InvalidArgument("function_classes", "bracket grid must have at least 2/delta cells");
  const double G = grid_size;
  if (id == ClassId::monotone01) {
    // With M levels of step 1/M the widest bracket puts every crossing in one
    // cell: width^2 = (1 + (G - 1) / M^2) / G.
    if (1.0 / G >= delta * delta)
      throw InvalidArgument("function_classes",
                            "delta too small for the grid: monotone brackets need grid > 1/delta^2 cells");
    int m = 1;
    while ((1.0 + (G - 1.0) / (static_cast<double>(m) * m)) / G > delta * delta) ++m;
    net.levels = m;
    net.h = 1.0 / m;
    net.width_bound = std::sqrt((1.0 + (G - 1.0) / (static_cast<double>(m) * m)) / G);
    // Non-decreasing crossing codes in {0..G}: C(G + M, M).
    net.log_count = std::lgamma(G + m + 1.0) - std::lgamma(G + 1.0) - std::lgamma(m + 1.0);
  } else {
    // Width at most h + 1/G.
    const double step = delta - 1.0 / G;
    if (!(step > 0.0))
      throw InvalidArgument("function_classes", "delta too small for the grid: need delta > 1/grid");
    const int m = static_cast<int>(std::floor(1.0 / step)) + 1;  // codes 0..m-1 cover [0, 1]
    net.levels = m;
    net.h = step;
    net.width_bound = step + 1.0 / G;
    net.max_jump_ = static_cast<int>(std::floor(1.0 / (G * step))) + 1;
    // Count codes by dynamic programming in log scale.
    std::vector<double> ways(m, 1.0), next(m);
    double log_scale = 0.0;
    for (int j = 1; j <= grid_size; ++j) {
      for (int a = 0; a < m; ++a) {
        double s = 0.0;
        for (int b = std::max(0, a - net.max_jump_); b <= std::min(m - 1, a + net.max_jump_); ++b) s += ways[b];
        next[a] = s;
      }
      const double mx = *std::max_element(next.begin(), next.end());
      for (int a = 0; a < m; ++a) ways[a] = next[a] / mx;
      log_scale += std::log(mx);
    }
    double total = 0.0;
    for (double w : ways) total += w;
    net.log_count = log_scale + std::log(total);
  }
  net.c = delta * net.log_count;
  return net;
}

}  // namespace mixlab::classes
