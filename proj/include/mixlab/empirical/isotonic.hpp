#pragma once

#include <vector>

#include "mixlab/empirical/statistics.hpp"

namespace mixlab::empirical {

// Pool-adjacent-violators: least-squares non-decreasing fit to y at sorted x.
inline std::vector<double> pava_isotonic(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument(kModule, "isotonic fit needs x and y of equal length");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] < x[i - 1]) throw InvalidArgument(kModule, "isotonic fit needs sorted x");
  struct Block {
    double sum;
    double count;
    std::size_t len;
  };
  std::vector<Block> st;
  st.reserve(y.size());
  std::size_t i = 0;
  while (i < y.size()) {
    // Tied abscissae share one fitted value, so they enter as one weighted point.
    Block pt{0.0, 0.0, 0};
    std::size_t j = i;
    for (; j < y.size() && x[j] == x[i]; ++j) {
      pt.sum += y[j];
      pt.count += 1.0;
      pt.len += 1;
    }
    i = j;
    st.push_back(pt);
    while (st.size() > 1 && st[st.size() - 2].sum / st[st.size() - 2].count >= st.back().sum / st.back().count) {
      const Block top = st.back();
      st.pop_back();
      st.back().sum += top.sum;
      st.back().count += top.count;
      st.back().len += top.len;
    }
  }
  std::vector<double> fit;
  fit.reserve(y.size());
  for (const auto& b : st) fit.insert(fit.end(), b.len, b.sum / b.count);
  return fit;
}

}  // namespace mixlab::empirical
