#include "stree/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "stree/errors.hpp"

namespace stree {

BipartiteGraph edge_prefix_graph(const BipartiteGraph& g, std::span<const Edge> edges,
                                 std::size_t count) {
  GraphBuilder builder;
  for (std::size_t i = 0; i < count && i < edges.size(); ++i) {
    builder.add_edge(g.source_label(edges[i].source), g.target_label(edges[i].target));
  }
  return std::move(builder).build();
}

std::vector<ScalingRow> measure_scaling(const BipartiteGraph& g,
                                        std::span<const double> fractions,
                                        std::size_t repetitions,
                                        const DetectOptions& options,
                                        std::uint64_t seed) {
  if (repetitions == 0) throw ContractError("need at least one repetition");
  std::vector<Edge> edges = g.edges();
  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);

  std::vector<BipartiteGraph> subs;
  for (double fraction : fractions) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ContractError("fractions must be in (0, 1]");
    const auto count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(edges.size())));
    subs.push_back(edge_prefix_graph(g, edges, count));
  }

  // Repetitions go round-robin over the fractions so a slow stretch on the
  // machine hits every size instead of one.
  std::vector<double> best(subs.size(), std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < repetitions; ++r) {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto start = std::chrono::steady_clock::now();
      Detection d = detect(subs[i], options);
      const auto stop = std::chrono::steady_clock::now();
      best[i] = std::min(best[i], std::chrono::duration<double, std::milli>(stop - start).count());
      if (d.scores.size() != subs[i].num_sources()) throw ConsistencyError("bench: score size mismatch");
    }
  }

  std::vector<ScalingRow> rows;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    rows.push_back({fractions[i], subs[i].num_edges(), best[i]});
  }
  return rows;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractError("fit_line needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw ContractError("fit_line: x has no spread");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::vector<double> parse_fractions(std::string_view text) {
  auto to_double = [&](std::string_view s) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != str.size()) throw ContractError("bad fraction '" + str + "'");
    return v;
  };
  std::vector<double> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const double start = to_double(text.substr(0, dots));
    const double stop = to_double(text.substr(dots + 2));
    if (!(start > 0.0) || stop < start) throw ContractError("bad fraction range");
    const auto steps = static_cast<std::size_t>(std::llround(stop / start));
    for (std::size_t i = 1; i <= steps; ++i) out.push_back(std::min(stop, start * static_cast<double>(i)));
    return out;
  }
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t comma = text.find(',', begin);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(to_double(text.substr(begin, comma - begin)));
    begin = comma + 1;
  }
  return out;
}

}  // namespace stree
