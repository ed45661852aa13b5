#include "zdcolor/census.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zdcolor/fill.hpp"
#include "zdcolor/frozen.hpp"

namespace zdcolor {

double big_log(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  auto top = boost::multiprecision::msb(x);
  if (top < 60) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  auto shift = top - 60;
  BigInt head = x >> shift;
  return std::log(static_cast<double>(head.convert_to<std::uint64_t>())) + static_cast<double>(shift) * std::log(2.0);
}

namespace {

// Slices are the sites sharing a first coordinate; in row-major order slice s
// occupies indices [s*W, (s+1)*W).
std::optional<BigInt> transfer_count(const Box& region, const std::vector<ColorMask>& domains, const Graph& full) {
  const std::size_t width = region.volume() / static_cast<std::size_t>(region.extent(0));
  const Index slices = region.extent(0);

  // Graph of one slice: vertices 0..W-1, edges inside the slice.
  Graph slice_graph(static_cast<int>(width));
  for (auto [u, v] : full.edges())
    if (static_cast<std::size_t>(u) < width && static_cast<std::size_t>(v) < width) slice_graph.add_edge(u, v);

  auto states_of = [&](Index s) -> std::optional<std::vector<std::vector<Color>>> {
    std::vector<ColorMask> dom(domains.begin() + static_cast<std::ptrdiff_t>(s * width),
                               domains.begin() + static_cast<std::ptrdiff_t>((s + 1) * width));
    std::vector<std::vector<Color>> out;
    bool capped = false;
    enumerate_colorings(slice_graph, std::move(dom), VarOrder::lexicographic, [&](std::span<const Color> f) {
      if (out.size() >= kMaxSliceStates) {
        capped = true;
        return false;
      }
      out.emplace_back(f.begin(), f.end());
      return true;
    });
    if (capped) return std::nullopt;
    return out;
  };

  auto prev = states_of(0);
  if (!prev) return std::nullopt;
  std::vector<BigInt> weight(prev->size(), 1);
  for (Index s = 1; s < slices; ++s) {
    auto cur = states_of(s);
    if (!cur) return std::nullopt;
    std::vector<BigInt> next(cur->size(), 0);
    for (std::size_t b = 0; b < cur->size(); ++b) {
      const auto& sb = (*cur)[b];
      for (std::size_t a = 0; a < prev->size(); ++a) {
        if (weight[a] == 0) continue;
        const auto& sa = (*prev)[a];
        bool ok = true;
        for (std::size_t j = 0; j < width && ok; ++j) ok = sa[j] != sb[j];
        if (ok) next[b] += weight[a];
      }
    }
    prev = std::move(cur);
    weight = std::move(next);
  }
  BigInt total = 0;
  for (const auto& w : weight) total += w;
  return total;
}

}  // namespace

CountReport count_exact(const Box& region, int q, const PartialColoring& constraints, CountMethod method) {
  if (q < 1 || q > kMaxColors) throw std::domain_error("q must be in 1..64");
  if (!is_proper(constraints)) throw std::domain_error("constraint coloring is not proper");
  auto problem = region_problem(region.sites(), q, constraints);
  CountReport r{region, q, constraints, 0, 0.0, method};

  bool done = false;
  if (method != CountMethod::dfs) {
    auto tm = transfer_count(region, problem.domains, problem.sites.graph);
    if (tm) {
      r.count = *tm;
      r.method = CountMethod::transfer_matrix;
      done = true;
    } else if (method == CountMethod::transfer_matrix) {
      throw SizeCapExceeded("slice has more than " + std::to_string(kMaxSliceStates) + " colorings");
    }
  }
  if (!done) {
    if (region.volume() > kMaxDfsSites)
      throw SizeCapExceeded("backtracking count is limited to " + std::to_string(kMaxDfsSites) + " sites");
    r.count = count_colorings(problem.sites.graph, problem.domains);
    r.method = CountMethod::dfs;
  }
  r.log_count_per_site = r.count > 0 ? big_log(r.count) / static_cast<double>(region.volume()) : 0.0;
  return r;
}

CountReport count_exact(const Box& region, int q, CountMethod method) {
  return count_exact(region, q, PartialColoring(region.grown(1), q), method);
}

std::vector<EntropyPoint> entropy_series(int d, int q, const std::vector<Index>& ns, bool frozen) {
  std::vector<EntropyPoint> out;
  for (auto n : ns) {
    Box box = Box::cube(n, d);
    PartialColoring constraints(box.grown(1), q);
    if (frozen) constraints = paint_sites(frozen_rule(d, q), external_boundary(box), box.grown(1), q);
    auto r = count_exact(box, q, constraints);
    out.push_back({n, r.count, r.log_count_per_site});
  }
  return out;
}

GlauberSampler::GlauberSampler(const SamplerConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
  const Box& box = cfg_.region;
  const auto ring = external_boundary(box);
  PartialColoring outer = cfg_.boundary.restricted(ring).with_window(box.grown(1));
  for (const auto& [site, color] : cfg_.boundary.assignment())
    if (box.contains(site)) throw std::domain_error("sampler boundary must lie outside the region");

  auto filled = fill_box(FillProblem{box, outer, cfg_.q});
  if (!filled) throw std::domain_error("UNSAT: the boundary admits no proper filling");
  state_.resize(box.volume());
  fixed_.assign(box.volume(), 0);
  adj_.resize(box.volume());
  for (std::size_t i = 0; i < state_.size(); ++i) {
    Coord s = box.at(i);
    state_[i] = *filled->get(s);
    for (const auto& w : lattice_neighbors(s)) {
      if (box.contains(w))
        adj_[i].push_back(box.index(w));
      else if (auto c = outer.get(w))
        fixed_[i] |= bit(*c);
    }
  }
}

ColorMask GlauberSampler::legal(std::size_t site) const {
  ColorMask m = full_mask(cfg_.q) & ~fixed_[site];
  for (auto j : adj_[site]) m &= ~bit(state_[j]);
  return m;
}

void GlauberSampler::update(std::size_t site) {
  ColorMask m = legal(site);
  // The current color is always legal, so m is never empty.
  auto k = rng_.below(static_cast<std::uint64_t>(popcount(m)));
  for (; k > 0; --k) m &= m - 1;
  state_[site] = std::countr_zero(m);
}

void GlauberSampler::sweep() {
  for (std::size_t i = 0; i < state_.size(); ++i) update(i);
}

ProperColoring glauber_sample(const SamplerConfig& cfg) {
  GlauberSampler s(cfg);
  s.run(cfg.steps);
  return s.coloring();
}

}  // namespace zdcolor
