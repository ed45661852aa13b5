#include "zdcolor/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zdcolor {

Index Coord::sum() const {
  Index s = 0;
  for (auto v : x_) s += v;
  return s;
}

bool Coord::even() const { return mod(sum(), 2) == 0; }

Coord& Coord::operator+=(const Coord& o) {
  if (o.dim() != dim()) throw std::invalid_argument("coordinate dimension mismatch");
  for (int k = 0; k < dim(); ++k) x_[k] += o.x_[k];
  return *this;
}

Coord& Coord::operator-=(const Coord& o) {
  if (o.dim() != dim()) throw std::invalid_argument("coordinate dimension mismatch");
  for (int k = 0; k < dim(); ++k) x_[k] -= o.x_[k];
  return *this;
}

Coord operator*(Index s, Coord a) {
  for (auto& v : a.x_) v *= s;
  return a;
}

std::string Coord::str() const {
  std::string out;
  for (int k = 0; k < dim(); ++k) {
    if (k) out += ',';
    out += std::to_string(x_[k]);
  }
  return out;
}

Coord Coord::parse(const std::string& text) {
  std::vector<Index> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      xs.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coordinate '" + text + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("bad coordinate '" + text + "'");
  }
  if (xs.empty()) throw std::invalid_argument("empty coordinate");
  return Coord(std::move(xs));
}

Index l1_distance(const Coord& a, const Coord& b) {
  Index s = 0;
  for (int k = 0; k < a.dim(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

Index linf_distance(const Coord& a, const Coord& b) {
  Index s = 0;
  for (int k = 0; k < a.dim(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
  return s;
}

Box::Box(Coord low, Coord high) : low_(std::move(low)), high_(std::move(high)) {
  if (low_.dim() < 1 || low_.dim() != high_.dim())
    throw std::invalid_argument("box corners must share a dimension >= 1");
  for (int k = 0; k < low_.dim(); ++k)
    if (low_[k] > high_[k]) throw std::invalid_argument("box low corner exceeds high corner");
}

Box Box::cube(Index n, int d) {
  if (n < 1) throw std::domain_error("cube side must be >= 1");
  return Box(Coord::filled(d, 1), Coord::filled(d, n));
}

Box Box::ball(Index n, int d) {
  if (n < 0) throw std::domain_error("ball radius must be >= 0");
  return Box(Coord::filled(d, -n), Coord::filled(d, n));
}

std::size_t Box::volume() const {
  std::size_t v = 1;
  for (int k = 0; k < dim(); ++k) v *= static_cast<std::size_t>(extent(k));
  return v;
}

bool Box::contains(const Coord& c) const {
  if (c.dim() != dim()) return false;
  for (int k = 0; k < dim(); ++k)
    if (c[k] < low_[k] || c[k] > high_[k]) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  return contains(other.low()) && contains(other.high());
}

bool Box::interior(const Coord& c) const {
  if (c.dim() != dim()) return false;
  for (int k = 0; k < dim(); ++k)
    if (c[k] <= low_[k] || c[k] >= high_[k]) return false;
  return true;
}

std::size_t Box::index(const Coord& c) const {
  std::size_t idx = 0;
  for (int k = 0; k < dim(); ++k)
    idx = idx * static_cast<std::size_t>(extent(k)) + static_cast<std::size_t>(c[k] - low_[k]);
  return idx;
}

Coord Box::at(std::size_t index) const {
  Coord c = low_;
  for (int k = dim() - 1; k >= 0; --k) {
    auto e = static_cast<std::size_t>(extent(k));
    c[k] += static_cast<Index>(index % e);
    index /= e;
  }
  return c;
}

Box Box::translated(const Coord& shift) const { return Box(low_ + shift, high_ + shift); }

Box Box::grown(Index margin) const {
  return Box(low_ - Coord::filled(dim(), margin), high_ + Coord::filled(dim(), margin));
}

std::optional<Box> Box::intersect(const Box& other) const {
  Coord lo = low_, hi = high_;
  for (int k = 0; k < dim(); ++k) {
    lo[k] = std::max(lo[k], other.low_[k]);
    hi[k] = std::min(hi[k], other.high_[k]);
    if (lo[k] > hi[k]) return std::nullopt;
  }
  return Box(lo, hi);
}

std::vector<Coord> Box::sites() const {
  std::vector<Coord> out;
  out.reserve(volume());
  for (std::size_t i = 0; i < volume(); ++i) out.push_back(at(i));
  return out;
}

CoordSet Box::site_set() const {
  auto s = sites();
  return CoordSet(s.begin(), s.end());
}

std::vector<Coord> lattice_neighbors(const Coord& v) {
  std::vector<Coord> out;
  out.reserve(2 * v.dim());
  for (Index sign : {Index{1}, Index{-1}})
    for (int k = 0; k < v.dim(); ++k) {
      Coord w = v;
      w[k] += sign;
      out.push_back(std::move(w));
    }
  return out;
}

std::vector<Coord> neighbors(const Box& region, const Coord& v) {
  if (!region.contains(v)) throw std::domain_error("site " + v.str() + " is outside the region");
  auto all = lattice_neighbors(v);
  std::vector<Coord> out;
  for (auto& w : all)
    if (region.contains(w)) out.push_back(std::move(w));
  return out;
}

CoordSet external_boundary(const CoordSet& U) {
  CoordSet out;
  for (const auto& u : U)
    for (auto& w : lattice_neighbors(u))
      if (!U.count(w)) out.insert(std::move(w));
  return out;
}

CoordSet external_boundary(const Box& box) {
  CoordSet out;
  // Only faces: a boundary site has exactly one coordinate one step outside.
  for (int k = 0; k < box.dim(); ++k) {
    for (Index side : {box.low()[k] - 1, box.high()[k] + 1}) {
      Coord lo = box.low(), hi = box.high();
      lo[k] = hi[k] = side;
      for (auto& s : Box(lo, hi).sites()) out.insert(std::move(s));
    }
  }
  return out;
}

EdgeCounts edge_counts(const CoordSet& F, const std::optional<Box>& within) {
  EdgeCounts counts;
  for (const auto& v : F) {
    for (const auto& w : lattice_neighbors(v)) {
      if (within && !within->contains(w)) continue;
      if (F.count(w))
        ++counts.internal;  // seen from both ends
      else
        ++counts.crossing;
    }
  }
  counts.internal /= 2;
  return counts;
}

PartialColoring::PartialColoring(Box window, int q) : window_(std::move(window)), q_(q) {
  if (q < 1) throw std::invalid_argument("color count must be >= 1");
}

PartialColoring::PartialColoring(Box window, int q, std::map<Coord, Color> assignment)
    : PartialColoring(std::move(window), q) {
  for (auto& [c, color] : assignment) set(c, color);
}

std::optional<Color> PartialColoring::get(const Coord& c) const {
  auto it = assignment_.find(c);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

void PartialColoring::set(const Coord& c, Color color) {
  if (!window_.contains(c)) throw std::domain_error("site " + c.str() + " is outside the window");
  if (color < 0 || color >= q_)
    throw std::domain_error("color " + std::to_string(color) + " is outside {0.." + std::to_string(q_ - 1) + "}");
  assignment_[c] = color;
}

CoordSet PartialColoring::support() const {
  CoordSet out;
  for (const auto& [c, color] : assignment_) out.insert(out.end(), c);
  return out;
}

PartialColoring PartialColoring::restricted(const CoordSet& sites) const {
  PartialColoring out(window_, q_);
  for (const auto& [c, color] : assignment_)
    if (sites.count(c)) out.assignment_.emplace(c, color);
  return out;
}

PartialColoring PartialColoring::with_window(Box window) const {
  return PartialColoring(std::move(window), q_, assignment_);
}

ProperColoring::ProperColoring(Box box, int q, std::vector<Color> colors)
    : box_(std::move(box)), q_(q), colors_(std::move(colors)) {
  if (colors_.size() != box_.volume()) throw std::invalid_argument("color array does not match the box volume");
  for (auto c : colors_)
    if (c < 0 || c >= q_) throw std::invalid_argument("color out of range");
  if (!is_proper(box_, colors_)) throw std::invalid_argument("coloring is not proper");
}

PartialColoring ProperColoring::to_partial() const {
  PartialColoring out(box_, q_);
  for (std::size_t i = 0; i < colors_.size(); ++i) out.set(box_.at(i), colors_[i]);
  return out;
}

PartialColoring ProperColoring::restricted(const CoordSet& sites) const {
  PartialColoring out(box_, q_);
  for (const auto& s : sites)
    if (box_.contains(s)) out.set(s, (*this)(s));
  return out;
}

bool is_proper(const PartialColoring& c) {
  for (const auto& [v, color] : c.assignment()) {
    for (int k = 0; k < v.dim(); ++k) {
      Coord w = v;
      w[k] += 1;
      auto other = c.get(w);
      if (other && *other == color) return false;
    }
  }
  return true;
}

bool is_proper(const Box& box, std::span<const Color> colors) {
  // Compare each site with its +e_k neighbor using row-major strides.
  const int d = box.dim();
  std::vector<std::size_t> stride(d, 1);
  for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * static_cast<std::size_t>(box.extent(k + 1));
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      auto pos = (i / stride[k]) % static_cast<std::size_t>(box.extent(k));
      if (pos + 1 < static_cast<std::size_t>(box.extent(k)) && colors[i] == colors[i + stride[k]]) return false;
    }
  }
  return true;
}

std::optional<ProperColoring> densify(const PartialColoring& c, const Box& box) {
  std::vector<Color> colors(box.volume());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    auto color = c.get(box.at(i));
    if (!color) return std::nullopt;
    colors[i] = *color;
  }
  return ProperColoring(box, c.colors(), std::move(colors));
}

}  // namespace zdcolor
