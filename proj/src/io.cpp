#include "zdcolor/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zdcolor::io {

Json coords_to_json(const Coord& c) {
  Json a = Json::array();
  for (auto v : c.entries()) a.push_back(v);
  return a;
}

Coord coord_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("coordinate must be a nonempty array");
  std::vector<Index> xs;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("coordinate entries must be integers");
    xs.push_back(v.get<Index>());
  }
  return Coord(std::move(xs));
}

namespace {

Json header(const Box& box, int q) {
  Json j;
  j["d"] = box.dim();
  j["q"] = q;
  j["low"] = coords_to_json(box.low());
  j["high"] = coords_to_json(box.high());
  return j;
}

char glyph(Color c) {
  if (c < 10) return static_cast<char>('0' + c);
  return static_cast<char>('a' + (c - 10));
}

}  // namespace

Json to_json(const ProperColoring& c) {
  Json j = header(c.box(), c.colors());
  Json colors = Json::array();
  for (auto v : c.data()) colors.push_back(v);
  j["colors"] = std::move(colors);
  return j;
}

Json to_json(const PartialColoring& c) {
  Json j = header(c.window(), c.colors());
  Json partial = Json::array();
  for (const auto& [site, color] : c.assignment()) partial.push_back(Json::array({coords_to_json(site), color}));
  j["partial"] = std::move(partial);
  return j;
}

PartialColoring coloring_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int q = j.at("q").get<int>();
    Box box(coord_from_json(j.at("low")), coord_from_json(j.at("high")));
    if (box.dim() != d) throw std::invalid_argument("corner dimension differs from d");
    PartialColoring out(box, q);
    if (j.contains("colors")) {
      const auto& colors = j["colors"];
      if (!colors.is_array() || colors.size() != box.volume())
        throw std::invalid_argument("colors must be a row-major array covering the window");
      for (std::size_t i = 0; i < colors.size(); ++i)
        if (!colors[i].is_null()) out.set(box.at(i), colors[i].get<Color>());
    }
    if (j.contains("partial")) {
      for (const auto& entry : j["partial"]) {
        if (!entry.is_array() || entry.size() != 2) throw std::invalid_argument("partial entries are [coord, color]");
        Coord c = coord_from_json(entry[0]);
        if (c.dim() != d) throw std::invalid_argument("partial coordinate has the wrong dimension");
        out.set(c, entry[1].get<Color>());
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed coloring: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("malformed coloring: ") + e.what());
  }
}

Json lists_to_json(const std::vector<Coord>& sites, const ListAssignment& lists) {
  Json j = Json::object();
  for (std::size_t i = 0; i < sites.size(); ++i) j[sites[i].str()] = lists[i];
  return j;
}

ListAssignment lists_from_json(const Json& j, const std::vector<Coord>& sites) {
  if (!j.is_object()) throw std::invalid_argument("lists file must be a JSON object");
  std::map<Coord, ColorList> parsed;
  for (const auto& [key, value] : j.items()) {
    ColorList l;
    try {
      l = value.get<ColorList>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("list for " + key + " must be an array of colors");
    }
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    parsed[Coord::parse(key)] = std::move(l);
  }
  ListAssignment out;
  for (const auto& s : sites) {
    auto it = parsed.find(s);
    if (it == parsed.end()) throw std::invalid_argument("no list for site " + s.str());
    out.push_back(it->second);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string render_ascii(const PartialColoring& c) {
  const Box& w = c.window();
  if (w.dim() != 2) throw std::domain_error("ASCII rendering is for d = 2");
  std::string out;
  for (Index i = w.low()[0]; i <= w.high()[0]; ++i) {
    for (Index j = w.low()[1]; j <= w.high()[1]; ++j) {
      auto color = c.get(Coord{i, j});
      out += color ? glyph(*color) : '.';
    }
    out += '\n';
  }
  return out;
}

std::string render_ascii(const ProperColoring& c) { return render_ascii(c.to_partial()); }

std::string render_pgm(const PartialColoring& c) {
  const Box& w = c.window();
  if (w.dim() != 2) throw std::domain_error("PGM rendering is for d = 2");
  std::ostringstream out;
  out << "P2\n" << w.extent(1) << ' ' << w.extent(0) << "\n255\n";
  const int q = c.colors();
  for (Index i = w.low()[0]; i <= w.high()[0]; ++i) {
    for (Index j = w.low()[1]; j <= w.high()[1]; ++j) {
      auto color = c.get(Coord{i, j});
      int gray = (color && q > 1) ? (255 * *color) / (q - 1) : 0;
      out << gray << (j == w.high()[1] ? '\n' : ' ');
    }
  }
  return out.str();
}

}  // namespace zdcolor::io
