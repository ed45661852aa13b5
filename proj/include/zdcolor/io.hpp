#ifndef ZDCOLOR_IO_HPP
#define ZDCOLOR_IO_HPP

// JSON coloring and list files, ASCII and PGM renderers.
//
// Coloring file:
//   {"d": 2, "q": 3, "low": [1,1], "high": [3,3],
//    "colors": [row-major colors, null where unassigned],   (dense form)
//    "partial": [[[x, y], color], ...]}                      (sparse form)
// Either "colors" or "partial" may be given; both are merged on reading.
// Lists file: {"x,y": [colors...], ...}.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "zdcolor/lattice.hpp"
#include "zdcolor/listcolor.hpp"

namespace zdcolor::io {

using Json = nlohmann::ordered_json;

Json coords_to_json(const Coord& c);
Coord coord_from_json(const Json& j);

Json to_json(const ProperColoring& c);
Json to_json(const PartialColoring& c);
/// Throws std::invalid_argument on malformed input.
PartialColoring coloring_from_json(const Json& j);

Json lists_to_json(const std::vector<Coord>& sites, const ListAssignment& lists);
/// Lists in the order of `sites`; a missing site is an error.
ListAssignment lists_from_json(const Json& j, const std::vector<Coord>& sites);

Json read_json_file(const std::string& path);

/// One character per cell for d = 2 (rows: first coordinate), '.' when unassigned.
std::string render_ascii(const PartialColoring& c);
std::string render_ascii(const ProperColoring& c);
/// Plain PGM (P2), gray level floor(255 c / (q-1)); unassigned cells are 0.
std::string render_pgm(const PartialColoring& c);

}  // namespace zdcolor::io

#endif  // ZDCOLOR_IO_HPP
