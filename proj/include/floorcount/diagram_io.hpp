#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "floorcount/floor_diagram.hpp"

namespace floorcount {

/*
 Line-oriented text format, LF-terminated:

   floordiagram d=<int> g=<int>
   floor <id> div=<int>            (ids 0-based, ascending)
   edge <tail> -> <head> w=<int>   (head `s<k>` for sink k)

 Edge ids are the order of the edge lines. Marked diagrams append `mark`
 lines (see marking.hpp). Blank lines and lines starting with '#' are ignored
 by the reader.
*/
void write_text(std::ostream& os, const FloorDiagram& d);
std::string to_text(const FloorDiagram& d);

// One parsed record: a diagram plus any trailing `mark` lines, unparsed.
struct DiagramRecord {
  FloorDiagram diagram;
  int degree = 0;
  int genus = 0;
  std::vector<std::string> mark_lines;
};

class DiagramReader {
 public:
  explicit DiagramReader(std::istream& is) : is_(is) {}
  // Throws ParseError on malformed input.
  std::optional<DiagramRecord> next();

 private:
  bool fetch(std::string& line);

  std::istream& is_;
  std::optional<std::string> pending_;
  int line_no_ = 0;
};

FloorDiagram parse_diagram(std::string_view text);
std::vector<FloorDiagram> read_diagrams(std::istream& is);

// Graphviz rendering: floors as ellipses labeled by divergence, sinks as
// points, edge weights shown unless 1. Edges point downwards.
std::string to_dot(const FloorDiagram& d, std::string_view name = "D");

}  // namespace floorcount
