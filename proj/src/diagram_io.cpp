#include "floorcount/diagram_io.hpp"

#include <charconv>
#include <sstream>

#include "floorcount/errors.hpp"

namespace floorcount {

void write_text(std::ostream& os, const FloorDiagram& d) {
  os << "floordiagram d=" << d.sink_count() << " g=" << first_betti(d) << '\n';
  for (int v = 0; v < d.floor_count(); ++v) os << "floor " << v << " div=" << d.divergence(v) << '\n';
  for (const Edge& e : d.edges()) {
    os << "edge " << e.tail << " -> ";
    if (e.to_sink) os << 's';
    os << e.head << " w=" << e.weight << '\n';
  }
}

std::string to_text(const FloorDiagram& d) {
  std::ostringstream os;
  write_text(os, d);
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) words.push_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

int to_int(std::string_view s, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + std::string(s) + "'");
  return value;
}

int field(std::string_view word, std::string_view name, int line) {
  if (word.substr(0, name.size()) != name)
    throw ParseError("line " + std::to_string(line) + ": expected '" + std::string(name) + "'");
  return to_int(word.substr(name.size()), line);
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

bool DiagramReader::fetch(std::string& line) {
  if (pending_) {
    line = std::move(*pending_);
    pending_.reset();
    return true;
  }
  while (std::getline(is_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

std::optional<DiagramRecord> DiagramReader::next() {
  std::string line;
  if (!fetch(line)) return std::nullopt;
  auto head = split(line);
  if (head.size() != 3 || head[0] != "floordiagram")
    throw ParseError("line " + std::to_string(line_no_) + ": expected 'floordiagram d=<int> g=<int>'");
  DiagramRecord rec;
  rec.degree = field(head[1], "d=", line_no_);
  rec.genus = field(head[2], "g=", line_no_);

  std::vector<int> declared_div;
  std::vector<Edge> edges;
  while (fetch(line)) {
    if (starts_with(line, "floordiagram")) {
      pending_ = std::move(line);
      break;
    }
    auto w = split(line);
    if (w.empty()) continue;
    if (w[0] == "floor") {
      if (w.size() != 3) throw ParseError("line " + std::to_string(line_no_) + ": malformed floor line");
      int id = to_int(w[1], line_no_);
      if (id != static_cast<int>(declared_div.size()))
        throw ParseError("line " + std::to_string(line_no_) + ": floor ids must be 0-based and ascending");
      declared_div.push_back(field(w[2], "div=", line_no_));
    } else if (w[0] == "edge") {
      if (w.size() != 5 || w[2] != "->") throw ParseError("line " + std::to_string(line_no_) + ": malformed edge line");
      Edge e;
      e.tail = to_int(w[1], line_no_);
      e.to_sink = !w[3].empty() && w[3][0] == 's';
      e.head = to_int(e.to_sink ? w[3].substr(1) : w[3], line_no_);
      e.weight = field(w[4], "w=", line_no_);
      edges.push_back(e);
    } else if (w[0] == "mark") {
      rec.mark_lines.push_back(line);
    } else {
      throw ParseError("line " + std::to_string(line_no_) + ": unknown record '" + std::string(w[0]) + "'");
    }
  }
  try {
    rec.diagram = FloorDiagram(static_cast<int>(declared_div.size()), rec.degree, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  for (int v = 0; v < rec.diagram.floor_count(); ++v)
    if (rec.diagram.divergence(v) != declared_div[static_cast<std::size_t>(v)])
      throw ParseError("floor " + std::to_string(v) + ": declared divergence does not match edges");
  return rec;
}

FloorDiagram parse_diagram(std::string_view text) {
  std::istringstream is{std::string(text)};
  DiagramReader reader(is);
  auto rec = reader.next();
  if (!rec) throw ParseError("empty input");
  if (reader.next()) throw ParseError("more than one diagram");
  return std::move(rec->diagram);
}

std::vector<FloorDiagram> read_diagrams(std::istream& is) {
  std::vector<FloorDiagram> r;
  DiagramReader reader(is);
  while (auto rec = reader.next()) r.push_back(std::move(rec->diagram));
  return r;
}

std::string to_dot(const FloorDiagram& d, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=TB;\n";
  for (int v = 0; v < d.floor_count(); ++v)
    os << "  f" << v << " [shape=ellipse, label=\"" << d.divergence(v) << "\"];\n";
  for (int s = 0; s < d.sink_count(); ++s) os << "  s" << s << " [shape=point];\n";
  for (const Edge& e : d.edges()) {
    os << "  f" << e.tail << " -> " << (e.to_sink ? "s" : "f") << e.head;
    if (e.weight != 1) os << " [label=\"" << e.weight << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace floorcount
