#include "dagdiff/graphml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "dagdiff/errors.hpp"

namespace dagdiff {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw FormatError("bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw FormatError("bad integer '" + s + "'");
  return v;
}

}  // namespace

std::string write_graphml(const Dag& g) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"int\"/>\n"
     << "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
     << "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
     << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const auto& n : g.node_entries()) {
    os << "    <node id=\"n" << n.id.value << "\">"
       << "<data key=\"label\">" << n.id.value << "</data>";
    if (n.position) {
      os << "<data key=\"x\">" << format_double(n.position->x) << "</data>"
         << "<data key=\"y\">" << format_double(n.position->y) << "</data>";
    }
    os << "</node>\n";
  }
  for (const auto& e : g.edges())
    os << "    <edge source=\"n" << e.source.value << "\" target=\"n" << e.target.value << "\"/>\n";
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

Dag read_graphml(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream is{std::string(xml)};
    pt::read_xml(is, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw FormatError(std::string("GraphML parse error: ") + e.what());
  }

  const auto graph = tree.get_child_optional("graphml.graph");
  if (!graph) throw FormatError("GraphML document has no <graph> element");

  Dag g;
  std::map<std::string, NodeId> ids;
  for (const auto& [tag, child] : *graph) {
    if (tag != "node") continue;
    const auto xml_id = child.get<std::string>("<xmlattr>.id", "");
    std::optional<int> label;
    std::optional<double> x, y;
    for (const auto& [dtag, data] : child) {
      if (dtag != "data") continue;
      const auto key = data.get<std::string>("<xmlattr>.key", "");
      const auto text = data.get_value<std::string>();
      if (key == "label") label = parse_int(text);
      else if (key == "x") x = parse_double(text);
      else if (key == "y") y = parse_double(text);
    }
    if (!label) throw FormatError("node '" + xml_id + "' has no label");
    if (x.has_value() != y.has_value()) throw FormatError("node '" + xml_id + "' has only one coordinate");
    std::optional<Point> pos;
    if (x) pos = Point{*x, *y};
    try {
      g.add_node(NodeId{*label}, pos);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    ids[xml_id] = NodeId{*label};
  }
  for (const auto& [tag, child] : *graph) {
    if (tag != "edge") continue;
    const auto s = child.get<std::string>("<xmlattr>.source", "");
    const auto t = child.get<std::string>("<xmlattr>.target", "");
    auto si = ids.find(s);
    auto ti = ids.find(t);
    if (si == ids.end() || ti == ids.end()) throw FormatError("edge references unknown node '" + s + "' -> '" + t + "'");
    g.add_edge(si->second, ti->second);
  }
  return g;
}

void save_graphml(const Dag& g, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os << write_graphml(g);
  if (!os) throw IoError(path.string(), "write failed");
}

Dag load_graphml(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return read_graphml(ss.str());
}

}  // namespace dagdiff
