#include "ucvrp/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ucvrp/errors.hpp"

namespace ucvrp::io {

json instance_to_json(const Instance& inst) {
  json doc;
  doc["name"] = inst.name();
  doc["capacity"] = inst.capacity();
  doc["demands"] = inst.demands();
  if (inst.coords()) {
    json coords = json::array();
    for (const auto& p : *inst.coords()) {
      coords.push_back({p.x, p.y});
    }
    doc["metric"] = {{"type", "euc2d"}, {"coords", std::move(coords)}};
  } else {
    json matrix = json::array();
    for (int x = 0; x < inst.vertex_count(); ++x) {
      const auto row = inst.row(x);
      matrix.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["metric"] = {{"type", "explicit"}, {"matrix", std::move(matrix)}};
  }
  return doc;
}

Instance instance_from_json(const json& doc) {
  try {
    RawInstance raw;
    raw.name = doc.value("name", std::string("unnamed"));
    raw.capacity = doc.at("capacity").get<std::int64_t>();
    raw.demands = doc.at("demands").get<std::vector<std::int64_t>>();
    const auto& metric = doc.at("metric");
    const auto type = metric.at("type").get<std::string>();
    if (type == "explicit") {
      const auto rows =
          metric.at("matrix").get<std::vector<std::vector<double>>>();
      for (const auto& r : rows) {
        if (r.size() != rows.size()) {
          throw MalformedInstance("explicit matrix must be square");
        }
        raw.matrix.insert(raw.matrix.end(), r.begin(), r.end());
      }
    } else if (type == "euc2d") {
      std::vector<Point> pts;
      for (const auto& p : metric.at("coords")) {
        if (!p.is_array() || p.size() != 2) {
          throw MalformedInstance("euc2d coords must be [x, y] pairs");
        }
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      raw.coords = std::move(pts);
    } else {
      throw MalformedInstance("unknown metric type '" + type + "'");
    }
    return validate_instance(std::move(raw));
  } catch (const json::exception& e) {
    throw MalformedInstance(std::string("instance JSON: ") + e.what());
  }
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  return s;
}

template <class T> T read_number(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) {
    throw MalformedInstance(std::string("TSPLIB: truncated ") + what);
  }
  return value;
}

} // namespace

Instance parse_tsplib(std::istream& in, bool round_euc2d) {
  std::map<std::string, std::string> header;
  long dimension = -1;
  std::vector<Point> coords;
  std::vector<double> weights;
  std::vector<std::int64_t> demand_by_node;
  std::vector<long> depots;

  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    std::string key = line;
    std::string value;
    if (const auto colon = line.find(':'); colon != std::string::npos) {
      key = trim(line.substr(0, colon));
      value = trim(line.substr(colon + 1));
    }
    key = upper(key);
    if (key == "EOF") {
      break;
    }
    if (key == "NAME" || key == "TYPE" || key == "COMMENT" ||
        key == "DIMENSION" || key == "CAPACITY" || key == "EDGE_WEIGHT_TYPE" ||
        key == "EDGE_WEIGHT_FORMAT") {
      header[key] = value;
      if (key == "DIMENSION") {
        dimension = std::stol(value);
        if (dimension < 1) {
          throw MalformedInstance("TSPLIB: DIMENSION must be positive");
        }
      }
      continue;
    }
    if (dimension < 1) {
      throw MalformedInstance("TSPLIB: section '" + key +
                              "' before DIMENSION");
    }
    if (key == "NODE_COORD_SECTION") {
      coords.resize(dimension);
      for (long i = 0; i < dimension; ++i) {
        const long id = read_number<long>(in, "NODE_COORD_SECTION");
        if (id < 1 || id > dimension) {
          throw MalformedInstance("TSPLIB: node id out of range");
        }
        coords[id - 1].x = read_number<double>(in, "NODE_COORD_SECTION");
        coords[id - 1].y = read_number<double>(in, "NODE_COORD_SECTION");
      }
    } else if (key == "EDGE_WEIGHT_SECTION") {
      weights.resize(static_cast<std::size_t>(dimension) * dimension);
      for (auto& w : weights) {
        w = read_number<double>(in, "EDGE_WEIGHT_SECTION");
      }
    } else if (key == "DEMAND_SECTION") {
      demand_by_node.assign(dimension, 0);
      for (long i = 0; i < dimension; ++i) {
        const long id = read_number<long>(in, "DEMAND_SECTION");
        if (id < 1 || id > dimension) {
          throw MalformedInstance("TSPLIB: node id out of range");
        }
        demand_by_node[id - 1] = read_number<std::int64_t>(in, "DEMAND_SECTION");
      }
    } else if (key == "DEPOT_SECTION") {
      for (;;) {
        const long id = read_number<long>(in, "DEPOT_SECTION");
        if (id == -1) {
          break;
        }
        depots.push_back(id);
      }
    } else {
      throw MalformedInstance("TSPLIB: unsupported keyword '" + key + "'");
    }
    std::getline(in, line); // rest of the last data line
  }

  if (auto it = header.find("TYPE"); it != header.end() && upper(it->second) != "CVRP") {
    throw MalformedInstance("TSPLIB: TYPE must be CVRP, got '" + it->second + "'");
  }
  if (dimension < 1 || !header.contains("CAPACITY")) {
    throw MalformedInstance("TSPLIB: DIMENSION and CAPACITY are required");
  }
  if (demand_by_node.empty()) {
    throw MalformedInstance("TSPLIB: DEMAND_SECTION is required");
  }
  if (depots.size() != 1) {
    throw MalformedInstance("TSPLIB: exactly one depot is supported");
  }
  const long depot = depots.front();
  if (depot < 1 || depot > dimension) {
    throw MalformedInstance("TSPLIB: depot id out of range");
  }
  if (demand_by_node[depot - 1] != 0) {
    throw MalformedInstance("TSPLIB: depot must have zero demand");
  }

  // Depot becomes vertex 0; customers keep their relative order.
  std::vector<long> order{depot - 1};
  for (long i = 0; i < dimension; ++i) {
    if (i != depot - 1) {
      order.push_back(i);
    }
  }

  RawInstance raw;
  raw.name = header.contains("NAME") ? header["NAME"] : "tsplib";
  raw.capacity = std::stoll(header["CAPACITY"]);
  for (std::size_t i = 1; i < order.size(); ++i) {
    raw.demands.push_back(demand_by_node[order[i]]);
  }

  const std::string ewt = upper(header["EDGE_WEIGHT_TYPE"]);
  if (ewt == "EUC_2D") {
    if (coords.empty()) {
      throw MalformedInstance("TSPLIB: EUC_2D needs NODE_COORD_SECTION");
    }
    std::vector<Point> pts;
    for (const long i : order) {
      pts.push_back(coords[i]);
    }
    raw.coords = std::move(pts);
    raw.round_euclidean = round_euc2d;
  } else if (ewt == "EXPLICIT") {
    if (upper(header["EDGE_WEIGHT_FORMAT"]) != "FULL_MATRIX") {
      throw MalformedInstance("TSPLIB: only EDGE_WEIGHT_FORMAT FULL_MATRIX is supported");
    }
    if (weights.empty()) {
      throw MalformedInstance("TSPLIB: EXPLICIT needs EDGE_WEIGHT_SECTION");
    }
    for (const long i : order) {
      for (const long j : order) {
        raw.matrix.push_back(weights[static_cast<std::size_t>(i) * dimension + j]);
      }
    }
  } else {
    throw MalformedInstance("TSPLIB: unsupported EDGE_WEIGHT_TYPE '" + ewt + "'");
  }
  return validate_instance(std::move(raw));
}

Instance load_instance(const std::filesystem::path& path, bool round_euc2d) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedInstance("cannot open " + path.string());
  }
  if (path.extension() == ".json") {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw MalformedInstance(path.string() + ": " + e.what());
    }
    return instance_from_json(doc);
  }
  return parse_tsplib(in, round_euc2d);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw MalformedInstance("cannot write " + path.string());
  }
  out << instance_to_json(inst).dump(2) << '\n';
}

} // namespace ucvrp::io
