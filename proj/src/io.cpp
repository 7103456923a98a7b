#include "so3topo/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "so3topo/ball_chart.hpp"
#include "so3topo/torus_chart.hpp"

namespace so3 {
namespace {

using nlohmann::json;

UnitQuaterniond quaternion_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    throw InvalidInput(where + " must be an array [w, x, y, z]");
  }
  Vec4 v;
  for (int i = 0; i < 4; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      throw InvalidInput(where + " has a non-numeric component");
    }
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  try {
    return UnitQuaterniond(v);
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json quaternion_to_json(const UnitQuaterniond& q) {
  return json::array({q.w(), q.x(), q.y(), q.z()});
}

std::ostream& full_precision(std::ostream& out) {
  return out << std::setprecision(17);
}

}  // namespace

Loop PathDocument::to_loop(const Tolerances& tol) const {
  const RotationMatrixd base =
      basepoint ? quat_to_matrix(*basepoint) : RotationMatrixd::identity();
  return Loop(path, base, tol);
}

PathDocument parse_path_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("path JSON does not parse: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("path JSON must be an object");
  if (!doc.contains("samples") || !doc["samples"].is_array()) {
    throw InvalidInput("path JSON needs a \"samples\" array");
  }
  const json& raw = doc["samples"];
  if (raw.size() < 2) throw InvalidInput("path JSON needs at least two samples");
  std::vector<UnitQuaterniond> samples;
  samples.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    samples.push_back(quaternion_from_json(raw[i], "sample " + std::to_string(i)));
  }
  std::optional<UnitQuaterniond> basepoint;
  if (doc.contains("basepoint") && !doc["basepoint"].is_null()) {
    basepoint = quaternion_from_json(doc["basepoint"], "basepoint");
  }
  std::string meta = doc.contains("meta") && doc["meta"].is_string()
                         ? doc["meta"].get<std::string>()
                         : std::string("json");
  return PathDocument{RotationPath(std::move(samples), std::move(meta)), basepoint};
}

PathDocument read_path_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidInput("cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_path_json(buffer.str());
}

std::string to_path_json(const RotationPath& path, const std::optional<UnitQuaterniond>& basepoint) {
  json doc;
  if (basepoint) doc["basepoint"] = quaternion_to_json(*basepoint);
  json samples = json::array();
  for (const auto& q : path.samples()) samples.push_back(quaternion_to_json(q));
  doc["samples"] = std::move(samples);
  if (!path.meta().empty()) doc["meta"] = path.meta();
  return doc.dump();
}

std::string to_path_json(const Loop& loop) {
  return to_path_json(loop.path(), matrix_to_quat(loop.basepoint()));
}

void write_grid_csv(std::ostream& out, const HomotopyGrid& grid) {
  full_precision(out);
  out << "s,t,w,x,y,z\n";
  for (std::size_t s = 0; s < grid.rows(); ++s) {
    for (std::size_t t = 0; t < grid.cols(); ++t) {
      const UnitQuaterniond& q = grid.at(s, t);
      out << s << ',' << t << ',' << q.w() << ',' << q.x() << ',' << q.y() << ',' << q.z()
          << '\n';
    }
  }
}

HomotopyGrid read_grid_csv(std::istream& in, const RotationMatrixd& basepoint) {
  std::string line;
  if (!std::getline(in, line) || line != "s,t,w,x,y,z") {
    throw InvalidInput("grid CSV must start with the header s,t,w,x,y,z");
  }
  std::map<std::pair<std::size_t, std::size_t>, UnitQuaterniond> cells;
  std::size_t rows = 0, cols = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::size_t s = 0, t = 0;
    double w = 0, x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
    if (!(fields >> s >> c1 >> t >> c2 >> w >> c3 >> x >> c4 >> y >> c5 >> z) || c1 != ',' ||
        c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw InvalidInput("grid CSV line " + std::to_string(line_no) + " is malformed");
    }
    cells.insert_or_assign({s, t}, UnitQuaterniond(w, x, y, z));
    rows = std::max(rows, s + 1);
    cols = std::max(cols, t + 1);
  }
  if (cells.size() != rows * cols) throw InvalidInput("grid CSV is not a complete grid");
  std::vector<UnitQuaterniond> nodes;
  nodes.reserve(cells.size());
  for (const auto& [key, q] : cells) nodes.push_back(q);  // map order is row-major
  return HomotopyGrid(rows, cols, std::move(nodes), basepoint, "csv");
}

void write_torus_chart_csv(std::ostream& out, const RotationPath& path, const Tolerances& tol) {
  std::ostringstream body;
  full_precision(body);
  for (std::size_t i = 0; i < path.size(); ++i) {
    TorusChartPoint c;
    try {
      c = chart_forward(path.rotation(i), tol);
    } catch (const SouthPoleSingular& e) {
      throw SouthPoleSingular("sample " + std::to_string(i) + " is outside the torus chart: " +
                              e.what());
    }
    const SolidTorusCoord st = to_solid_torus(c);
    body << i << ',' << c.lambda << ',' << c.alpha << ',' << c.phi << ',' << st.disk.x() << ','
         << st.disk.y() << '\n';
  }
  out << "i,lambda,alpha,phi,disk_x,disk_y\n" << body.str();
}

void write_ball_chart_csv(std::ostream& out, const RotationPath& path, const Tolerances& tol) {
  full_precision(out);
  out << "i,vx,vy,vz\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vec3 v = to_ball(matrix_to_quat(path.rotation(i), tol), tol).vector();
    out << i << ',' << v.x() << ',' << v.y() << ',' << v.z() << '\n';
  }
}

}  // namespace so3
