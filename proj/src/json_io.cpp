#include "qtwist/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qtwist/errors.hpp"

namespace qtwist {

Int json_int(const Json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  throw Error(ErrorCode::kIoError, "expected integer, got " + j.dump());
}

Rat json_rat(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(json_int(j));
  throw Error(ErrorCode::kIoError, "expected rational, got " + j.dump());
}

Json curve_to_json(const Curve& c, const Int& D) {
  Json j;
  j["A"] = c.A.get_str();
  j["B"] = c.B.get_str();
  j["D"] = D.get_str();
  return j;
}

Json point_to_json(const Curve& base, const Int& D, const Point& p) {
  if (p.inf) return "inf";
  Json j = curve_to_json(base, D);
  j["x"] = rat_to_string(p.x);
  j["y"] = rat_to_string(p.y);
  return j;
}

Point point_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Point::infinity();
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw Error(ErrorCode::kIoError, "bad point: " + j.dump());
  return Point::affine(json_rat(j["x"]), json_rat(j["y"]));
}

Json point_pair(const Point& p) {
  if (p.inf) return "inf";
  return Json::array({rat_to_string(p.x), rat_to_string(p.y)});
}

Point point_from_pair(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Point::infinity();
  if (j.is_object()) return point_from_json(j);
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kIoError, "bad point: " + j.dump());
  return Point::affine(json_rat(j[0]), json_rat(j[1]));
}

Json height_to_json(const HeightValue& h) {
  Json j;
  j["value"] = h.value;
  j["precision"] = h.precision;
  return j;
}

HeightValue height_from_json(const Json& j) {
  return {j.at("value").get<double>(), j.at("precision").get<double>()};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace qtwist
