#ifndef QTWIST_JSON_IO_HPP_
#define QTWIST_JSON_IO_HPP_

#include <json.hpp>
#include <string>

#include "qtwist/curve.hpp"
#include "qtwist/heights.hpp"

namespace qtwist {

using Json = nlohmann::ordered_json;

// Integers travel as decimal strings; numbers are accepted on input.
Int json_int(const Json& j);
Rat json_rat(const Json& j);

Json curve_to_json(const Curve& c, const Int& D = Int(1));
// {"A","B","D","x","y"}; the point at infinity is the string "inf".
Json point_to_json(const Curve& base, const Int& D, const Point& p);
Point point_from_json(const Json& j);
// ["p/q","p/q"] pair form used in generator files.
Json point_pair(const Point& p);
Point point_from_pair(const Json& j);

Json height_to_json(const HeightValue& h);
HeightValue height_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qtwist

#endif  // QTWIST_JSON_IO_HPP_
