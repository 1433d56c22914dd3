#pragma once

#include <json.hpp>

#include "tolrob/model.hpp"
#include "tolrob/region.hpp"
#include "tolrob/vector.hpp"

namespace tolrob::harness {

using nlohmann::json;

json to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// {"type": "points", "points": [[..], ..]}
/// {"type": "ball", "center": [..], "radius": r}
/// {"type": "balls", "balls": [{"center": [..], "radius": r}, ..]}
/// {"type": "expanded", "base": {..}, "gamma": g}
json to_json(const Region& r);
Region region_from_json(const json& j);

/// {"type": "linear", "w": [..], "b": b}
/// {"type": "sphere", "center": [..], "radius": R, "inside": 1 | -1}
/// {"type": "table", "dim": d, "default": 1 | -1, "entries": [{"x": [..], "y": 1 | -1}, ..]}
json to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const json& j);

}  // namespace tolrob::harness
