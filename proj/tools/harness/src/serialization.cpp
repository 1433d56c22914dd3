#include "tolrob/harness/serialization.hpp"

#include <utility>
#include <variant>
#include <vector>

#include "tolrob/harness/config.hpp"

namespace tolrob::harness {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json ball_json(const Ball& b) { return json{{"center", to_json(b.center)}, {"radius", b.radius}}; }

Ball ball_from_json(const json& j) {
  require(j.is_object() && j.contains("center") && j.contains("radius"), "ball needs center and radius");
  require(j.at("radius").is_number(), "ball radius must be a number");
  return Ball(vector_from_json(j.at("center")), j.at("radius").get<double>());
}

const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field ") + key);
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  require(v.is_number(), std::string(key) + " must be a number");
  return v.get<double>();
}

Label label(const json& j) {
  require(j.is_number_integer(), "labels are 1 or -1");
  try {
    return label_from_int(j.get<int>());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

json to_json(const Vector& v) { return json(std::vector<double>(v.coords().begin(), v.coords().end())); }

Vector vector_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "vectors are nonempty number arrays");
  std::vector<double> c;
  for (const auto& e : j) {
    require(e.is_number(), "vectors are nonempty number arrays");
    c.push_back(e.get<double>());
  }
  try {
    return Vector(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json to_json(const Region& r) {
  return std::visit(Overloaded{
                        [](const FinitePoints& f) {
                          json pts = json::array();
                          for (const auto& p : f.points) pts.push_back(to_json(p));
                          return json{{"type", "points"}, {"points", pts}};
                        },
                        [](const Ball& b) {
                          json j = ball_json(b);
                          j["type"] = "ball";
                          return j;
                        },
                        [](const UnionOfBalls& u) {
                          json bs = json::array();
                          for (const auto& b : u.balls) bs.push_back(ball_json(b));
                          return json{{"type", "balls"}, {"balls", bs}};
                        },
                        [](const Expanded& e) {
                          return json{{"type", "expanded"}, {"base", to_json(*e.base)}, {"gamma", e.gamma}};
                        },
                    },
                    r.variant());
}

Region region_from_json(const json& j) {
  const json& type = field(j, "type");
  require(type.is_string(), "region type must be a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "points") {
      std::vector<Vector> pts;
      for (const auto& p : field(j, "points")) pts.push_back(vector_from_json(p));
      return Region::points(std::move(pts));
    }
    if (t == "ball") {
      const Ball b = ball_from_json(j);
      return Region::ball(b.center, b.radius);
    }
    if (t == "balls") {
      std::vector<Ball> bs;
      for (const auto& b : field(j, "balls")) bs.push_back(ball_from_json(b));
      return Region::balls(std::move(bs));
    }
    if (t == "expanded") return Region::expanded(region_from_json(field(j, "base")), number(j, "gamma"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown region type: " + t);
}

json to_json(const Hypothesis& h) {
  return std::visit(Overloaded{
                        [](const Linear& l) { return json{{"type", "linear"}, {"w", to_json(l.w)}, {"b", l.b}}; },
                        [](const SphereBoundary& s) {
                          return json{{"type", "sphere"},
                                      {"center", to_json(s.center)},
                                      {"radius", s.radius},
                                      {"inside", to_int(s.inside_label)}};
                        },
                        [](const Table& t) {
                          json entries = json::array();
                          for (const auto& p : t.points) {
                            entries.push_back(json{{"x", to_json(p)}, {"y", to_int(t.entries.at(RegionFamily::key_of(p)))}});
                          }
                          return json{{"type", "table"},
                                      {"dim", t.dim},
                                      {"default", to_int(t.default_label)},
                                      {"entries", entries}};
                        },
                    },
                    h.variant());
}

Hypothesis hypothesis_from_json(const json& j) {
  const json& type = field(j, "type");
  require(type.is_string(), "hypothesis type must be a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "linear") return Hypothesis::linear(vector_from_json(field(j, "w")), number(j, "b"));
    if (t == "sphere") {
      return Hypothesis::sphere(vector_from_json(field(j, "center")), number(j, "radius"), label(field(j, "inside")));
    }
    if (t == "table") {
      std::vector<std::pair<Vector, Label>> entries;
      for (const auto& e : field(j, "entries")) entries.emplace_back(vector_from_json(field(e, "x")), label(field(e, "y")));
      const json& dim = field(j, "dim");
      require(dim.is_number_unsigned(), "table dim must be a positive integer");
      return Hypothesis::table(entries, label(field(j, "default")), dim.get<std::size_t>());
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown hypothesis type: " + t);
}

}  // namespace tolrob::harness
