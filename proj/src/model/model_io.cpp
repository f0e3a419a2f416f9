// Copyright 2026 The dynkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynkit/model_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace dynkit {
namespace {

using json = nlohmann::json;

std::string with_line(int line, const std::string& message) {
  return line > 0 ? "line " + std::to_string(line) + ": " + message : message;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line on which each element object of the top-level "bodies" array opens.
// nlohmann::json does not keep source positions, so this is a small scan
// that only tracks strings and bracket nesting.
std::vector<int> body_start_lines(std::string_view text) {
  std::vector<int> lines;
  std::vector<char> stack;
  std::string top_key;
  bool in_bodies = false;
  int line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\') ++i;
        if (i < text.size()) {
          if (text[i] == '\n') ++line;
          s += text[i];
        }
      }
      if (stack.size() == 1) top_key = std::move(s);
    } else if (c == '[' || c == '{') {
      stack.push_back(c);
      if (c == '[' && stack.size() == 2 && top_key == "bodies") {
        in_bodies = true;
      } else if (c == '{' && in_bodies && stack.size() == 3) {
        lines.push_back(line);
      }
    } else if (c == ']' || c == '}') {
      if (!stack.empty()) stack.pop_back();
      if (stack.size() < 2) in_bodies = false;
    }
  }
  return lines;
}

class BodyReader {
 public:
  BodyReader(const json& obj, int index, int line)
      : obj_(obj), index_(index), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ModelError(line_, "body " + std::to_string(index_ + 1) + ": " +
                                message);
  }

  bool has(const char* key) const { return obj_.contains(key); }

  double number(const char* key) const {
    const json& v = required(key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }

  Vec3 vec3(const char* key) const { return to_vec3(required(key), key); }

  Mat3 mat3(const char* key) const {
    const json& v = required(key);
    if (!v.is_array() || v.size() != 3) {
      fail(std::string("'") + key + "' must be a 3x3 array of rows");
    }
    Mat3 m;
    for (int r = 0; r < 3; ++r) m.row(r) = to_vec3(v[r], key).transpose();
    return m;
  }

  std::string string(const char* key) const {
    const json& v = required(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  int integer(const char* key) const {
    const json& v = required(key);
    if (!v.is_number_integer()) {
      fail(std::string("'") + key + "' must be an integer");
    }
    return v.get<int>();
  }

 private:
  const json& required(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(std::string("missing '") + key + "'");
    return *it;
  }

  Vec3 to_vec3(const json& v, const char* key) const {
    if (!v.is_array() || v.size() != 3) {
      fail(std::string("'") + key + "' must be an array of 3 numbers");
    }
    Vec3 out;
    for (int k = 0; k < 3; ++k) {
      if (!v[k].is_number()) {
        fail(std::string("'") + key + "' must contain numbers");
      }
      out[k] = v[k].get<double>();
    }
    return out;
  }

  const json& obj_;
  int index_;
  int line_;
};

const std::set<std::string, std::less<>> kBodyKeys = {
    "name", "parent", "joint", "axis",   "rotation",
    "translation", "mass",   "com",   "inertia"};
const std::set<std::string, std::less<>> kTopKeys = {"format_version", "name",
                                                     "gravity", "bodies"};

Body read_body(const json& obj, int index, int line) {
  BodyReader in(obj, index, line);
  if (!obj.is_object()) in.fail("must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!kBodyKeys.contains(key)) in.fail("unknown key '" + key + "'");
  }
  Body body;
  if (in.has("name")) body.name = in.string("name");
  // File parents are 1-based with 0 for the base.
  body.parent = in.integer("parent") - 1;
  const std::string kind = in.string("joint");
  const auto parsed = parse_joint_kind(kind);
  if (!parsed) in.fail("unknown joint kind '" + kind + "'");
  body.joint.kind = *parsed;
  body.joint.axis = in.vec3("axis");
  // rotation is R_parent_joint (joint-frame axes as columns, parent
  // coordinates); the Plucker transform stores its transpose.
  const Mat3 rotation = in.has("rotation") ? in.mat3("rotation")
                                           : Mat3::Identity();
  const Vec3 translation =
      in.has("translation") ? in.vec3("translation") : Vec3::Zero();
  body.joint.tree_transform =
      PluckerTransform(rotation.transpose(), translation);
  body.inertial.mass = in.number("mass");
  body.inertial.com = in.vec3("com");
  body.inertial.inertia_about_com = in.mat3("inertia");
  if (auto err = validate_body(body, index)) in.fail(*err);
  return body;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_vec(const Vec3& v) {
  return "[" + format_number(v.x()) + ", " + format_number(v.y()) + ", " +
         format_number(v.z()) + "]";
}

std::string format_mat(const Mat3& m) {
  return "[" + format_vec(m.row(0).transpose()) + ", " +
         format_vec(m.row(1).transpose()) + ", " +
         format_vec(m.row(2).transpose()) + "]";
}

}  // namespace

ModelError::ModelError(int line, const std::string& message)
    : std::runtime_error(with_line(line, message)), line_(line) {}

KinematicTree load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ModelError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                     "malformed document: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ModelError(1, "document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!kTopKeys.contains(key)) throw ModelError(0, "unknown key '" + key + "'");
  }
  auto version = doc.find("format_version");
  if (version == doc.end()) throw ModelError(0, "missing 'format_version'");
  if (!version->is_number_integer() ||
      version->get<int>() != kModelFormatVersion) {
    throw ModelError(0, "unsupported format_version (expected " +
                            std::to_string(kModelFormatVersion) + ")");
  }
  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ModelError(0, "'name' must be a string");
    name = it->get<std::string>();
  }
  Vec3 gravity(0.0, 0.0, -9.81);
  if (auto it = doc.find("gravity"); it != doc.end()) {
    if (!it->is_array() || it->size() != 3) {
      throw ModelError(0, "'gravity' must be an array of 3 numbers");
    }
    for (int k = 0; k < 3; ++k) {
      if (!(*it)[k].is_number()) {
        throw ModelError(0, "'gravity' must contain numbers");
      }
      gravity[k] = (*it)[k].get<double>();
    }
  }
  auto bodies_it = doc.find("bodies");
  if (bodies_it == doc.end() || !bodies_it->is_array()) {
    throw ModelError(0, "missing 'bodies' array");
  }
  if (bodies_it->empty()) throw ModelError(0, "'bodies' must not be empty");

  const std::vector<int> lines = body_start_lines(text);
  std::vector<Body> bodies;
  bodies.reserve(bodies_it->size());
  for (std::size_t i = 0; i < bodies_it->size(); ++i) {
    const int line = i < lines.size() ? lines[i] : 0;
    bodies.push_back(read_body((*bodies_it)[i], static_cast<int>(i), line));
  }
  return KinematicTree(std::move(bodies), gravity, std::move(name));
}

KinematicTree load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(0, "cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

std::string save_model(const KinematicTree& tree) {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": " + std::to_string(kModelFormatVersion) + ",\n";
  out += "  \"name\": " + json(tree.name()).dump() + ",\n";
  out += "  \"gravity\": " + format_vec(tree.gravity()) + ",\n";
  out += "  \"bodies\": [";
  for (int i = 0; i < tree.size(); ++i) {
    const Body& b = tree.body(i);
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"name\": " + json(b.name).dump() + ",\n";
    out += "      \"parent\": " + std::to_string(b.parent + 1) + ",\n";
    out += "      \"joint\": \"" + std::string(to_string(b.joint.kind)) + "\",\n";
    out += "      \"axis\": " + format_vec(b.joint.axis) + ",\n";
    out += "      \"rotation\": " +
           format_mat(b.joint.tree_transform.rot().transpose()) + ",\n";
    out += "      \"translation\": " + format_vec(b.joint.tree_transform.trans()) +
           ",\n";
    out += "      \"mass\": " + format_number(b.inertial.mass) + ",\n";
    out += "      \"com\": " + format_vec(b.inertial.com) + ",\n";
    out += "      \"inertia\": " + format_mat(b.inertial.inertia_about_com) + "\n";
    out += "    }";
  }
  out += "\n  ]\n}\n";
  return out;
}

void save_model_file(const KinematicTree& tree, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError(0, "cannot write model file '" + path + "'");
  out << save_model(tree);
}

}  // namespace dynkit
