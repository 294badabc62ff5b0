/* Copyright 2026 The tunnelprobe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tunnelprobe/formats.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>
#include <unordered_set>

#include "json.hpp"
#include "tunnelprobe/error.hpp"
#include "tunnelprobe/heuristics.hpp"

namespace tunnelprobe::formats {

using nlohmann::json;

namespace {

constexpr double kPlacementTol = 1e-9;

// Strict field access on one JSON object: every present key must be read
// before finish(), so unknown fields surface as errors.
class Fields {
 public:
  Fields(const json& j, std::string context) : j_(j), context_(std::move(context)) {
    if (!j_.is_object()) fail("expected a JSON object");
  }

  template <typename T>
  T req(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing field '" + key + "'");
    return convert<T>(*it, key);
  }

  template <typename T>
  std::optional<T> opt(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    return convert<T>(*it, key);
  }

  const json& sub(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing field '" + key + "'");
    return *it;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) fail("unknown field '" + k + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(context_ + ": " + what);
  }

  const std::string& context() const { return context_; }

 private:
  template <typename T>
  T convert(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) fail("field '" + key + "' must be a number");
      } else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) fail("field '" + key + "' must be a non-negative integer");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail("field '" + key + "' must be an integer");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail("field '" + key + "' must be a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail("field '" + key + "': " + e.what());
    }
  }

  const json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

json parse_json(std::string_view text, const std::string& context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(context + ": malformed JSON: " + e.what());
  }
}

std::string dump_document(const json& j) { return j.dump(1) + "\n"; }

json point_json(const geometry::Point3& p) { return json::array({p.x, p.y, p.z}); }

geometry::Point3 point_from(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) throw FormatError(ctx + ": expected [x, y, z]");
  for (const auto& v : j) {
    if (!v.is_number()) throw FormatError(ctx + ": coordinates must be numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json object_json(const SceneObject& o) {
  return json{{"shape", to_string(o.spec.shape)},
              {"color", to_string(o.spec.color)},
              {"size", o.spec.size},
              {"roughness", o.spec.roughness},
              {"placement",
               {{"theta_index", o.placement.theta_index},
                {"depth", o.placement.depth},
                {"anchor", point_json(o.placement.anchor)},
                {"center", point_json(o.placement.center)}}}};
}

template <typename F>
auto as_format_error(const std::string& ctx, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw FormatError(ctx + ": " + e.what());
  }
}

SceneObject object_from(const json& j, const std::string& ctx) {
  Fields f(j, ctx);
  SceneObject o;
  o.spec.shape = as_format_error(ctx, [&] { return parse_shape(f.req<std::string>("shape")); });
  o.spec.color = as_format_error(ctx, [&] { return parse_color(f.req<std::string>("color")); });
  o.spec.size = f.req<double>("size");
  o.spec.roughness = f.req<double>("roughness");
  Fields p(f.sub("placement"), ctx + ".placement");
  o.placement.theta_index = p.req<int>("theta_index");
  o.placement.depth = p.req<double>("depth");
  o.placement.anchor = point_from(p.sub("anchor"), ctx + ".placement.anchor");
  o.placement.center = point_from(p.sub("center"), ctx + ".placement.center");
  p.finish();
  f.finish();
  return o;
}

json scene_json(const SceneInstance& s) {
  json j{{"scene_id", s.scene_id},
         {"cell", json::array({s.cell_i, s.cell_j})},
         {"instance_index", s.instance_index},
         {"far", object_json(s.far_object)},
         {"near", object_json(s.near_object)},
         {"lighting",
          {{"sun_rotation", s.lighting.sun_rotation},
           {"background_intensity", s.lighting.background_intensity}}},
         {"heuristic_label", to_string(s.heuristic_label)}};
  if (s.size_s1) j["size_s1"] = *s.size_s1;
  return j;
}

SceneInstance scene_from(const json& j, const std::string& ctx) {
  Fields f(j, ctx);
  SceneInstance s;
  s.scene_id = f.req<std::string>("scene_id");
  const std::string sctx = ctx + " (scene " + s.scene_id + ")";
  const auto cell = f.sub("cell");
  if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
      !cell[1].is_number_integer()) {
    throw FormatError(sctx + ": cell must be [i, j]");
  }
  s.cell_i = cell[0].get<int>();
  s.cell_j = cell[1].get<int>();
  s.instance_index = f.req<int>("instance_index");
  s.far_object = object_from(f.sub("far"), sctx + ".far");
  s.near_object = object_from(f.sub("near"), sctx + ".near");
  Fields l(f.sub("lighting"), sctx + ".lighting");
  s.lighting.sun_rotation = l.req<double>("sun_rotation");
  s.lighting.background_intensity = l.req<double>("background_intensity");
  l.finish();
  s.heuristic_label =
      as_format_error(sctx, [&] { return parse_label(f.req<std::string>("heuristic_label")); });
  s.size_s1 = f.opt<double>("size_s1");
  f.finish();
  return s;
}

bool near_point(const geometry::Point3& a, const geometry::Point3& b) {
  return std::fabs(a.x - b.x) <= kPlacementTol && std::fabs(a.y - b.y) <= kPlacementTol &&
         std::fabs(a.z - b.z) <= kPlacementTol;
}

void validate_object(const SceneObject& o, const TunnelSpec& spec, const std::string& ctx) {
  auto bad = [&](const std::string& what) { throw ValidationError(ctx + ": " + what); };
  if (!(o.spec.size > 0.0 && o.spec.size < spec.half_extent)) bad("size out of range");
  if (!(o.spec.roughness >= kRoughnessMin && o.spec.roughness <= kRoughnessMax)) {
    bad("roughness outside [0.05, 1.0]");
  }
  const auto anchor = tunnelgen::angular_position(spec, o.placement.theta_index, o.placement.depth);
  if (!near_point(anchor, o.placement.anchor)) bad("anchor is not the perimeter point of its slot");
  const auto center = tunnelgen::place_object(anchor, o.spec.size, spec);
  if (!near_point(center, o.placement.center)) bad("center does not match anchor and size");
}

void validate_scene(const SceneInstance& s, const SceneManifest& m) {
  const std::string ctx = "scene " + s.scene_id;
  auto bad = [&](const std::string& what) { throw ValidationError(ctx + ": " + what); };
  validate_object(s.far_object, m.tunnel, ctx + ".far");
  validate_object(s.near_object, m.tunnel, ctx + ".near");
  if (s.cell_i != s.far_object.placement.theta_index ||
      s.cell_j != s.near_object.placement.theta_index) {
    bad("cell does not match the object slots");
  }
  if (!(s.far_object.placement.depth > s.near_object.placement.depth)) {
    bad("far object is not farther than the near object");
  }
  if (s.far_object.spec.shape == s.near_object.spec.shape &&
      s.far_object.spec.color == s.near_object.spec.color) {
    bad("objects share a (color, shape) pair");
  }
  if (!(s.lighting.sun_rotation >= kSunRotationMin && s.lighting.sun_rotation <= kSunRotationMax)) {
    bad("sun_rotation outside [1.25 pi, 1.75 pi]");
  }
  if (s.lighting.background_intensity != kBackgroundIntensity) bad("background_intensity != 0.15");
  if (m.variant == SceneVariant::kSizeSweep) {
    if (!s.size_s1 || *s.size_s1 != s.far_object.spec.size) bad("size_s1 must equal the far size");
  } else if (s.size_s1) {
    bad("size_s1 present in a grid manifest");
  }
  if (heuristics::classify_scene(s, m.tunnel.camera) != s.heuristic_label) {
    bad("stored heuristic_label disagrees with the projected centers");
  }
}

void check_header(const json& header, std::string_view format, const std::string& ctx) {
  Fields f(header, ctx);
  const auto got = f.req<std::string>("format");
  if (got != format) {
    f.fail("format '" + got + "', expected '" + std::string(format) + "'");
  }
  const int version = f.req<int>("schema_version");
  if (version != kSchemaVersion) {
    f.fail("unsupported schema_version " + std::to_string(version));
  }
  f.finish();
}

template <typename T, typename ToJson>
std::string serialize_lines(std::string_view format, const std::vector<T>& records,
                            ToJson&& to_json) {
  std::string out =
      json{{"format", format}, {"schema_version", kSchemaVersion}}.dump() + "\n";
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

// Parses a JSON Lines stream. from_json receives (record, context) where
// context names the source and line.
template <typename T, typename FromJson>
std::vector<T> parse_lines(std::string_view text, std::string_view format,
                           std::string_view source, FromJson&& from_json) {
  std::vector<T> out;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string ctx = std::string(source) + ":" + std::to_string(line_no);
    if (line.empty()) {
      if (pos >= text.size()) break;
      throw FormatError(ctx + ": empty line");
    }
    const json j = parse_json(line, ctx);
    if (!saw_header) {
      check_header(j, format, ctx);
      saw_header = true;
      continue;
    }
    std::string id_hint;
    if (j.is_object()) {
      for (const char* key : {"question_id", "example_id", "pair_id"}) {
        if (auto it = j.find(key); it != j.end() && it->is_string()) {
          id_hint = it->get<std::string>();
          break;
        }
      }
    }
    out.push_back(from_json(j, id_hint.empty() ? ctx : ctx + " (record " + id_hint + ")"));
  }
  if (!saw_header) throw FormatError(std::string(source) + ": missing header line");
  return out;
}

template <typename T, typename IdOf>
void check_unique(const std::vector<T>& records, std::string_view source, IdOf&& id_of) {
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(id_of(r)).second) {
      throw ValidationError(std::string(source) + ": duplicate id " + id_of(r));
    }
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FormatError("error reading " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw FormatError("error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw FormatError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
  }
}

std::string serialize_manifest(const SceneManifest& m) {
  const auto& c = m.tunnel.camera;
  json scenes = json::array();
  for (const auto& s : m.scenes) scenes.push_back(scene_json(s));
  json j{{"format", kManifestFormat},
         {"schema_version", m.schema_version},
         {"master_seed", m.master_seed},
         {"variant", m.variant == SceneVariant::kGrid ? "grid" : "size_sweep"},
         {"instances_per_cell", m.instances_per_cell},
         {"tunnel",
          {{"half_extent", m.tunnel.half_extent},
           {"length", m.tunnel.length},
           {"angular_slots", m.tunnel.angular_slots}}},
         {"camera",
          {{"focal_length", c.focal_length},
           {"camera_height", c.camera_height},
           {"image_width", c.image_width},
           {"image_height", c.image_height},
           {"principal_point", json::array({c.principal_u, c.principal_v})}}},
         {"depths", {{"far", m.depths.far}, {"near", m.depths.near}}},
         {"scenes", std::move(scenes)}};
  return dump_document(j);
}

SceneManifest parse_manifest(std::string_view text, std::string_view source) {
  const std::string ctx(source);
  const json j = parse_json(text, ctx);
  Fields f(j, ctx);
  const auto format = f.req<std::string>("format");
  if (format != kManifestFormat) f.fail("not a scene manifest (format '" + format + "')");
  SceneManifest m;
  m.schema_version = f.req<int>("schema_version");
  if (m.schema_version != kSchemaVersion) {
    f.fail("unsupported schema_version " + std::to_string(m.schema_version));
  }
  m.master_seed = f.req<std::uint64_t>("master_seed");
  const auto variant = f.req<std::string>("variant");
  if (variant == "grid") {
    m.variant = SceneVariant::kGrid;
  } else if (variant == "size_sweep") {
    m.variant = SceneVariant::kSizeSweep;
  } else {
    f.fail("unknown variant '" + variant + "'");
  }
  m.instances_per_cell = f.req<int>("instances_per_cell");

  Fields t(f.sub("tunnel"), ctx + ".tunnel");
  m.tunnel.half_extent = t.req<double>("half_extent");
  m.tunnel.length = t.req<double>("length");
  m.tunnel.angular_slots = t.req<int>("angular_slots");
  t.finish();

  Fields c(f.sub("camera"), ctx + ".camera");
  auto& cam = m.tunnel.camera;
  cam.focal_length = c.req<double>("focal_length");
  cam.camera_height = c.req<double>("camera_height");
  cam.image_width = c.req<int>("image_width");
  cam.image_height = c.req<int>("image_height");
  const json& pp = c.sub("principal_point");
  if (!pp.is_array() || pp.size() != 2 || !pp[0].is_number() || !pp[1].is_number()) {
    c.fail("principal_point must be [u, v]");
  }
  cam.principal_u = pp[0].get<double>();
  cam.principal_v = pp[1].get<double>();
  c.finish();

  Fields d(f.sub("depths"), ctx + ".depths");
  m.depths.far = d.req<double>("far");
  m.depths.near = d.req<double>("near");
  d.finish();

  const json& scenes = f.sub("scenes");
  if (!scenes.is_array()) f.fail("scenes must be an array");
  f.finish();
  m.tunnel.validate();

  m.scenes.reserve(scenes.size());
  for (std::size_t k = 0; k < scenes.size(); ++k) {
    m.scenes.push_back(scene_from(scenes[k], ctx + ".scenes[" + std::to_string(k) + "]"));
  }
  check_unique(m.scenes, source, [](const SceneInstance& s) { return s.scene_id; });
  for (const auto& s : m.scenes) validate_scene(s, m);
  return m;
}

void write_manifest(const std::filesystem::path& path, const SceneManifest& manifest) {
  write_file_atomic(path, serialize_manifest(manifest));
}

SceneManifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.string());
}

std::string serialize_qa(const std::vector<QuestionRecord>& records) {
  return serialize_lines(kQaFormat, records, [](const QuestionRecord& q) {
    return json{{"question_id", q.question_id},
                {"scene_id", q.scene_id},
                {"template_id", q.template_id},
                {"text", q.text},
                {"ground_truth", to_string(q.ground_truth)},
                {"queried_pair", json::array({q.queried_pair[0], q.queried_pair[1]})}};
  });
}

std::vector<QuestionRecord> parse_qa(std::string_view text, std::string_view source) {
  auto out = parse_lines<QuestionRecord>(text, kQaFormat, source, [](const json& j,
                                                                     const std::string& ctx) {
    Fields f(j, ctx);
    QuestionRecord q;
    q.question_id = f.req<std::string>("question_id");
    q.scene_id = f.req<std::string>("scene_id");
    q.template_id = f.req<int>("template_id");
    if (q.template_id < 1 || q.template_id > 4) f.fail("template_id must lie in 1..4");
    q.text = f.req<std::string>("text");
    q.ground_truth =
        as_format_error(ctx, [&] { return parse_answer(f.req<std::string>("ground_truth")); });
    const json& pair = f.sub("queried_pair");
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      f.fail("queried_pair must be two strings");
    }
    q.queried_pair = {pair[0].get<std::string>(), pair[1].get<std::string>()};
    f.finish();
    return q;
  });
  check_unique(out, source, [](const QuestionRecord& q) { return q.question_id; });
  return out;
}

std::string serialize_logits(const std::vector<scoring::LogitRecord>& records) {
  return serialize_lines(kLogitFormat, records, [](const scoring::LogitRecord& r) {
    json j{{"question_id", r.question_id}, {"logit_yes", r.logit_yes}, {"logit_no", r.logit_no}};
    if (r.answer_text) j["answer_text"] = *r.answer_text;
    return j;
  });
}

std::vector<scoring::LogitRecord> parse_logits(std::string_view text, std::string_view source) {
  auto out = parse_lines<scoring::LogitRecord>(
      text, kLogitFormat, source, [](const json& j, const std::string& ctx) {
        Fields f(j, ctx);
        scoring::LogitRecord r;
        r.question_id = f.req<std::string>("question_id");
        r.logit_yes = f.req<double>("logit_yes");
        r.logit_no = f.req<double>("logit_no");
        r.answer_text = f.opt<std::string>("answer_text");
        f.finish();
        return r;
      });
  check_unique(out, source, [](const scoring::LogitRecord& r) { return r.question_id; });
  return out;
}

std::string serialize_annotations(const std::vector<AnnotationRecord>& records) {
  return serialize_lines(kAnnotationFormat, records, [](const AnnotationRecord& a) {
    json j{{"example_id", a.example_id}, {"relation", a.relation}};
    if (a.far_center_v) j["far_center_v"] = *a.far_center_v;
    if (a.near_center_v) j["near_center_v"] = *a.near_center_v;
    if (a.image_height) j["image_height"] = *a.image_height;
    if (!a.objects.empty()) j["objects"] = a.objects;
    if (!a.options.empty()) j["options"] = a.options;
    if (a.correct_option) j["correct_option"] = *a.correct_option;
    return j;
  });
}

std::vector<AnnotationRecord> parse_annotations(std::string_view text, std::string_view source) {
  auto out = parse_lines<AnnotationRecord>(
      text, kAnnotationFormat, source, [](const json& j, const std::string& ctx) {
        Fields f(j, ctx);
        AnnotationRecord a;
        a.example_id = f.req<std::string>("example_id");
        a.relation = f.req<std::string>("relation");
        as_format_error(ctx, [&] { return probing::parse_category(a.relation); });
        a.far_center_v = f.opt<double>("far_center_v");
        a.near_center_v = f.opt<double>("near_center_v");
        a.image_height = f.opt<int>("image_height");
        a.objects = f.opt<std::vector<std::string>>("objects").value_or(std::vector<std::string>{});
        a.options = f.opt<std::vector<std::string>>("options").value_or(std::vector<std::string>{});
        a.correct_option = f.opt<int>("correct_option");
        f.finish();
        return a;
      });
  check_unique(out, source, [](const AnnotationRecord& a) { return a.example_id; });
  return out;
}

std::string serialize_probe_questions(const std::vector<probing::ProbeQuestion>& records) {
  return serialize_lines(kProbeQuestionFormat, records, [](const probing::ProbeQuestion& q) {
    return json{{"question_id", q.question_id}, {"example_id", q.example_id}, {"text", q.text}};
  });
}

std::vector<probing::ProbeQuestion> parse_probe_questions(std::string_view text,
                                                          std::string_view source) {
  auto out = parse_lines<probing::ProbeQuestion>(
      text, kProbeQuestionFormat, source, [](const json& j, const std::string& ctx) {
        Fields f(j, ctx);
        probing::ProbeQuestion q;
        q.question_id = f.req<std::string>("question_id");
        q.example_id = f.req<std::string>("example_id");
        q.text = f.req<std::string>("text");
        f.finish();
        return q;
      });
  check_unique(out, source, [](const probing::ProbeQuestion& q) { return q.question_id; });
  return out;
}

std::string serialize_swap_pairs(const std::vector<probing::SwapPair>& records) {
  return serialize_lines(kSwapPairFormat, records, [](const probing::SwapPair& p) {
    return json{{"pair_id", p.pair_id},
                {"q_original", p.q_original},
                {"q_swapped", p.q_swapped},
                {"category", probing::to_string(p.category)},
                {"axis", probing::to_string(p.axis())}};
  });
}

std::vector<probing::SwapPair> parse_swap_pairs(std::string_view text, std::string_view source) {
  auto out = parse_lines<probing::SwapPair>(
      text, kSwapPairFormat, source, [](const json& j, const std::string& ctx) {
        Fields f(j, ctx);
        probing::SwapPair p;
        p.pair_id = f.req<std::string>("pair_id");
        p.q_original = f.req<std::string>("q_original");
        p.q_swapped = f.req<std::string>("q_swapped");
        p.category = as_format_error(
            ctx, [&] { return probing::parse_category(f.req<std::string>("category")); });
        const auto axis = f.req<std::string>("axis");
        if (axis != probing::to_string(p.axis())) {
          f.fail("axis '" + axis + "' does not match category");
        }
        if (p.q_original == p.q_swapped) f.fail("q_original equals q_swapped");
        f.finish();
        return p;
      });
  check_unique(out, source, [](const probing::SwapPair& p) { return p.pair_id; });
  return out;
}

void check_logit_references(const std::vector<scoring::LogitRecord>& logits,
                            const std::vector<QuestionRecord>& questions) {
  std::unordered_set<std::string_view> ids;
  for (const auto& q : questions) ids.insert(q.question_id);
  for (const auto& r : logits) {
    if (!ids.contains(r.question_id)) {
      throw ValidationError("dangling reference: logit record for unknown question " +
                            r.question_id);
    }
  }
}

}  // namespace tunnelprobe::formats
