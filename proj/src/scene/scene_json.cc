// Copyright 2026 The Selective ANC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sanc/scene/scene_json.h"

#include <fstream>
#include <set>

#include "sanc/error.h"

namespace sanc {
namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const char* key, const std::string& ctx) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                ctx + "." + key + ": " + std::string(e.what()));
  }
}

template <typename T>
T GetOr(const json& j, const char* key, T fallback, const std::string& ctx) {
  if (!j.contains(key)) return fallback;
  return Get<T>(j, key, ctx);
}

Eigen::Vector3d ParseVec3(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::kConfiguration, ctx + ": expected [x, y, z]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

SignalDescriptor ParseSignal(const json& j, const std::string& ctx) {
  RequireKnownKeys(j, {"kind", "seed", "tone_hz", "wav"}, ctx);
  SignalDescriptor s;
  s.kind = ParseSignalKind(GetOr<std::string>(j, "kind", "pink", ctx));
  s.seed = GetOr<uint64_t>(j, "seed", 1, ctx);
  s.tone_hz = GetOr<double>(j, "tone_hz", 1000.0, ctx);
  s.wav_path = GetOr<std::string>(j, "wav", "", ctx);
  return s;
}

SourceSpec ParseSource(const json& j, const std::string& ctx) {
  RequireKnownKeys(j, {"doa", "distance", "level_db", "signal"}, ctx);
  SourceSpec s;
  s.doa_deg = Get<double>(j, "doa", ctx);
  s.distance_m = GetOr<double>(j, "distance", 1.0, ctx);
  s.level_db = GetOr<double>(j, "level_db", 0.0, ctx);
  if (j.contains("signal")) s.signal = ParseSignal(j["signal"], ctx + ".signal");
  return s;
}

json SourceToJson(const SourceSpec& s) {
  json sig = {{"kind", SignalKindName(s.signal.kind)},
              {"seed", s.signal.seed},
              {"tone_hz", s.signal.tone_hz}};
  if (!s.signal.wav_path.empty()) sig["wav"] = s.signal.wav_path;
  return {{"doa", s.doa_deg},
          {"distance", s.distance_m},
          {"level_db", s.level_db},
          {"signal", sig}};
}

}  // namespace

void RequireKnownKeys(const json& j, std::initializer_list<const char*> allowed,
                      const std::string& context) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kConfiguration, context + ": expected an object");
  }
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) {
      throw Error(ErrorCode::kConfiguration,
                  context + ": unknown key '" + key + "'");
    }
  }
}

ParsedScene ParseSceneJson(const json& j) {
  const std::string ctx = "scene";
  RequireKnownKeys(j,
                   {"version", "fs", "L", "geometry", "bulk_delay", "ref_mic",
                    "secondary_delay", "secondary_ir", "desired",
                    "desired_active", "noises", "snr_db", "sensor_noise",
                    "baseline"},
                   ctx);
  const int version = Get<int>(j, "version", ctx);
  if (version != kSceneSchemaVersion) {
    throw Error(ErrorCode::kConfiguration,
                "unsupported scene version " + std::to_string(version));
  }
  ParsedScene out;
  AcousticScene& s = out.scene;
  s.fs = GetOr<double>(j, "fs", 8000.0, ctx);
  s.L = GetOr<int>(j, "L", 128, ctx);
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    RequireKnownKeys(g, {"preset", "positions", "error_mic"}, ctx + ".geometry");
    const auto preset = ParseGeometryPreset(
        GetOr<std::string>(g, "preset", "glasses6", ctx + ".geometry"));
    std::vector<Eigen::Vector3d> pos;
    if (g.contains("positions")) {
      for (const auto& p : g["positions"]) {
        pos.push_back(ParseVec3(p, ctx + ".geometry.positions"));
      }
    }
    s.geometry = BuildGeometry(preset, pos,
                               GetOr<int>(g, "error_mic", -1, ctx + ".geometry"));
  } else {
    s.geometry = BuildGeometry(GeometryPreset::kGlasses6);
  }
  s.bulk_delay = GetOr<double>(j, "bulk_delay", kDefaultBulkDelay, ctx);
  s.ref_mic = GetOr<int>(j, "ref_mic", -1, ctx);
  s.secondary_delay = GetOr<int>(j, "secondary_delay", 2, ctx);
  s.secondary_ir =
      GetOr<std::vector<double>>(j, "secondary_ir", std::vector<double>{}, ctx);
  if (j.contains("desired")) s.desired = ParseSource(j["desired"], ctx + ".desired");
  s.desired_active = GetOr<bool>(j, "desired_active", true, ctx);
  if (j.contains("noises")) {
    if (!j["noises"].is_array()) {
      throw Error(ErrorCode::kConfiguration, "scene.noises: expected array");
    }
    for (const auto& n : j["noises"]) {
      s.noises.push_back(ParseSource(n, ctx + ".noises[]"));
    }
  }
  if (j.contains("snr_db")) s.snr_db = Get<double>(j, "snr_db", ctx);
  if (j.contains("sensor_noise")) {
    const json& sn = j["sensor_noise"];
    const std::string c2 = ctx + ".sensor_noise";
    RequireKnownKeys(sn, {"ssnr_db", "affected", "reference_mic", "seed"}, c2);
    SensorNoiseSpec spec;
    spec.ssnr_db = Get<double>(sn, "ssnr_db", c2);
    spec.affected = GetOr<std::vector<int>>(sn, "affected", {}, c2);
    spec.reference_mic = Get<int>(sn, "reference_mic", c2);
    spec.seed = GetOr<uint64_t>(sn, "seed", 1000, c2);
    s.sensor_noise = spec;
  }
  if (j.contains("baseline")) out.baseline = j["baseline"];
  s.Validate();
  return out;
}

ParsedScene LoadSceneFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open scene file " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration, path + ": " + e.what());
  }
  return ParseSceneJson(j);
}

json SceneToJson(const AcousticScene& s) {
  json j;
  j["version"] = kSceneSchemaVersion;
  j["fs"] = s.fs;
  j["L"] = s.L;
  json g = {{"preset", s.geometry.preset},
            {"error_mic", s.geometry.error_mic_index}};
  if (s.geometry.preset == "custom") {
    json pos = json::array();
    for (const auto& p : s.geometry.mic_positions) pos.push_back({p.x(), p.y(), p.z()});
    g["positions"] = pos;
  }
  j["geometry"] = g;
  j["bulk_delay"] = s.bulk_delay;
  j["ref_mic"] = s.ref_mic;
  j["secondary_delay"] = s.secondary_delay;
  if (!s.secondary_ir.empty()) j["secondary_ir"] = s.secondary_ir;
  j["desired"] = SourceToJson(s.desired);
  j["desired_active"] = s.desired_active;
  j["noises"] = json::array();
  for (const auto& n : s.noises) j["noises"].push_back(SourceToJson(n));
  if (s.snr_db) j["snr_db"] = *s.snr_db;
  if (s.sensor_noise) {
    j["sensor_noise"] = {{"ssnr_db", s.sensor_noise->ssnr_db},
                         {"affected", s.sensor_noise->affected},
                         {"reference_mic", s.sensor_noise->reference_mic},
                         {"seed", s.sensor_noise->seed}};
  }
  return j;
}

}  // namespace sanc
