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

#ifndef SANC_SCENE_SCENE_JSON_H_
#define SANC_SCENE_SCENE_JSON_H_

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "sanc/scene/scene.h"

namespace sanc {

constexpr int kSceneSchemaVersion = 1;

struct ParsedScene {
  AcousticScene scene;
  // Raw "baseline" object, interpreted by the baselines module.
  nlohmann::json baseline;
};

// Throws kConfiguration on unknown keys, wrong types or bad versions.
ParsedScene ParseSceneJson(const nlohmann::json& j);
ParsedScene LoadSceneFile(const std::string& path);
nlohmann::json SceneToJson(const AcousticScene& scene);

void RequireKnownKeys(const nlohmann::json& j,
                      std::initializer_list<const char*> allowed,
                      const std::string& context);

}  // namespace sanc

#endif  // SANC_SCENE_SCENE_JSON_H_
