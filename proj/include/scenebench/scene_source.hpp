#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scenebench/geometry.hpp"
#include "scenebench/json_io.hpp"

namespace scenebench::adapter {

// Sidecar manifest describing the assets a scene may reference: existence for
// textures, existence plus a local-frame AABB for render meshes. Keeps mesh
// decoding out of the converter.
struct AssetInfo {
    std::string uri;
    bool exists = true;
    std::optional<Aabb> aabb;  // local frame, unscaled
};

struct AssetManifest {
    std::map<std::string, AssetInfo> assets;

    static AssetManifest from_json(const Json& j);
    static AssetManifest load(const std::filesystem::path& path);

    const AssetInfo* find(const std::string& uri) const;
    bool has_existing(const std::string& uri) const;
};

enum class GeometryKind { mesh, box, cylinder };

struct Geometry {
    GeometryKind kind = GeometryKind::box;
    // mesh
    std::string mesh_uri;
    Vec3 mesh_scale{1.0, 1.0, 1.0};
    // box
    Vec3 box_size{1.0, 1.0, 1.0};
    // cylinder (axis along local z)
    double cyl_radius = 0.0;
    double cyl_length = 0.0;
};

struct Pbr {
    double metallic = 0.0;
    double roughness = 1.0;
};

struct Material {
    std::optional<std::array<double, 4>> base_color;  // RGBA in [0,1]
    std::optional<std::string> texture_uri;
    std::optional<Pbr> pbr;
};

enum class LightKind { point, directional };

struct SourceLight {
    std::string name;
    LightKind kind = LightKind::point;
    Vec3 position;
    Vec3 direction{0.0, 0.0, -1.0};
    std::array<double, 3> color{1.0, 1.0, 1.0};
    double intensity = 1.0;
};

struct SourceModel {
    std::string name;
    Pose pose;
    Geometry geometry;
    std::optional<Material> material;
    std::string raw_label;
};

struct SourceScene {
    std::string name;
    std::vector<SourceModel> models;
    std::vector<SourceLight> lights;
};

struct SceneParseResult {
    SourceScene scene;
    std::vector<std::string> warnings;
};

// Parses the recognized SDF subset: <world>/<model>/<link>/<visual> with
// mesh|box|cylinder geometry, 6-number <pose>, <material> diffuse plus an
// optional texture script, and point|directional <light> elements. Unknown
// elements produce warnings, never errors.
SceneParseResult parse_scene_source(const std::string& xml_text, const AssetManifest& manifest);

// World-frame AABB of one model; mesh bounds come from the manifest.
// Throws InputError when a mesh has no manifest AABB.
Aabb model_aabb(const SourceModel& model, const AssetManifest& manifest);

// Union over all models. Throws InputError on an empty scene.
Aabb scene_aabb(const SourceScene& scene, const AssetManifest& manifest);

}  // namespace scenebench::adapter
