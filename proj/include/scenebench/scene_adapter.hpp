#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scenebench/scene_source.hpp"

namespace scenebench::adapter {

struct RepairEvent {
    enum class Kind { texture_repair, material_repair, shader_fallback };
    Kind kind;
    std::string model;
    std::string reason;
};

struct RepairReport {
    std::vector<RepairEvent> events;
};

// Makes every material total: textures absent from the manifest are dropped
// (base color retained or assigned), missing materials get the category's
// default color, missing pbr blocks get the flat-shading fallback
// {metallic 0, roughness 1}. Total by construction; never throws.
RepairReport repair_materials(SourceScene& scene, const AssetManifest& manifest,
                              const std::map<std::string, std::string>& categories);

struct FloorReport {
    bool synthesized = false;
    std::string floor_model;
    struct Snap {
        std::string model;
        double dz;
    };
    std::vector<Snap> snaps;
};

constexpr double kFloorCoverageThreshold = 0.8;
constexpr double kFloorThickness = 0.05;
constexpr double kSnapTolerance = 1e-4;

// Guarantees a floor: either an existing "floor"-category model covering at
// least `coverage` of the scene's XY rectangle, or a synthesized box whose
// top face sits at the scene's minimum z. Models whose AABB bottom lies below
// the floor top by more than `snap_tolerance` are translated up onto it.
// Throws InputError on a scene with zero models.
FloorReport ensure_floor(SourceScene& scene, const AssetManifest& manifest,
                         std::map<std::string, std::string>& categories,
                         double coverage = kFloorCoverageThreshold,
                         double thickness = kFloorThickness,
                         double snap_tolerance = kSnapTolerance);

enum class LightCondition { baseline, nominal, camera, dynamic };

std::string to_string(LightCondition c);
LightCondition condition_from_string(const std::string& s);
const std::vector<LightCondition>& all_conditions();

struct LightSpec {
    LightKind kind = LightKind::point;
    Vec3 position;                       // world frame (source z-up); unused for camera lights
    Vec3 direction{0.0, 0.0, -1.0};      // camera frame when attached to the camera
    double intensity = 1.0;
    std::array<double, 3> color{1.0, 1.0, 1.0};
    bool attached_to_camera = false;
};

struct ScheduleKeyframe {
    double trajectory_fraction = 0.0;
    std::vector<double> scales;  // one per light
};

struct LightingConfig {
    LightCondition condition = LightCondition::baseline;
    std::vector<LightSpec> lights;
    std::vector<ScheduleKeyframe> schedule;  // dynamic only
};

// baseline: source lights, or 3 stratified-jittered point lights when the
// scene has none; nominal: no lights; camera: one camera-attached directional
// light; dynamic: baseline lights plus a 4-keyframe intensity schedule.
// Deterministic in (scene, condition, seed).
LightingConfig make_lighting_config(const SourceScene& scene, const AssetManifest& manifest,
                                    LightCondition condition, std::uint64_t seed);

struct NavigationBlock {
    double agent_radius = 0.18;
    double agent_height = 1.5;
    Pose start_pose;  // source frame (z-up)
};

// Start pose maximizes clearance to object footprints and the floor boundary
// over a 0.1 m grid on the floor, ties broken by smallest (x, y); the agent
// faces the scene centroid. Throws InputError when no floor exists or no
// grid cell has clearance >= agent_radius.
NavigationBlock setup_navigation(const SourceScene& scene, const AssetManifest& manifest,
                                 const std::map<std::string, std::string>& categories);

}  // namespace scenebench::adapter
