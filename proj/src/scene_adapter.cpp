#include "scenebench/scene_adapter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "scenebench/errors.hpp"
#include "scenebench/rng.hpp"
#include "scenebench/tables.hpp"

namespace scenebench::adapter {

RepairReport repair_materials(SourceScene& scene, const AssetManifest& manifest,
                              const std::map<std::string, std::string>& categories) {
    RepairReport report;
    const auto& defaults = tables::default_colors();
    for (auto& model : scene.models) {
        auto category_it = categories.find(model.name);
        const std::string category =
            category_it == categories.end() ? "unknown" : category_it->second;
        auto default_color = [&] {
            auto it = defaults.colors.find(category);
            return it == defaults.colors.end() ? defaults.fallback : it->second;
        };

        if (!model.material) {
            Material material;
            material.base_color = default_color();
            model.material = material;
            report.events.push_back({RepairEvent::Kind::material_repair, model.name,
                                     "no material; assigned default color for category \"" +
                                         category + "\""});
        }
        Material& material = *model.material;

        if (material.texture_uri && !manifest.has_existing(*material.texture_uri)) {
            report.events.push_back({RepairEvent::Kind::texture_repair, model.name,
                                     "texture \"" + *material.texture_uri +
                                         "\" missing from the asset manifest; dropped"});
            material.texture_uri.reset();
            if (!material.base_color) {
                material.base_color = default_color();
            }
        }
        if (!material.base_color) {
            material.base_color = default_color();
            report.events.push_back({RepairEvent::Kind::material_repair, model.name,
                                     "no base color; assigned default for category \"" +
                                         category + "\""});
        }
        if (!material.pbr) {
            material.pbr = Pbr{0.0, 1.0};
            report.events.push_back({RepairEvent::Kind::shader_fallback, model.name,
                                     "no pbr block; flat-shading fallback"});
        }
    }
    return report;
}

namespace {

struct RectXY {
    double x0, y0, x1, y1;

    double area() const { return std::max(0.0, x1 - x0) * std::max(0.0, y1 - y0); }

    double intersection_area(const RectXY& o) const {
        double w = std::min(x1, o.x1) - std::max(x0, o.x0);
        double h = std::min(y1, o.y1) - std::max(y0, o.y0);
        return std::max(0.0, w) * std::max(0.0, h);
    }
};

RectXY footprint(const Aabb& box) { return {box.min.x, box.min.y, box.max.x, box.max.y}; }

std::string unique_model_name(const SourceScene& scene, const std::string& base) {
    std::set<std::string> taken;
    for (const auto& m : scene.models) {
        taken.insert(m.name);
    }
    if (!taken.count(base)) {
        return base;
    }
    for (int i = 0;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.count(candidate)) {
            return candidate;
        }
    }
}

// Index of the floor model: category "floor" with footprint covering at least
// `coverage` of the scene rectangle; among qualifiers, largest coverage then
// smallest name. Returns -1 when none qualifies.
int find_floor(const SourceScene& scene, const std::vector<Aabb>& aabbs,
               const std::map<std::string, std::string>& categories, double coverage) {
    RectXY scene_rect = footprint(aabbs.front());
    for (const auto& box : aabbs) {
        RectXY r = footprint(box);
        scene_rect.x0 = std::min(scene_rect.x0, r.x0);
        scene_rect.y0 = std::min(scene_rect.y0, r.y0);
        scene_rect.x1 = std::max(scene_rect.x1, r.x1);
        scene_rect.y1 = std::max(scene_rect.y1, r.y1);
    }
    const double scene_area = scene_rect.area();

    int best = -1;
    double best_cover = -1.0;
    for (std::size_t i = 0; i < scene.models.size(); ++i) {
        auto it = categories.find(scene.models[i].name);
        if (it == categories.end() || it->second != "floor") {
            continue;
        }
        double cover = scene_area <= 0.0
                           ? 1.0
                           : footprint(aabbs[i]).intersection_area(scene_rect) / scene_area;
        if (cover >= coverage &&
            (cover > best_cover ||
             (cover == best_cover && scene.models[i].name < scene.models[best].name))) {
            best = static_cast<int>(i);
            best_cover = cover;
        }
    }
    return best;
}

}  // namespace

FloorReport ensure_floor(SourceScene& scene, const AssetManifest& manifest,
                         std::map<std::string, std::string>& categories, double coverage,
                         double thickness, double snap_tolerance) {
    if (scene.models.empty()) {
        throw InputError("ensure_floor: scene \"" + scene.name +
                         "\" has no models, no extent to size a floor");
    }
    std::vector<Aabb> aabbs;
    aabbs.reserve(scene.models.size());
    for (const auto& model : scene.models) {
        aabbs.push_back(model_aabb(model, manifest));
    }

    FloorReport report;
    int floor_index = find_floor(scene, aabbs, categories, coverage);
    double floor_top;
    if (floor_index >= 0) {
        report.floor_model = scene.models[floor_index].name;
        floor_top = aabbs[floor_index].max.z;
    } else {
        double z_min = aabbs.front().min.z;
        Aabb bounds = aabbs.front();
        for (const auto& box : aabbs) {
            z_min = std::min(z_min, box.min.z);
            bounds = bounds.merged(box);
        }
        floor_top = z_min;

        SourceModel floor;
        floor.name = unique_model_name(scene, "floor");
        floor.raw_label = "floor";
        double sx = std::max(bounds.max.x - bounds.min.x, 0.1);
        double sy = std::max(bounds.max.y - bounds.min.y, 0.1);
        floor.geometry.kind = GeometryKind::box;
        floor.geometry.box_size = {sx, sy, thickness};
        floor.pose.position = {(bounds.min.x + bounds.max.x) / 2.0,
                               (bounds.min.y + bounds.max.y) / 2.0, z_min - thickness / 2.0};
        Material material;
        const auto& defaults = tables::default_colors();
        auto it = defaults.colors.find("floor");
        material.base_color = it == defaults.colors.end() ? defaults.fallback : it->second;
        material.pbr = Pbr{0.0, 1.0};
        floor.material = material;

        categories[floor.name] = "floor";
        report.synthesized = true;
        report.floor_model = floor.name;
        floor_index = static_cast<int>(scene.models.size());
        scene.models.push_back(std::move(floor));
        aabbs.push_back(model_aabb(scene.models.back(), manifest));
    }

    for (std::size_t i = 0; i < scene.models.size(); ++i) {
        if (static_cast<int>(i) == floor_index) {
            continue;
        }
        double bottom = aabbs[i].min.z;
        if (bottom < floor_top - snap_tolerance) {
            double dz = floor_top - bottom;
            scene.models[i].pose.position.z += dz;
            report.snaps.push_back({scene.models[i].name, dz});
        }
    }
    return report;
}

std::string to_string(LightCondition c) {
    switch (c) {
        case LightCondition::baseline: return "baseline";
        case LightCondition::nominal: return "nominal";
        case LightCondition::camera: return "camera";
        case LightCondition::dynamic: return "dynamic";
    }
    return "baseline";
}

LightCondition condition_from_string(const std::string& s) {
    if (s == "baseline") return LightCondition::baseline;
    if (s == "nominal") return LightCondition::nominal;
    if (s == "camera") return LightCondition::camera;
    if (s == "dynamic") return LightCondition::dynamic;
    throw InputError("unknown lighting condition \"" + s + "\"");
}

const std::vector<LightCondition>& all_conditions() {
    static const std::vector<LightCondition> conditions{
        LightCondition::baseline, LightCondition::nominal, LightCondition::camera,
        LightCondition::dynamic};
    return conditions;
}

namespace {

constexpr std::uint64_t kPlacementStream = 0x5ce9e5;
constexpr std::uint64_t kScheduleStream = 0xd15c0;

std::vector<LightSpec> baseline_lights(const SourceScene& scene, const AssetManifest& manifest,
                                       std::uint64_t seed) {
    std::vector<LightSpec> lights;
    if (!scene.lights.empty()) {
        for (const auto& source : scene.lights) {
            LightSpec spec;
            spec.kind = source.kind;
            spec.position = source.position;
            spec.direction = source.direction;
            spec.intensity = source.intensity;
            spec.color = source.color;
            lights.push_back(spec);
        }
        return lights;
    }
    // No native lights: place 3 jittered point lights, one per x-stratum of
    // the scene AABB, z in the upper half.
    Aabb bounds = scene_aabb(scene, manifest);
    SplitMix64 rng(mix_seed(seed, kPlacementStream));
    Vec3 ext = bounds.extent();
    for (int i = 0; i < 3; ++i) {
        LightSpec spec;
        spec.kind = LightKind::point;
        double cell = ext.x / 3.0;
        spec.position.x = bounds.min.x + (static_cast<double>(i) + rng.next_unit()) * cell;
        spec.position.y = bounds.min.y + rng.next_unit() * ext.y;
        spec.position.z = bounds.min.z + (0.5 + 0.5 * rng.next_unit()) * ext.z;
        spec.intensity = rng.next_in(0.5, 1.5);
        lights.push_back(spec);
    }
    return lights;
}

}  // namespace

LightingConfig make_lighting_config(const SourceScene& scene, const AssetManifest& manifest,
                                    LightCondition condition, std::uint64_t seed) {
    LightingConfig config;
    config.condition = condition;
    switch (condition) {
        case LightCondition::nominal:
            break;  // mesh-emitted light only
        case LightCondition::camera: {
            LightSpec spec;
            spec.kind = LightKind::directional;
            spec.attached_to_camera = true;
            spec.direction = {0.0, 0.0, -1.0};
            spec.intensity = 1.0;
            config.lights.push_back(spec);
            break;
        }
        case LightCondition::baseline:
            config.lights = baseline_lights(scene, manifest, seed);
            break;
        case LightCondition::dynamic: {
            config.lights = baseline_lights(scene, manifest, seed);
            SplitMix64 rng(mix_seed(seed, kScheduleStream));
            for (double fraction : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
                ScheduleKeyframe key;
                key.trajectory_fraction = fraction;
                for (std::size_t i = 0; i < config.lights.size(); ++i) {
                    key.scales.push_back(rng.next_in(0.2, 1.0));
                }
                config.schedule.push_back(std::move(key));
            }
            break;
        }
    }
    return config;
}

namespace {

double distance_to_rect(double px, double py, const RectXY& r) {
    double dx = std::max({r.x0 - px, 0.0, px - r.x1});
    double dy = std::max({r.y0 - py, 0.0, py - r.y1});
    return std::hypot(dx, dy);
}

double distance_to_boundary(double px, double py, const RectXY& r) {
    return std::min({px - r.x0, r.x1 - px, py - r.y0, r.y1 - py});
}

}  // namespace

NavigationBlock setup_navigation(const SourceScene& scene, const AssetManifest& manifest,
                                 const std::map<std::string, std::string>& categories) {
    std::vector<Aabb> aabbs;
    aabbs.reserve(scene.models.size());
    for (const auto& model : scene.models) {
        aabbs.push_back(model_aabb(model, manifest));
    }
    if (scene.models.empty()) {
        throw InputError("setup_navigation: empty scene");
    }
    // ensure_floor already guaranteed a floor; accept the best-covering
    // floor-category model regardless of the coverage threshold used there.
    int floor_index = find_floor(scene, aabbs, categories, 0.0);
    if (floor_index < 0) {
        throw InputError("setup_navigation: no floor in scene \"" + scene.name +
                         "\" (run ensure_floor first)");
    }

    NavigationBlock nav;
    const RectXY floor_rect = footprint(aabbs[floor_index]);
    const double floor_top = aabbs[floor_index].max.z;

    std::vector<RectXY> obstacles;
    Vec3 centroid_sum{0, 0, 0};
    int centroid_n = 0;
    for (std::size_t i = 0; i < scene.models.size(); ++i) {
        if (static_cast<int>(i) == floor_index) {
            continue;
        }
        obstacles.push_back(footprint(aabbs[i]));
        centroid_sum = centroid_sum + aabbs[i].center();
        ++centroid_n;
    }

    constexpr double kGridStep = 0.1;
    double best_clearance = -std::numeric_limits<double>::infinity();
    double best_x = floor_rect.x0, best_y = floor_rect.y0;
    for (double x = floor_rect.x0; x <= floor_rect.x1 + 1e-9; x += kGridStep) {
        for (double y = floor_rect.y0; y <= floor_rect.y1 + 1e-9; y += kGridStep) {
            double clearance = distance_to_boundary(x, y, floor_rect);
            for (const auto& rect : obstacles) {
                clearance = std::min(clearance, distance_to_rect(x, y, rect));
                if (clearance <= best_clearance) {
                    break;
                }
            }
            if (clearance > best_clearance) {
                best_clearance = clearance;
                best_x = x;
                best_y = y;
            }
        }
    }
    if (best_clearance < nav.agent_radius) {
        throw InputError("setup_navigation: scene \"" + scene.name +
                         "\" is unnavigable, best clearance " + std::to_string(best_clearance) +
                         " m < agent radius " + std::to_string(nav.agent_radius) + " m");
    }

    nav.start_pose.position = {best_x, best_y, floor_top};
    double yaw = 0.0;
    if (centroid_n > 0) {
        double cx = centroid_sum.x / centroid_n;
        double cy = centroid_sum.y / centroid_n;
        if (std::abs(cx - best_x) > 1e-12 || std::abs(cy - best_y) > 1e-12) {
            yaw = std::atan2(cy - best_y, cx - best_x);
        }
    }
    nav.start_pose.orientation = quat_from_yaw(yaw);
    return nav;
}

}  // namespace scenebench::adapter
