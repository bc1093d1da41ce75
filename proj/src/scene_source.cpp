#include "scenebench/scene_source.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "scenebench/errors.hpp"
#include "scenebench/xml.hpp"

namespace scenebench::adapter {

AssetManifest AssetManifest::from_json(const Json& j) {
    AssetManifest manifest;
    for (const auto& entry : j.at("assets")) {
        AssetInfo info;
        info.uri = entry.at("uri").get<std::string>();
        info.exists = entry.value("exists", true);
        if (entry.contains("aabb")) {
            const Json& box = entry.at("aabb");
            auto lo = box.at("min").get<std::array<double, 3>>();
            auto hi = box.at("max").get<std::array<double, 3>>();
            info.aabb = Aabb{{lo[0], lo[1], lo[2]}, {hi[0], hi[1], hi[2]}};
        }
        manifest.assets[info.uri] = std::move(info);
    }
    return manifest;
}

AssetManifest AssetManifest::load(const std::filesystem::path& path) {
    return from_json(read_json_file(path));
}

const AssetInfo* AssetManifest::find(const std::string& uri) const {
    auto it = assets.find(uri);
    return it == assets.end() ? nullptr : &it->second;
}

bool AssetManifest::has_existing(const std::string& uri) const {
    const AssetInfo* info = find(uri);
    return info != nullptr && info->exists;
}

namespace {

std::vector<double> parse_numbers(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> out;
    double v;
    while (in >> v) {
        out.push_back(v);
    }
    // reject trailing garbage
    std::string rest;
    if (in.clear(), in >> rest) {
        return {};
    }
    return out;
}

Pose parse_pose(const xml::Element& pose_elem, const std::string& owner) {
    auto nums = parse_numbers(pose_elem.text);
    if (nums.size() != 6) {
        throw ParseError("model \"" + owner + "\": <pose> must hold 6 numbers, got " +
                         std::to_string(nums.size()) + " (line " +
                         std::to_string(pose_elem.line) + ")");
    }
    Pose pose;
    pose.position = {nums[0], nums[1], nums[2]};
    pose.orientation = quat_from_rpy(nums[3], nums[4], nums[5]);
    return pose;
}

void warn_unknown(std::vector<std::string>& warnings, const std::string& context,
                  const xml::Element& elem) {
    warnings.push_back("ignoring unknown element <" + elem.name + "> in " + context + " (line " +
                       std::to_string(elem.line) + ")");
}

std::optional<std::array<double, 4>> parse_color4(const xml::Element& elem,
                                                  const std::string& owner) {
    auto nums = parse_numbers(elem.text);
    if (nums.size() == 3) {
        nums.push_back(1.0);
    }
    if (nums.size() != 4) {
        throw ParseError("model \"" + owner + "\": <" + elem.name +
                         "> must hold 3 or 4 numbers (line " + std::to_string(elem.line) + ")");
    }
    for (double v : nums) {
        if (v < 0.0 || v > 1.0) {
            throw ParseError("model \"" + owner + "\": <" + elem.name +
                             "> channel out of [0,1] (line " + std::to_string(elem.line) + ")");
        }
    }
    return std::array<double, 4>{nums[0], nums[1], nums[2], nums[3]};
}

Material parse_material(const xml::Element& mat_elem, const std::string& owner,
                        std::vector<std::string>& warnings) {
    Material material;
    for (const auto& child : mat_elem.children) {
        if (child.name == "diffuse") {
            material.base_color = parse_color4(child, owner);
        } else if (child.name == "script") {
            if (const xml::Element* uri = child.child("uri")) {
                material.texture_uri = uri->text;
            }
        } else if (child.name == "pbr") {
            Pbr pbr;
            bool any = false;
            if (const xml::Element* metal = child.child("metal")) {
                if (const xml::Element* m = metal->child("metalness")) {
                    auto nums = parse_numbers(m->text);
                    if (nums.size() != 1) {
                        throw ParseError("model \"" + owner + "\": bad <metalness> (line " +
                                         std::to_string(m->line) + ")");
                    }
                    pbr.metallic = nums[0];
                    any = true;
                }
                if (const xml::Element* r = metal->child("roughness")) {
                    auto nums = parse_numbers(r->text);
                    if (nums.size() != 1) {
                        throw ParseError("model \"" + owner + "\": bad <roughness> (line " +
                                         std::to_string(r->line) + ")");
                    }
                    pbr.roughness = nums[0];
                    any = true;
                }
            }
            if (any) {
                material.pbr = pbr;
            }
        } else {
            warn_unknown(warnings, "<material> of model \"" + owner + "\"", child);
        }
    }
    return material;
}

Geometry parse_geometry(const xml::Element& geom_elem, const std::string& owner,
                        std::vector<std::string>& warnings) {
    Geometry geometry;
    bool found = false;
    for (const auto& child : geom_elem.children) {
        if (child.name == "mesh") {
            geometry.kind = GeometryKind::mesh;
            const xml::Element* uri = child.child("uri");
            if (uri == nullptr || uri->text.empty()) {
                throw ParseError("model \"" + owner + "\": <mesh> lacks a <uri> (line " +
                                 std::to_string(child.line) + ")");
            }
            geometry.mesh_uri = uri->text;
            if (const xml::Element* scale = child.child("scale")) {
                auto nums = parse_numbers(scale->text);
                if (nums.size() != 3) {
                    throw ParseError("model \"" + owner + "\": <scale> must hold 3 numbers (line " +
                                     std::to_string(scale->line) + ")");
                }
                geometry.mesh_scale = {nums[0], nums[1], nums[2]};
            }
            if (geometry.mesh_scale.x <= 0 || geometry.mesh_scale.y <= 0 ||
                geometry.mesh_scale.z <= 0) {
                throw ParseError("model \"" + owner + "\": mesh scale components must be > 0");
            }
            found = true;
        } else if (child.name == "box") {
            geometry.kind = GeometryKind::box;
            const xml::Element* size = child.child("size");
            if (size == nullptr) {
                throw ParseError("model \"" + owner + "\": <box> lacks a <size> (line " +
                                 std::to_string(child.line) + ")");
            }
            auto nums = parse_numbers(size->text);
            if (nums.size() != 3) {
                throw ParseError("model \"" + owner + "\": <size> must hold 3 numbers (line " +
                                 std::to_string(size->line) + ")");
            }
            geometry.box_size = {nums[0], nums[1], nums[2]};
            if (nums[0] <= 0 || nums[1] <= 0 || nums[2] <= 0) {
                throw ParseError("model \"" + owner + "\": box dimensions must be > 0");
            }
            found = true;
        } else if (child.name == "cylinder") {
            geometry.kind = GeometryKind::cylinder;
            const xml::Element* radius = child.child("radius");
            const xml::Element* length = child.child("length");
            if (radius == nullptr || length == nullptr) {
                throw ParseError("model \"" + owner +
                                 "\": <cylinder> needs <radius> and <length> (line " +
                                 std::to_string(child.line) + ")");
            }
            auto r = parse_numbers(radius->text);
            auto l = parse_numbers(length->text);
            if (r.size() != 1 || l.size() != 1) {
                throw ParseError("model \"" + owner + "\": bad cylinder dimensions");
            }
            geometry.cyl_radius = r[0];
            geometry.cyl_length = l[0];
            if (r[0] <= 0 || l[0] <= 0) {
                throw ParseError("model \"" + owner + "\": cylinder dimensions must be > 0");
            }
            found = true;
        } else {
            warn_unknown(warnings, "<geometry> of model \"" + owner + "\"", child);
        }
        if (found) {
            break;
        }
    }
    if (!found) {
        throw ParseError("model \"" + owner + "\": <geometry> holds no mesh, box, or cylinder");
    }
    return geometry;
}

SourceModel parse_model(const xml::Element& model_elem, const AssetManifest& manifest,
                        std::vector<std::string>& warnings) {
    SourceModel model;
    model.name = model_elem.attribute("name");
    if (model.name.empty()) {
        throw ParseError("model without a name attribute (line " +
                         std::to_string(model_elem.line) + ")");
    }
    model.raw_label = model.name;

    const xml::Element* visual = nullptr;
    for (const auto& child : model_elem.children) {
        if (child.name == "pose") {
            model.pose = parse_pose(child, model.name);
        } else if (child.name == "link") {
            for (const auto& link_child : child.children) {
                if (link_child.name == "visual") {
                    if (visual == nullptr) {
                        visual = &link_child;
                    } else {
                        warnings.push_back("model \"" + model.name +
                                           "\": extra <visual> ignored (line " +
                                           std::to_string(link_child.line) + ")");
                    }
                } else {
                    warn_unknown(warnings, "<link> of model \"" + model.name + "\"", link_child);
                }
            }
        } else if (child.name == "static") {
            // recognized but irrelevant to conversion
        } else {
            warn_unknown(warnings, "model \"" + model.name + "\"", child);
        }
    }
    if (visual == nullptr) {
        throw ParseError("model \"" + model.name + "\" has no <link>/<visual>");
    }

    const xml::Element* geometry = visual->child("geometry");
    if (geometry == nullptr) {
        throw ParseError("model \"" + model.name + "\": <visual> lacks <geometry>");
    }
    model.geometry = parse_geometry(*geometry, model.name, warnings);
    if (const xml::Element* material = visual->child("material")) {
        model.material = parse_material(*material, model.name, warnings);
    }
    for (const auto& child : visual->children) {
        if (child.name != "geometry" && child.name != "material") {
            warn_unknown(warnings, "<visual> of model \"" + model.name + "\"", child);
        }
    }

    if (model.geometry.kind == GeometryKind::mesh &&
        manifest.find(model.geometry.mesh_uri) == nullptr) {
        warnings.push_back("model \"" + model.name + "\": mesh uri \"" + model.geometry.mesh_uri +
                           "\" is not in the asset manifest");
    }
    return model;
}

SourceLight parse_light(const xml::Element& light_elem, std::vector<std::string>& warnings,
                        bool& supported) {
    SourceLight light;
    light.name = light_elem.attribute("name", "light");
    const std::string type = light_elem.attribute("type", "point");
    if (type == "point") {
        light.kind = LightKind::point;
    } else if (type == "directional") {
        light.kind = LightKind::directional;
    } else {
        warnings.push_back("light \"" + light.name + "\": unsupported type \"" + type +
                           "\" ignored (line " + std::to_string(light_elem.line) + ")");
        supported = false;
        return light;
    }
    supported = true;
    for (const auto& child : light_elem.children) {
        if (child.name == "pose") {
            Pose pose = parse_pose(child, light.name);
            light.position = pose.position;
        } else if (child.name == "direction") {
            auto nums = parse_numbers(child.text);
            if (nums.size() != 3) {
                throw ParseError("light \"" + light.name +
                                 "\": <direction> must hold 3 numbers (line " +
                                 std::to_string(child.line) + ")");
            }
            light.direction = {nums[0], nums[1], nums[2]};
        } else if (child.name == "diffuse") {
            auto rgba = parse_color4(child, light.name);
            light.color = {(*rgba)[0], (*rgba)[1], (*rgba)[2]};
        } else if (child.name == "attenuation") {
            if (const xml::Element* constant = child.child("constant")) {
                auto nums = parse_numbers(constant->text);
                if (nums.size() != 1) {
                    throw ParseError("light \"" + light.name + "\": bad <constant> (line " +
                                     std::to_string(constant->line) + ")");
                }
                light.intensity = 1.0 / std::max(nums[0], 1e-3);
            }
        } else {
            warn_unknown(warnings, "light \"" + light.name + "\"", child);
        }
    }
    return light;
}

}  // namespace

SceneParseResult parse_scene_source(const std::string& xml_text, const AssetManifest& manifest) {
    xml::Element root = xml::parse(xml_text);

    const xml::Element* world = nullptr;
    if (root.name == "world") {
        world = &root;
    } else if (root.name == "sdf") {
        world = root.child("world");
    }
    if (world == nullptr) {
        throw ParseError("document has no <world> element (root is <" + root.name + ">)");
    }

    SceneParseResult result;
    result.scene.name = world->attribute("name", "scene");

    std::set<std::string> seen_names;
    for (const auto& child : world->children) {
        if (child.name == "model") {
            SourceModel model = parse_model(child, manifest, result.warnings);
            if (!seen_names.insert(model.name).second) {
                throw ParseError("duplicate model name \"" + model.name + "\" (line " +
                                 std::to_string(child.line) + ")");
            }
            result.scene.models.push_back(std::move(model));
        } else if (child.name == "light") {
            bool supported = false;
            SourceLight light = parse_light(child, result.warnings, supported);
            if (supported) {
                result.scene.lights.push_back(std::move(light));
            }
        } else {
            warn_unknown(result.warnings, "<world>", child);
        }
    }
    return result;
}

Aabb model_aabb(const SourceModel& model, const AssetManifest& manifest) {
    Vec3 lo, hi;
    switch (model.geometry.kind) {
        case GeometryKind::box: {
            Vec3 half = model.geometry.box_size * 0.5;
            lo = {-half.x, -half.y, -half.z};
            hi = half;
            break;
        }
        case GeometryKind::cylinder: {
            double r = model.geometry.cyl_radius;
            double h = model.geometry.cyl_length / 2.0;
            lo = {-r, -r, -h};
            hi = {r, r, h};
            break;
        }
        case GeometryKind::mesh: {
            const AssetInfo* info = manifest.find(model.geometry.mesh_uri);
            if (info == nullptr || !info->aabb) {
                throw InputError("model \"" + model.name + "\": no manifest AABB for mesh \"" +
                                 model.geometry.mesh_uri + "\"");
            }
            const Vec3& s = model.geometry.mesh_scale;
            lo = {info->aabb->min.x * s.x, info->aabb->min.y * s.y, info->aabb->min.z * s.z};
            hi = {info->aabb->max.x * s.x, info->aabb->max.y * s.y, info->aabb->max.z * s.z};
            break;
        }
    }
    return transform_aabb(lo, hi, model.pose);
}

Aabb scene_aabb(const SourceScene& scene, const AssetManifest& manifest) {
    if (scene.models.empty()) {
        throw InputError("scene \"" + scene.name + "\" has no models");
    }
    Aabb out = model_aabb(scene.models.front(), manifest);
    for (std::size_t i = 1; i < scene.models.size(); ++i) {
        out = out.merged(model_aabb(scene.models[i], manifest));
    }
    return out;
}

}  // namespace scenebench::adapter
