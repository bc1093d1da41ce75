#include "scenebench/habitat_emit.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "scenebench/errors.hpp"
#include "scenebench/schema.hpp"
#include "scenebench/tables.hpp"

namespace scenebench::adapter {

namespace {

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string sanitize(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '.' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out;
}

std::string geometry_signature(const Geometry& g) {
    switch (g.kind) {
        case GeometryKind::mesh:
            return sanitize(g.mesh_uri);
        case GeometryKind::box:
            return "box_" + format_number(g.box_size.x) + "x" + format_number(g.box_size.y) + "x" +
                   format_number(g.box_size.z);
        case GeometryKind::cylinder:
            return "cylinder_r" + format_number(g.cyl_radius) + "_l" +
                   format_number(g.cyl_length);
    }
    return "unknown";
}

std::string render_asset_for(const Geometry& g) {
    switch (g.kind) {
        case GeometryKind::mesh:
            return g.mesh_uri;
        case GeometryKind::box:
            return "primitive://box?x=" + format_number(g.box_size.x) +
                   "&y=" + format_number(g.box_size.y) + "&z=" + format_number(g.box_size.z);
        case GeometryKind::cylinder:
            return "primitive://cylinder?r=" + format_number(g.cyl_radius) +
                   "&l=" + format_number(g.cyl_length);
    }
    return "";
}

Json vec3_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }
Json quat_json(const Quat& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Json lighting_json(const LightingConfig& config) {
    Json lights = Json::array();
    for (const auto& light : config.lights) {
        Json entry;
        entry["kind"] = light.kind == LightKind::point ? "point" : "directional";
        entry["intensity"] = light.intensity;
        entry["color"] = Json::array({light.color[0], light.color[1], light.color[2]});
        entry["attached_to"] = light.attached_to_camera ? "camera" : "world";
        if (light.attached_to_camera) {
            entry["direction"] = vec3_json(light.direction);  // camera frame
        } else if (light.kind == LightKind::directional) {
            entry["direction"] = vec3_json(zup_to_yup(light.direction));
        } else {
            entry["position"] = vec3_json(zup_to_yup(light.position));
        }
        lights.push_back(entry);
    }
    Json j;
    j["condition"] = to_string(config.condition);
    j["lights"] = lights;
    if (!config.schedule.empty()) {
        Json schedule = Json::array();
        for (const auto& key : config.schedule) {
            schedule.push_back(
                {{"trajectory_fraction", key.trajectory_fraction}, {"scales", key.scales}});
        }
        j["schedule"] = schedule;
    }
    return j;
}

}  // namespace

HabitatDataset build_dataset(const SourceScene& scene,
                             const std::map<std::string, std::string>& categories,
                             const std::map<LightCondition, LightingConfig>& lighting,
                             const NavigationBlock& navigation) {
    HabitatDataset dataset;
    dataset.scene = scene.name;
    dataset.lighting = lighting;
    dataset.navigation = navigation;

    std::vector<const SourceModel*> ordered;
    ordered.reserve(scene.models.size());
    for (const auto& model : scene.models) {
        ordered.push_back(&model);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const SourceModel* a, const SourceModel* b) { return a->name < b->name; });

    std::map<std::string, int> category_ids;
    for (const SourceModel* model : ordered) {
        auto it = categories.find(model->name);
        const std::string category = it == categories.end() ? "unknown" : it->second;
        if (!category_ids.count(category)) {
            int id = static_cast<int>(dataset.lexicon.size());
            category_ids[category] = id;
            dataset.lexicon.emplace_back(category, id);
        }
        const std::string key = category + "__" + geometry_signature(model->geometry);
        if (!dataset.object_configs.count(key)) {
            dataset.object_configs[key] = {render_asset_for(model->geometry), category,
                                           category_ids[category]};
        }
        Pose converted = convert_frame_zup_to_yup(model->pose);
        dataset.placements.push_back({key, converted.position, converted.orientation});
    }
    return dataset;
}

void check_dataset(const HabitatDataset& dataset) {
    for (const auto& placement : dataset.placements) {
        if (!dataset.object_configs.count(placement.template_key)) {
            throw std::logic_error("dataset invariant: placement references template \"" +
                                   placement.template_key + "\" with no object config");
        }
    }
    std::set<int> ids;
    for (const auto& [category, id] : dataset.lexicon) {
        ids.insert(id);
    }
    const int n = static_cast<int>(dataset.lexicon.size());
    if (static_cast<int>(ids.size()) != n || (n > 0 && (*ids.begin() != 0 || *ids.rbegin() != n - 1))) {
        throw std::logic_error("dataset invariant: semantic ids are not dense 0..N-1");
    }
    if (dataset.lighting.size() != 4) {
        throw std::logic_error("dataset invariant: expected 4 lighting conditions, have " +
                               std::to_string(dataset.lighting.size()));
    }
}

std::vector<std::filesystem::path> emit_dataset(const HabitatDataset& dataset,
                                                const std::filesystem::path& out_dir) {
    check_dataset(dataset);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    std::vector<std::filesystem::path> files;
    auto emit = [&](const std::string& name, const Json& j) {
        std::filesystem::path path = out_dir / name;
        write_json_file(path, j);
        files.push_back(path);
        return name;
    };

    Json instance;
    instance["scene"] = dataset.scene;
    instance["up_axis"] = "y";
    Json placements = Json::array();
    for (const auto& p : dataset.placements) {
        placements.push_back({{"template", p.template_key},
                              {"translation", vec3_json(p.translation)},
                              {"rotation", quat_json(p.rotation)}});
    }
    instance["placements"] = placements;
    const std::string instance_name = emit(dataset.scene + ".scene_instance.json", instance);

    std::vector<std::string> config_names;
    for (const auto& [key, config] : dataset.object_configs) {
        Json j;
        j["render_asset"] = config.render_asset;
        j["semantic_category"] = config.semantic_category;
        j["semantic_id"] = config.semantic_id;
        config_names.push_back(emit(key + ".object_config.json", j));
    }

    Json lexicon;
    lexicon["scene"] = dataset.scene;
    Json cats;
    for (const auto& [category, id] : dataset.lexicon) {
        cats[category] = id;
    }
    lexicon["categories"] = cats;
    const std::string lexicon_name = emit(dataset.scene + ".semantic_lexicon.json", lexicon);

    Json lighting_names;
    for (const auto& [condition, config] : dataset.lighting) {
        const std::string name = dataset.scene + ".lighting." + to_string(condition) + ".json";
        emit(name, lighting_json(config));
        lighting_names[to_string(condition)] = name;
    }

    Pose start = convert_frame_zup_to_yup(dataset.navigation.start_pose);
    Json nav;
    nav["agent_radius"] = dataset.navigation.agent_radius;
    nav["agent_height"] = dataset.navigation.agent_height;
    nav["start_pose"] = {{"translation", vec3_json(start.position)},
                         {"rotation", quat_json(start.orientation)}};
    const std::string nav_name = emit(dataset.scene + ".navigation.json", nav);

    Json index;
    index["scene"] = dataset.scene;
    index["scene_instance"] = instance_name;
    index["semantic_lexicon"] = lexicon_name;
    index["navigation"] = nav_name;
    index["lighting"] = lighting_names;
    index["object_configs"] = config_names;  // map order: already sorted
    emit("scene_dataset_config.json", index);

    return files;
}

namespace {

void check_lighting_contract(const Json& j, const std::string& file,
                             std::vector<std::string>& out) {
    const std::string condition = j.at("condition").get<std::string>();
    const Json& lights = j.at("lights");
    if (condition == "nominal") {
        if (!lights.empty()) {
            out.push_back(file + ": nominal config must emit no lights");
        }
    } else if (condition == "camera") {
        if (lights.size() != 1 || lights[0].at("kind") != "directional" ||
            lights[0].at("attached_to") != "camera") {
            out.push_back(file +
                          ": camera config must hold exactly one camera-attached directional "
                          "light");
        }
    } else if (condition == "dynamic") {
        if (!j.contains("schedule") || j.at("schedule").empty()) {
            out.push_back(file + ": dynamic config needs a non-empty schedule");
            return;
        }
        const Json& schedule = j.at("schedule");
        double prev = -1.0;
        for (const auto& key : schedule) {
            double f = key.at("trajectory_fraction").get<double>();
            if (f <= prev) {
                out.push_back(file + ": schedule fractions must be strictly increasing");
            }
            prev = f;
        }
        if (schedule.front().at("trajectory_fraction").get<double>() != 0.0 ||
            schedule.back().at("trajectory_fraction").get<double>() != 1.0) {
            out.push_back(file + ": schedule must start at 0.0 and end at 1.0");
        }
        for (const auto& key : schedule) {
            if (key.at("scales").size() != lights.size()) {
                out.push_back(file + ": keyframe scale count must match light count");
            }
        }
    }
    if (condition != "camera") {
        for (const auto& light : lights) {
            if (light.at("attached_to") == "camera") {
                out.push_back(file + ": only the camera condition may attach lights to the camera");
            }
        }
    }
}

}  // namespace

std::vector<std::string> validate_dataset_dir(const std::filesystem::path& dir) {
    std::vector<std::string> out;
    const Json& schemas = tables::dataset_schemas();

    Json index;
    try {
        index = read_json_file(dir / "scene_dataset_config.json");
    } catch (const Error& e) {
        out.push_back(e.what());
        return out;
    }
    for (const auto& v : schema::violations(schemas.at("scene_dataset_config"), index)) {
        out.push_back("scene_dataset_config.json: " + v);
    }
    if (!out.empty()) {
        return out;
    }

    auto load_checked = [&](const std::string& name, const char* schema_key) -> Json {
        Json j;
        try {
            j = read_json_file(dir / name);
        } catch (const Error& e) {
            out.push_back(e.what());
            return Json();
        }
        for (const auto& v : schema::violations(schemas.at(schema_key), j)) {
            out.push_back(name + ": " + v);
        }
        return j;
    };

    Json instance = load_checked(index.at("scene_instance"), "scene_instance");
    Json lexicon = load_checked(index.at("semantic_lexicon"), "semantic_lexicon");
    load_checked(index.at("navigation"), "navigation");

    if (index.at("lighting").size() != 4) {
        out.push_back("scene_dataset_config.json: expected exactly 4 lighting conditions");
    }
    for (const auto& [condition, name] : index.at("lighting").items()) {
        Json config = load_checked(name.get<std::string>(), "lighting");
        if (config.is_object() && config.contains("condition")) {
            if (config.at("condition") != condition) {
                out.push_back(name.get<std::string>() + ": condition mismatch with the index");
            }
            check_lighting_contract(config, name.get<std::string>(), out);
        }
    }

    std::map<std::string, Json> object_configs;
    for (const auto& name : index.at("object_configs")) {
        Json config = load_checked(name.get<std::string>(), "object_config");
        std::string key = name.get<std::string>();
        const std::string suffix = ".object_config.json";
        if (key.size() > suffix.size()) {
            key = key.substr(0, key.size() - suffix.size());
        }
        object_configs[key] = config;
    }

    if (instance.is_object() && instance.contains("placements")) {
        for (const auto& placement : instance.at("placements")) {
            const std::string key = placement.at("template").get<std::string>();
            if (!object_configs.count(key)) {
                out.push_back("placement references template \"" + key +
                              "\" with no object config");
            }
        }
    }

    if (lexicon.is_object() && lexicon.contains("categories")) {
        std::set<int> ids;
        std::size_t n = lexicon.at("categories").size();
        for (const auto& [category, id] : lexicon.at("categories").items()) {
            ids.insert(id.get<int>());
        }
        if (ids.size() != n || (n > 0 && (*ids.begin() != 0 ||
                                          *ids.rbegin() != static_cast<int>(n) - 1))) {
            out.push_back("semantic lexicon ids are not a permutation of 0..N-1");
        }
        for (const auto& [key, config] : object_configs) {
            if (!config.is_object() || !config.contains("semantic_category")) {
                continue;
            }
            const std::string category = config.at("semantic_category").get<std::string>();
            if (!lexicon.at("categories").contains(category)) {
                out.push_back("object config \"" + key + "\" category \"" + category +
                              "\" missing from the lexicon");
            } else if (lexicon.at("categories").at(category) != config.at("semantic_id")) {
                out.push_back("object config \"" + key + "\" semantic_id disagrees with lexicon");
            }
        }
    }
    return out;
}

}  // namespace scenebench::adapter
