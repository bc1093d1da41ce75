#include "scenebench/geometry.hpp"

#include <string>

#include "scenebench/errors.hpp"

namespace scenebench {

Quat quat_from_rpy(double roll, double pitch, double yaw) {
    double cr = std::cos(roll / 2), sr = std::sin(roll / 2);
    double cp = std::cos(pitch / 2), sp = std::sin(pitch / 2);
    double cy = std::cos(yaw / 2), sy = std::sin(yaw / 2);
    return {cr * cp * cy + sr * sp * sy,
            sr * cp * cy - cr * sp * sy,
            cr * sp * cy + sr * cp * sy,
            cr * cp * sy - sr * sp * cy};
}

Quat quat_from_yaw(double yaw) { return {std::cos(yaw / 2), 0.0, 0.0, std::sin(yaw / 2)}; }

Aabb transform_aabb(const Vec3& lo, const Vec3& hi, const Pose& pose) {
    Aabb out;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        Vec3 corner{(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z};
        Vec3 world = pose.orientation.rotate(corner) + pose.position;
        if (first) {
            out.min = out.max = world;
            first = false;
        } else {
            out.min = min_of(out.min, world);
            out.max = max_of(out.max, world);
        }
    }
    return out;
}

namespace {

constexpr double kUnitTolerance = 1e-6;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_unit(const Quat& q, const char* op) {
    if (std::abs(q.norm() - 1.0) > kUnitTolerance) {
        throw InputError(std::string(op) + ": quaternion norm " + std::to_string(q.norm()) +
                         " is not unit within 1e-6");
    }
}

}  // namespace

Vec3 zup_to_yup(const Vec3& v) { return {v.x, v.z, -v.y}; }

Vec3 yup_to_zup(const Vec3& v) { return {v.x, -v.z, v.y}; }

Pose convert_frame_zup_to_yup(const Pose& p) {
    require_unit(p.orientation, "convert_frame_zup_to_yup");
    const Quat basis{kInvSqrt2, -kInvSqrt2, 0.0, 0.0};  // -90 deg about x
    return {zup_to_yup(p.position), (basis * p.orientation).normalized()};
}

Pose convert_frame_yup_to_zup(const Pose& p) {
    require_unit(p.orientation, "convert_frame_yup_to_zup");
    const Quat basis{kInvSqrt2, kInvSqrt2, 0.0, 0.0};  // +90 deg about x
    return {yup_to_zup(p.position), (basis * p.orientation).normalized()};
}

}  // namespace scenebench
