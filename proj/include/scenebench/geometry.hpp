#pragma once

#include <array>
#include <cmath>

namespace scenebench {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 min_of(const Vec3& a, const Vec3& b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 max_of(const Vec3& a, const Vec3& b) {
    return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

// Unit quaternion, scalar-first (w, x, y, z).
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    Quat conjugate() const { return {w, -x, -y, -z}; }

    Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    Vec3 rotate(const Vec3& v) const {
        Quat p{0.0, v.x, v.y, v.z};
        Quat r = *this * p * conjugate();
        return {r.x, r.y, r.z};
    }
};

// Extrinsic X-Y-Z (roll, pitch, yaw) convention, as in SDF <pose>.
Quat quat_from_rpy(double roll, double pitch, double yaw);

Quat quat_from_yaw(double yaw);

struct Pose {
    Vec3 position;
    Quat orientation;
};

struct Aabb {
    Vec3 min{0, 0, 0};
    Vec3 max{0, 0, 0};

    Vec3 center() const { return {(min.x + max.x) / 2, (min.y + max.y) / 2, (min.z + max.z) / 2}; }
    Vec3 extent() const { return max - min; }

    Aabb merged(const Aabb& o) const { return {min_of(min, o.min), max_of(max, o.max)}; }
};

// AABB of a local box [lo, hi] under a rigid transform (corner transform).
Aabb transform_aabb(const Vec3& lo, const Vec3& hi, const Pose& pose);

// Source scenes are z-up; the emitted dataset is y-up. The conversion applies
// the fixed basis change (x, y, z) -> (x, z, -y), i.e. a -90 degree rotation
// about the x-axis, to positions and composes it onto orientations.
// Throws InputError when the quaternion is not unit within 1e-6.
Pose convert_frame_zup_to_yup(const Pose& p);
Pose convert_frame_yup_to_zup(const Pose& p);  // exact inverse

Vec3 zup_to_yup(const Vec3& v);
Vec3 yup_to_zup(const Vec3& v);

}  // namespace scenebench
