#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace flowem {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    constexpr Vec3& operator/=(double s) { return *this *= 1.0 / s; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a /= s; }

    friend constexpr bool operator==(const Vec3& a, const Vec3& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const Vec3& v) {
        return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
    }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec3& a) { return dot(a, a); }

/// Unit basis vector delta_i, i in {0,1,2}.
constexpr Vec3 basis(int i) {
    return {i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0};
}

/// 3x3 matrix stored by rows; row(i) holds the i-th spatial partial of a vector field.
struct Mat3 {
    std::array<Vec3, 3> rows{};

    Vec3& row(int i) { return rows[static_cast<size_t>(i)]; }
    const Vec3& row(int i) const { return rows[static_cast<size_t>(i)]; }
    double operator()(int i, int j) const { return rows[static_cast<size_t>(i)][j]; }

    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m.row(i) = a.row(i) - b.row(i);
        return m;
    }
};

/// Spacetime point (r, t).
struct Point4 {
    Vec3 r;
    double t = 0.0;

    double operator[](int axis) const { return axis < 3 ? r[axis] : t; }
    double& operator[](int axis) { return axis < 3 ? r[axis] : t; }
};

/// Compensated (Kahan) accumulator; keeps integral reductions bit-stable.
class KahanSum {
  public:
    void add(double term) {
        const double y = term - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace flowem
