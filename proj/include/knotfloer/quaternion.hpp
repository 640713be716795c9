#pragma once

#include <array>

namespace knotfloer {

// Quaternion over any exact/interval component type with ring operations.
// Unit quaternions model SU(2); trace of the corresponding matrix is 2w.
template <class T>
struct Quaternion {
  T w, x, y, z;

  Quaternion() = default;
  Quaternion(T w_, T x_, T y_, T z_)
      : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
  }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
  }

  // Inverse of a unit quaternion.
  Quaternion conjugate() const { return Quaternion(w, -x, -y, -z); }

  // q^n for integer n, inverse = conjugate (valid on the unit sphere).
  Quaternion unit_pow(long n, const Quaternion& one) const {
    if (n == 0) return one;
    Quaternion base = n > 0 ? *this : conjugate();
    if (n < 0) n = -n;
    Quaternion acc = one;
    for (long i = 0; i < n; ++i) acc = acc * base;
    return acc;
  }
};

}  // namespace knotfloer
