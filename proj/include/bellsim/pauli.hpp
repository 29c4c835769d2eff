#pragma once

#include <array>
#include <complex>

#include "bellsim/vec3.hpp"

// Minimal complex 2x2 / 4x4 matrix kit for spin-1/2 algebra. Only what the
// projector sandwiches need; not a general linear-algebra layer.

namespace bellsim::math {

using Vec2c = std::array<cplx, 2>;
using Vec4c = std::array<cplx, 4>;

struct Mat2c {
  // Row-major entries.
  std::array<cplx, 4> m{};

  cplx& at(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  const cplx& at(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2c identity() { return Mat2c{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }

  Mat2c operator+(const Mat2c& o) const {
    Mat2c r;
    for (std::size_t i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }

  Mat2c operator*(double s) const {
    Mat2c r;
    for (std::size_t i = 0; i < 4; ++i) r.m[i] = m[i] * s;
    return r;
  }
};

inline Vec2c apply(const Mat2c& a, const Vec2c& v) {
  return Vec2c{a.at(0, 0) * v[0] + a.at(0, 1) * v[1], a.at(1, 0) * v[0] + a.at(1, 1) * v[1]};
}

inline Mat2c sigma_x() { return Mat2c{{cplx(0), cplx(1), cplx(1), cplx(0)}}; }
inline Mat2c sigma_y() { return Mat2c{{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)}}; }
inline Mat2c sigma_z() { return Mat2c{{cplx(1), cplx(0), cplx(0), cplx(-1)}}; }

/// σ·v with the standard convention (σ_z diagonal, quantization axis z).
inline Mat2c sigma_dot(const UnitVector3& v) {
  Mat2c r;
  r.at(0, 0) = cplx(v.z);
  r.at(0, 1) = cplx(v.x, -v.y);
  r.at(1, 0) = cplx(v.x, v.y);
  r.at(1, 1) = cplx(-v.z);
  return r;
}

struct Mat4c {
  std::array<cplx, 16> m{};

  cplx& at(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
  const cplx& at(int r, int c) const { return m[static_cast<std::size_t>(4 * r + c)]; }
};

/// Kronecker product; index = 2*(first particle) + (second particle).
inline Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return r;
}

inline Vec4c apply(const Mat4c& a, const Vec4c& v) {
  Vec4c r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)] += a.at(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

/// ⟨bra|M|ket⟩.
inline cplx sandwich(const Vec4c& bra, const Mat4c& m, const Vec4c& ket) {
  const Vec4c mv = apply(m, ket);
  cplx s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(bra[i]) * mv[i];
  return s;
}

inline Vec4c tensor(const Vec2c& a, const Vec2c& b) {
  return Vec4c{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

}  // namespace bellsim::math
