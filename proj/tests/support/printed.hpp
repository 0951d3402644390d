#pragma once
// Literal transcriptions of printed constant matrices, used as test oracles.
// Integer tables carry an overall scale applied by the helpers below.

#include <array>
#include <cmath>

#include "rsw/algebra.hpp"

namespace printed {

using rsw::cplx;

inline rsw::ComplexMatrix real8(const std::array<std::array<int, 8>, 8>& t, double scale) {
  rsw::ComplexMatrix m(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = scale * t[r][c];
  return m;
}

// Entries are (re, im) pairs in units of `scale`.
inline rsw::ComplexMatrix complex8(const std::array<std::array<std::array<int, 2>, 8>, 8>& t,
                                   double scale) {
  rsw::ComplexMatrix m(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = scale * cplx(t[r][c][0], t[r][c][1]);
  return m;
}

inline rsw::ComplexMatrix m0x(double v) {
  return real8({{{0, 0, 0, 0, 0, 0, 0, -1},
                 {0, 0, 0, 0, 0, 0, -1, 0},
                 {0, 0, 0, 0, 0, 1, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 0, 0, 0},
                 {0, -1, 0, 0, 0, 0, 0, 0},
                 {-1, 0, 0, 0, 0, 0, 0, 0}}},
               v);
}

inline rsw::ComplexMatrix m0y(double v) {
  return real8({{{0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 0, 0, 0, 0, 0, 0, -1},
                 {0, 0, 0, 0, -1, 0, 0, 0},
                 {0, 0, 0, 0, 0, 1, 0, 0},
                 {0, 0, -1, 0, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0},
                 {1, 0, 0, 0, 0, 0, 0, 0},
                 {0, -1, 0, 0, 0, 0, 0, 0}}},
               v);
}

inline rsw::ComplexMatrix m0z(double v) {
  return real8({{{0, 0, 0, 0, 0, -1, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0, 0},
                 {0, 0, 0, 0, 0, 0, 0, -1},
                 {0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 1, 0, 0, 0, 0, 0, 0},
                 {-1, 0, 0, 0, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0},
                 {0, 0, -1, 0, 0, 0, 0, 0}}},
               v);
}

// tau (x) 1_4
inline rsw::ComplexMatrix t8() {
  rsw::ComplexMatrix m(8);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < 4; ++i) {
    m(i, i) = s;
    m(4 + i, 4 + i) = s;
    m(i, 4 + i) = cplx(0, s);
    m(4 + i, i) = cplx(0, s);
  }
  return m;
}

inline rsw::ComplexMatrix t_small() {
  return complex8({{{{{-1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, -1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
                    {{{1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 1}, {-1, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, -1}, {-1, 0}}},
                    {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, -1}, {1, 0}}},
                    {{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, -1}, {-1, 0}, {0, 0}, {0, 0}}}}},
                  1.0 / std::sqrt(2.0));
}

inline rsw::ComplexMatrix tt() {
  return complex8({{{{{-1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, -1}, {-1, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 1}, {-1, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, -1}, {0, 0}, {0, 0}, {0, 1}, {1, 0}}},
                    {{{1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 1}, {-1, 0}, {0, 0}, {0, 0}}},
                    {{{-1, 0}, {0, -1}, {0, 0}, {0, 0}, {0, 1}, {-1, 0}, {0, 0}, {0, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, -1}, {0, 0}, {0, 0}, {0, -1}, {-1, 0}}},
                    {{{0, 0}, {0, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, -1}, {1, 0}}},
                    {{{1, 0}, {0, -1}, {0, 0}, {0, 0}, {0, -1}, {-1, 0}, {0, 0}, {0, 0}}}}},
                  0.5);
}

inline rsw::ComplexMatrix sk() {
  return real8({{{1, 0, 0, 0, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 0, 0, 0},
                 {0, 1, 0, 0, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0, 0},
                 {0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 0, 0, 0, 0, 1, 0, 0},
                 {0, 0, 0, 0, 0, 0, 0, 1}}},
               1.0);
}

inline rsw::ComplexMatrix sphi() {
  return real8({{{1, 0, 0, 0, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 0, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0, 0},
                 {0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 1, 0, 0, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0},
                 {0, 0, 0, 0, 0, 1, 0, 0},
                 {0, 0, 0, 0, 0, 0, 0, 1}}},
               1.0);
}

}  // namespace printed
