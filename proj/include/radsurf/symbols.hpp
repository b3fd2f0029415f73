#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace radsurf {

// Global variable table. Every polynomial in the kernel draws its variables
// from this fixed list, and the monomial order is graded lex with x first.
//
//   x,y,z    surface coordinates
//   w        homogenizing variable of pencil curves
//   s        pencil parameter
//   t        curve parametrization variable
//   t1,t2    surface parametrization variables
//   h        line parameter of the by-lines construction
//   u0..u3   canonical-space coordinates of the genus-4 scroll
//   X        parameter along a line section
//   alpha    algebraic element of a triangular modulus
//   beta,gamma  scratch algebraic extensions (scroll point / line split)
enum class Sym : std::uint8_t {
  x = 0, y, z, w, s, t, t1, t2, h, u0, u1, u2, u3, X, alpha, beta, gamma,
};

inline constexpr std::size_t kSymCount = 17;

inline constexpr std::array<std::string_view, kSymCount> kSymNames = {
    "x", "y", "z", "w", "s", "t", "t1", "t2", "h",
    "u0", "u1", "u2", "u3", "X", "alpha", "beta", "gamma"};

inline std::string_view name_of(Sym v) {
  return kSymNames[static_cast<std::size_t>(v)];
}

inline std::optional<Sym> sym_from_name(std::string_view n) {
  for (std::size_t i = 0; i < kSymCount; ++i)
    if (kSymNames[i] == n) return static_cast<Sym>(i);
  return std::nullopt;
}

inline constexpr std::size_t idx(Sym v) { return static_cast<std::size_t>(v); }

}  // namespace radsurf
