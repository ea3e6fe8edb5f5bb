#pragma once

#include <functional>
#include <optional>

#include "dsgauss/jet.hpp"

namespace dsgauss {

struct Rect {
  double u_min, u_max, v_min, v_max;
  bool contains(double u, double v) const { return u >= u_min && u <= u_max && v >= v_min && v <= v_max; }
};

using ScalarField = std::function<double(double, double)>;

inline constexpr int kStencilHalfWidth = 3;
inline constexpr double kDefaultFdStep = 1e-3;

// Central-difference estimate of all ten jet slots of f at (u0, v0), built
// from tensor products of fourth-order 1-D stencils on the 7x7 grid
// {u0 + i h, v0 + j h : |i|, |j| <= 3}. Throws StencilOutsideDomain when the
// stencil leaves `domain`.
Jet fd_oracle(const ScalarField& f, double u0, double v0, double h = kDefaultFdStep,
              const std::optional<Rect>& domain = std::nullopt);

inline constexpr double kRichardsonStep = 2e-2;

// One Richardson step on fd_oracle: (16 D(h/2) - D(h)) / 15, sixth order in h.
// Roundoff stays at the level of the coarse stencil, so h can be larger.
Jet fd_oracle_richardson(const ScalarField& f, double u0, double v0, double h = kRichardsonStep,
                         const std::optional<Rect>& domain = std::nullopt);

}  // namespace dsgauss
