#include "dsgauss/fd_oracle.hpp"

#include <array>
#include <string>

namespace dsgauss {

namespace {

// Weights over offsets -3..3 for the 0th..3rd derivative, each O(h^4).
constexpr std::array<std::array<double, 7>, 4> kWeights = {{
    {0, 0, 0, 1, 0, 0, 0},
    {0, 1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12, 0},
    {0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0},
    {1.0 / 8, -1.0, 13.0 / 8, 0, -13.0 / 8, 1.0, -1.0 / 8},
}};

}  // namespace

Jet fd_oracle(const ScalarField& f, double u0, double v0, double h, const std::optional<Rect>& domain) {
  if (!(h > 0)) throw InputError("fd_oracle: step must be positive");
  const double reach = kStencilHalfWidth * h;
  if (domain && !(domain->contains(u0 - reach, v0 - reach) && domain->contains(u0 + reach, v0 + reach)))
    throw StencilOutsideDomain("StencilOutsideDomain: 7x7 stencil around (" + std::to_string(u0) + ", " +
                               std::to_string(v0) + ") leaves the domain");

  std::array<std::array<double, 7>, 7> s{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) s[i][j] = f(u0 + (i - 3) * h, v0 + (j - 3) * h);

  std::array<double, 10> slots{};
  for (int k = 0; k < 10; ++k) {
    const int a = jet_detail::kDegrees[k].a;
    const int b = jet_detail::kDegrees[k].b;
    double acc = 0.0;
    for (int i = 0; i < 7; ++i) {
      if (kWeights[a][i] == 0.0) continue;
      for (int j = 0; j < 7; ++j) acc += kWeights[a][i] * kWeights[b][j] * s[i][j];
    }
    double scale = 1.0;
    for (int t = 0; t < a + b; ++t) scale *= h;
    slots[k] = acc / scale;
  }
  return Jet::from_slots(slots);
}

Jet fd_oracle_richardson(const ScalarField& f, double u0, double v0, double h, const std::optional<Rect>& domain) {
  const Jet coarse = fd_oracle(f, u0, v0, h, domain);
  const Jet fine = fd_oracle(f, u0, v0, h / 2, domain);
  return (16.0 * fine - coarse) / 15.0;
}

}  // namespace dsgauss
