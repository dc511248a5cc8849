#include "leapfrog.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ww::testing {

namespace {

// Fourth-order v_rr with odd reflection at r = 0 and r = L.
void laplacian(const std::vector<double>& v, double h, std::vector<double>& out) {
  const long m = static_cast<long>(v.size());
  auto at = [&](long j) -> double {
    if (j == 0 || j == m + 1) return 0.0;
    if (j < 0) return -v[static_cast<std::size_t>(-j - 1)];
    if (j > m + 1) return -v[static_cast<std::size_t>(2 * (m + 1) - j - 1)];
    return v[static_cast<std::size_t>(j - 1)];
  };
  const double c = 1.0 / (12.0 * h * h);
  for (long j = 1; j <= m; ++j)
    out[static_cast<std::size_t>(j - 1)] =
        c * (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) - at(j - 2));
}

}  // namespace

LeapfrogResult leapfrog(const RadialProfile& f, const RadialProfile& g, const std::function<double(double)>& F,
                        double T, double courant) {
  const std::size_t m = f.radii.size();
  if (m < 4 || g.radii.size() != m) throw std::invalid_argument("leapfrog: bad grids");
  const std::vector<double>& r = f.radii;
  const double h = r[0];
  const long steps = std::max(1L, static_cast<long>(std::ceil(T / (courant * h))));
  const double dt = T / static_cast<double>(steps);

  std::vector<double> v0(m), w0(m), acc(m), lap(m);
  for (std::size_t j = 0; j < m; ++j) {
    v0[j] = r[j] * f.values[j].real();
    w0[j] = r[j] * g.values[j].real();
  }
  auto accel = [&](const std::vector<double>& v, std::vector<double>& a) {
    laplacian(v, h, lap);
    for (std::size_t j = 0; j < m; ++j) a[j] = lap[j] + r[j] * F(v[j] / r[j]);
  };

  std::vector<double> prev = v0, cur(m), next(m);
  accel(v0, acc);
  for (std::size_t j = 0; j < m; ++j) cur[j] = v0[j] + dt * w0[j] + 0.5 * dt * dt * acc[j];
  for (long s = 1; s < steps; ++s) {
    accel(cur, acc);
    for (std::size_t j = 0; j < m; ++j) next[j] = 2.0 * cur[j] - prev[j] + dt * dt * acc[j];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  // Velocity at T from the last two levels, second order via the acceleration.
  accel(cur, acc);
  LeapfrogResult out;
  out.u.radii = r;
  out.ut.radii = r;
  out.u.values.resize(m);
  out.ut.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.u.values[j] = cur[j] / r[j];
    out.ut.values[j] = ((cur[j] - prev[j]) / dt + 0.5 * dt * acc[j]) / r[j];
  }
  return out;
}

double relative_l2(const RadialProfile& a, const RadialProfile& b) {
  if (a.radii.size() != b.radii.size()) throw std::invalid_argument("relative_l2: grids differ");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.radii.size(); ++j) {
    const double w = a.radii[j] * a.radii[j];
    num += std::norm(a.values[j] - b.values[j]) * w;
    den += std::norm(b.values[j]) * w;
  }
  return std::sqrt(num / den);
}

}  // namespace ww::testing
