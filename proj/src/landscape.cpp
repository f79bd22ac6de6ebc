#include "ggavqe/landscape.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ggavqe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTie = 1e-12;

bool better(double v, double t_abs, double best_v, double best_abs) {
  if (v < best_v - kTie) return true;
  if (v > best_v + kTie) return false;
  return t_abs < best_abs;
}

// Safeguarded Newton on a smooth periodic function, staying within +-h of t0.
template <class F, class D1, class D2>
double refine(double t0, double h, F f, D1 d1, D2 d2) {
  double t = t0;
  for (int it = 0; it < 100; ++it) {
    const double d = d1(t);
    if (std::abs(d) < 1e-13) break;
    const double dd = d2(t);
    double step = dd > 0.0 ? -d / dd : (d > 0.0 ? -h / 4 : h / 4);
    if (step > h) step = h;
    if (step < -h) step = -h;
    double next = t + step;
    // Backtrack if Newton overshoots uphill.
    for (int k = 0; k < 30 && f(next) > f(t); ++k) {
      step *= 0.5;
      next = t + step;
    }
    if (next == t) break;
    t = next;
    if (std::abs(t - t0) > h) break;
  }
  return f(t) <= f(t0) ? t : t0;
}

// Representative of theta in [-pi, pi).
double wrap(double t) {
  double w = std::fmod(t + kPi, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  w -= kPi;
  return w >= kPi ? w - 2 * kPi : w;
}

// Representative of theta modulo pi in [-pi/2, pi/2).
double wrap_half(double t) {
  double w = std::fmod(t + kPi / 2, kPi);
  if (w < 0) w += kPi;
  w -= kPi / 2;
  return w >= kPi / 2 ? w - kPi : w;
}

std::array<double, 3> basis3(double t) { return {1.0, std::cos(2 * t), std::sin(2 * t)}; }
std::array<double, 3> dbasis3(double t) { return {0.0, -2 * std::sin(2 * t), 2 * std::cos(2 * t)}; }
std::array<double, 3> ddbasis3(double t) { return {0.0, -4 * std::cos(2 * t), -4 * std::sin(2 * t)}; }

double bilinear(const std::array<std::array<double, 3>, 3>& a, const std::array<double, 3>& u,
                const std::array<double, 3>& v) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) acc += u[i] * a[i][k] * v[k];
  return acc;
}

}  // namespace

double LandscapeModel::evaluate(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (cls == AlgebraicClass::Involutory) return c * c * e0 + s * c * g + s * s * b;
  return e0 + (c - 1) * c0 + (1 - c) * (1 - c) * c1 + s * (c - 1) * c2 + s * g;
}

double LandscapeModel::derivative(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (cls == AlgebraicClass::Involutory)
    return std::sin(2 * t) * (b - e0) + std::cos(2 * t) * g;
  return -s * c0 + 2 * (1 - c) * s * c1 + (std::cos(2 * t) - c) * c2 + c * g;
}

double LandscapeModel::second_derivative(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  if (cls == AlgebraicClass::Involutory)
    return 2 * std::cos(2 * t) * (b - e0) - 2 * std::sin(2 * t) * g;
  return -c * c0 + 2 * (s * s + (1 - c) * c) * c1 + (s - 2 * std::sin(2 * t)) * c2 - s * g;
}

LandscapeModel LandscapeModel::negated() const {
  LandscapeModel m = *this;
  m.e0 = -e0;
  m.g = -g;
  m.b = -b;
  m.c0 = -c0;
  m.c1 = -c1;
  m.c2 = -c2;
  return m;
}

std::vector<double> landscape_nodes(AlgebraicClass cls) {
  if (cls == AlgebraicClass::Involutory) return {kPi / 4, -kPi / 4};
  return {kPi / 2, -kPi / 2, kPi / 4, -kPi / 4};
}

LandscapeModel solve_landscape(AlgebraicClass cls, double e0, const std::vector<double>& y,
                               double angle_scale) {
  LandscapeModel m;
  m.cls = cls;
  m.e0 = e0;
  m.angle_scale = angle_scale;
  if (cls == AlgebraicClass::Involutory) {
    if (y.size() != 2) throw std::invalid_argument("involutory landscape needs 2 samples");
    // L(+-pi/4) = (e0 + b)/2 +- g/2
    m.g = y[0] - y[1];
    m.b = y[0] + y[1] - e0;
    return m;
  }
  if (y.size() != 4) throw std::invalid_argument("tripotent landscape needs 4 samples");
  const double c = std::numbers::sqrt2 / 2;  // cos(pi/4) == sin(pi/4)
  const double s1 = y[0] + y[1] - 2 * e0;    // 2(c1 - c0)
  const double d1 = y[0] - y[1];             // 2(g - c2)
  const double s2 = y[2] + y[3] - 2 * e0;    // 2((c-1) c0 + (1-c)^2 c1)
  const double d2 = y[2] - y[3];             // 2c((c-1) c2 + g)
  m.c0 = ((1 - c) * (1 - c) * s1 / 2 - s2 / 2) / (c * (1 - c));
  m.c1 = m.c0 + s1 / 2;
  m.c2 = (d2 / (2 * c) - d1 / 2) / c;
  m.g = d1 / 2 + m.c2;
  return m;
}

LandscapeModel reconstruct_landscape(AlgebraicClass cls, double e0,
                                     const std::function<double(double)>& sample,
                                     double angle_scale) {
  std::vector<double> y;
  for (double t : landscape_nodes(cls)) y.push_back(sample(t));
  return solve_landscape(cls, e0, y, angle_scale);
}

Extremum minimize(const LandscapeModel& m) {
  if (m.cls == AlgebraicClass::Involutory) {
    // L = alpha + A cos 2t + Bs sin 2t = alpha + R cos(2t - delta)
    const double alpha = (m.e0 + m.b) / 2, A = (m.e0 - m.b) / 2, Bs = m.g / 2;
    const double r = std::hypot(A, Bs);
    const double value = alpha - r;
    if (m.e0 - value <= kTie) return {0.0, m.e0};
    const double theta = wrap_half(std::atan2(Bs, A) / 2 + kPi / 2);
    return {theta, value};
  }
  constexpr int kGrid = 1024;
  const double h = 2 * kPi / kGrid;
  std::vector<double> v(kGrid);
  for (int i = 0; i < kGrid; ++i) v[i] = m.evaluate(-kPi + i * h);
  auto f = [&](double t) { return m.evaluate(t); };
  auto d1 = [&](double t) { return m.derivative(t); };
  auto d2 = [&](double t) { return m.second_derivative(t); };
  Extremum best{0.0, m.e0};
  for (int i = 0; i < kGrid; ++i) {
    const double prev = v[(i + kGrid - 1) % kGrid], next = v[(i + 1) % kGrid];
    if (v[i] > prev || v[i] > next) continue;
    const double t = wrap(refine(-kPi + i * h, h, f, d1, d2));
    const double val = f(t);
    if (better(val, std::abs(t), best.value, std::abs(best.theta))) best = {t, val};
  }
  if (m.e0 - best.value <= kTie) return {0.0, m.e0};
  return best;
}

Extremum maximize(const LandscapeModel& m) {
  const Extremum e = minimize(m.negated());
  return {e.theta, -e.value};
}

// ------------------------------------------------------------------------ 2-D

double LandscapeModel2D::evaluate(double t1, double t2) const {
  return bilinear(a, basis3(t1), basis3(t2));
}

std::array<double, 2> LandscapeModel2D::gradient(double t1, double t2) const {
  return {bilinear(a, dbasis3(t1), basis3(t2)), bilinear(a, basis3(t1), dbasis3(t2))};
}

LandscapeModel LandscapeModel2D::slice_first() const {
  const auto v = basis3(0.0);
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) w[i] += a[i][k] * v[k];
  // w0 + w1 cos 2t + w2 sin 2t == cos^2 e0 + sin cos g + sin^2 b
  LandscapeModel m;
  m.e0 = w[0] + w[1];
  m.b = w[0] - w[1];
  m.g = 2 * w[2];
  return m;
}

LandscapeModel LandscapeModel2D::slice_second() const {
  const auto v = basis3(0.0);
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) w[k] += v[i] * a[i][k];
  LandscapeModel m;
  m.e0 = w[0] + w[1];
  m.b = w[0] - w[1];
  m.g = 2 * w[2];
  return m;
}

std::vector<std::array<double, 2>> landscape_nodes_2d() {
  const double n[3] = {0.0, kPi / 4, -kPi / 4};
  std::vector<std::array<double, 2>> out;
  for (double t1 : n)
    for (double t2 : n) out.push_back({t1, t2});
  return out;
}

LandscapeModel2D solve_landscape_2d(const std::array<std::array<double, 3>, 3>& grid) {
  const double n[3] = {0.0, kPi / 4, -kPi / 4};
  Eigen::Matrix3d f, y;
  for (int i = 0; i < 3; ++i) {
    const auto b = basis3(n[i]);
    for (int j = 0; j < 3; ++j) {
      f(i, j) = b[static_cast<std::size_t>(j)];
      y(i, j) = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  // y = F A F^T
  const Eigen::Matrix3d finv = f.inverse();
  const Eigen::Matrix3d a = finv * y * finv.transpose();
  LandscapeModel2D m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = a(i, k);
  return m;
}

LandscapeModel2D reconstruct_landscape_2d(const std::function<double(double, double)>& sample) {
  const auto nodes = landscape_nodes_2d();
  std::array<std::array<double, 3>, 3> grid{};
  for (std::size_t i = 0; i < nodes.size(); ++i) grid[i / 3][i % 3] = sample(nodes[i][0], nodes[i][1]);
  return solve_landscape_2d(grid);
}

Extremum2D minimize_2d(const LandscapeModel2D& m) {
  // pi-periodic in both angles, so [-pi/2, pi/2)^2 holds a representative of every point.
  constexpr int kGrid = 256;
  const double h = kPi / kGrid;
  std::vector<double> v(kGrid * kGrid);
  auto at = [&](int i, int k) -> double& { return v[static_cast<std::size_t>(i * kGrid + k)]; };
  for (int i = 0; i < kGrid; ++i)
    for (int k = 0; k < kGrid; ++k) at(i, k) = m.evaluate(-kPi / 2 + i * h, -kPi / 2 + k * h);

  const double origin = m.evaluate(0.0, 0.0);
  Extremum2D best{0.0, 0.0, origin};
  auto norm2 = [](double x, double y) { return x * x + y * y; };
  for (int i = 0; i < kGrid; ++i)
    for (int k = 0; k < kGrid; ++k) {
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dk = -1; dk <= 1; ++dk)
          if ((di || dk) && at((i + di + kGrid) % kGrid, (k + dk + kGrid) % kGrid) < at(i, k)) {
            local = false;
            break;
          }
      if (!local) continue;
      double t1 = -kPi / 2 + i * h, t2 = -kPi / 2 + k * h;
      for (int it = 0; it < 100; ++it) {
        const auto g = m.gradient(t1, t2);
        if (std::hypot(g[0], g[1]) < 1e-13) break;
        const auto b1 = basis3(t1), b2 = basis3(t2), db1 = dbasis3(t1), db2 = dbasis3(t2);
        const double h11 = bilinear(m.a, ddbasis3(t1), b2);
        const double h22 = bilinear(m.a, b1, ddbasis3(t2));
        const double h12 = bilinear(m.a, db1, db2);
        const double det = h11 * h22 - h12 * h12;
        double s1, s2;
        if (h11 > 0 && det > 0) {
          s1 = -(h22 * g[0] - h12 * g[1]) / det;
          s2 = -(-h12 * g[0] + h11 * g[1]) / det;
        } else {
          s1 = -g[0] * 0.1;
          s2 = -g[1] * 0.1;
        }
        const double len = std::hypot(s1, s2);
        if (len > h) {
          s1 *= h / len;
          s2 *= h / len;
        }
        const double cur = m.evaluate(t1, t2);
        int k2 = 0;
        while (k2 < 40 && m.evaluate(t1 + s1, t2 + s2) > cur) {
          s1 *= 0.5;
          s2 *= 0.5;
          ++k2;
        }
        if (k2 == 40) break;
        t1 += s1;
        t2 += s2;
      }
      t1 = wrap_half(t1);
      t2 = wrap_half(t2);
      const double val = m.evaluate(t1, t2);
      if (val < best.value - kTie ||
          (val <= best.value + kTie && norm2(t1, t2) < norm2(best.theta1, best.theta2)))
        best = {t1, t2, val};
    }
  if (origin - best.value <= kTie) return {0.0, 0.0, origin};
  return best;
}

}  // namespace ggavqe
