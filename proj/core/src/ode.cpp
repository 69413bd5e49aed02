#include "schwarzian/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schwarzian/errors.hpp"

namespace schwarzian {

std::vector<Complex> local_series(const FunctionExpr& p0, int k, Complex z,
                                  const OdeState& state, int order) {
  if (static_cast<int>(state.size()) != k) {
    throw IntegrationError("state has " + std::to_string(state.size()) + " components, expected " +
                           std::to_string(k));
  }
  Jet p;
  try {
    p = jet_at(p0, z, std::max(order - k, 0));
  } catch (const Error& e) {
    throw IntegrationError(std::string("p0 cannot be expanded on the path: ") + e.what());
  }
  if (p.is_pole()) throw IntegrationError("p0 has a pole on the path");

  std::vector<Complex> c(static_cast<std::size_t>(std::max(order, k - 1)) + 1, Complex(0.0));
  double factorial = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) factorial *= j;
    c[j] = state[j] / factorial;
  }
  for (int m = 0; m + k <= order; ++m) {
    Complex s = 0.0;
    for (int i = 0; i <= m; ++i) s += p[i] * c[m - i];
    double rising = 1.0;
    for (int t = 1; t <= k; ++t) rising *= m + t;
    c[m + k] = -s / rising;
  }
  c.resize(static_cast<std::size_t>(order) + 1);
  return c;
}

namespace {

OdeState evaluate_series(const std::vector<Complex>& c, int k, Complex h) {
  OdeState out(static_cast<std::size_t>(k), Complex(0.0));
  const int n = static_cast<int>(c.size()) - 1;
  for (int j = 0; j < k; ++j) {
    // sum_m c_m m!/(m-j)! h^(m-j), by Horner from the top.
    Complex acc = 0.0;
    for (int m = n; m >= j; --m) {
      double falling = 1.0;
      for (int t = 0; t < j; ++t) falling *= m - t;
      acc = acc * h + c[m] * falling;
    }
    out[j] = acc;
  }
  return out;
}

// Advances from (z, state) toward target, appending every step node.
void advance(const FunctionExpr& p0, int k, Complex z, OdeState state, Complex target,
             std::vector<Complex>& nodes, std::vector<OdeState>& states) {
  while (std::abs(target - z) > 0.0) {
    const Complex remaining = target - z;
    const double dist = std::abs(remaining);
    double step;
    try {
      step = std::min({kMaxStep, radius_estimate(jet_at(p0, z, kTaylorOrder)) / 4.0, dist});
    } catch (const Error& e) {
      throw IntegrationError(std::string("p0 cannot be expanded on the path: ") + e.what());
    }
    // Approaching a singularity of p0 the radius bound shrinks geometrically.
    if (step < kMinStep && step < dist) throw IntegrationError("step size underflow");
    const auto c = local_series(p0, k, z, state, kTaylorOrder);
    for (;;) {
      double scale = 0.0;
      double hp = 1.0;
      for (const auto& cm : c) {
        scale = std::max(scale, std::abs(cm) * hp);
        hp *= step;
      }
      const double tail = std::abs(c[kTaylorOrder - 1]) * std::pow(step, kTaylorOrder - 1) +
                          std::abs(c[kTaylorOrder]) * std::pow(step, kTaylorOrder);
      if (tail <= kLocalTolerance * std::max(scale, kSignificanceThreshold)) break;
      step *= 0.5;
      if (step < kMinStep) throw IntegrationError("step size underflow");
    }
    const Complex h = step >= dist ? remaining : remaining / dist * step;
    state = evaluate_series(c, k, h);
    z = step >= dist ? target : z + h;
    for (const auto& v : state) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw IntegrationError("solution overflow");
      }
    }
    nodes.push_back(z);
    states.push_back(state);
  }
}

}  // namespace

OdeTrajectory integrate(const FunctionExpr& p0, int k, OdeState init,
                        std::span<const Complex> path) {
  if (k < 1) throw IntegrationError("ODE order must be >= 1");
  if (static_cast<int>(init.size()) != k) {
    throw IntegrationError("initial state needs exactly k components");
  }
  if (path.empty()) throw IntegrationError("empty path");
  OdeTrajectory t;
  t.k = k;
  t.p0 = p0;
  t.path.push_back(path[0]);
  t.states.push_back(init);
  for (std::size_t i = 1; i < path.size(); ++i) {
    advance(p0, k, t.path.back(), t.states.back(), path[i], t.path, t.states);
  }
  return t;
}

struct OdeSolution::Impl {
  FunctionExpr p0;
  int k;
  std::vector<Complex> nodes;
  std::vector<OdeState> states;
};

OdeSolution::OdeSolution(FunctionExpr p0, int k, Complex origin, OdeState init)
    : impl_(std::make_shared<Impl>(Impl{std::move(p0), k, {origin}, {std::move(init)}})) {
  if (static_cast<int>(impl_->states[0].size()) != k) {
    throw IntegrationError("initial state needs exactly k components");
  }
}

OdeState OdeSolution::state_at(Complex z) {
  auto& m = *impl_;
  std::size_t best = 0;
  double best_d = std::abs(m.nodes[0] - z);
  for (std::size_t i = 1; i < m.nodes.size(); ++i) {
    const double d = std::abs(m.nodes[i] - z);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best_d == 0.0) return m.states[best];
  const Complex from = m.nodes[best];
  const OdeState start = m.states[best];
  advance(m.p0, m.k, from, start, z, m.nodes, m.states);
  return m.states.back();
}

Jet OdeSolution::jet_at(Complex z, int order) {
  const OdeState s = state_at(z);
  return Jet::from_coefficients(z, 0, local_series(impl_->p0, impl_->k, z, s, order));
}

JetSource OdeSolution::source() const {
  return [self = *this](Complex z, int order) mutable { return self.jet_at(z, order); };
}

int OdeSolution::k() const { return impl_->k; }

}  // namespace schwarzian
