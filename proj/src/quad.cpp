#include "udw/quad.hpp"

namespace udw::quad {

namespace {

// Neville tableau evaluated at eps = 0 over samples[lo .. lo+order].
Complex neville_at_zero(std::span<const std::pair<double, Complex>> s,
                        std::size_t lo, int order) {
  std::vector<Complex> tab(static_cast<std::size_t>(order) + 1);
  std::vector<double> x(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) {
    tab[i] = s[lo + i].second;
    x[i] = s[lo + i].first;
  }
  for (int j = 1; j <= order; ++j) {
    for (int i = 0; i <= order - j; ++i) {
      // p_i(0) for nodes x_i..x_{i+j}
      tab[i] = (x[i + j] * tab[i] - x[i] * tab[i + 1]) / (x[i + j] - x[i]);
    }
  }
  return tab[0];
}

}  // namespace

std::pair<Complex, double> extrapolate_eps(
    std::span<const std::pair<double, Complex>> samples, int order) {
  if (order < 1) throw ContractError("extrapolate_eps: order must be >= 1");
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(order) + 1) {
    throw ContractError("extrapolate_eps: fewer samples than order + 1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(samples[i].first > 0.0)) throw ContractError("extrapolate_eps: eps must be > 0");
    if (i > 0 && !(samples[i].first < samples[i - 1].first)) {
      throw ContractError("extrapolate_eps: eps sequence must be strictly descending");
    }
  }
  const std::size_t n_windows = n - static_cast<std::size_t>(order);
  const Complex best = neville_at_zero(samples, n_windows - 1, order);
  Complex prev;
  if (n_windows >= 2) {
    prev = neville_at_zero(samples, n_windows - 2, order);
  } else {
    // Single full-order window: compare against the order-1 extrapolant on
    // the same trailing samples.
    prev = neville_at_zero(samples, n - static_cast<std::size_t>(order), order - 1);
  }
  return {best, std::abs(best - prev)};
}

std::pair<Complex, double> extrapolate_eps(
    std::span<const std::pair<double, Complex>> samples) {
  if (samples.size() < 2) throw ContractError("extrapolate_eps: need >= 2 samples");
  return extrapolate_eps(samples, static_cast<int>(samples.size()) - 1);
}

}  // namespace udw::quad
