#include "scram/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scram {

double ebn0_to_sigma2(double ebn0_db, double rate) {
  if (!(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("code rate must lie in (0, 1]");
  }
  return 1.0 / (rate * std::pow(10.0, ebn0_db / 10.0));
}

std::vector<double> draw_fading(Rng& rng, int count) {
  std::vector<double> h(count);
  for (int i = 0; i < count; ++i) h[i] = rng.rayleigh_unit_power();
  return h;
}

FrameRealization transmit(const SlotAssignment& assignment,
                          const std::vector<std::vector<double>>& symbols,
                          const std::vector<std::vector<double>>& fading, double sigma2,
                          Rng& rng) {
  const int n_users = assignment.n_users();
  if (static_cast<int>(symbols.size()) != n_users ||
      static_cast<int>(fading.size()) != n_users) {
    throw std::invalid_argument("symbols/fading shape does not match assignment");
  }
  FrameRealization frame;
  frame.sigma2 = sigma2;
  frame.fading = fading;
  frame.received.assign(assignment.total_slots, {0.0, 0.0});
  for (int u = 0; u < n_users; ++u) {
    const auto& slots = assignment.slot_of[u];
    if (symbols[u].size() != slots.size() || fading[u].size() != slots.size()) {
      throw std::invalid_argument("symbols/fading row length mismatch for user " +
                                  std::to_string(u + 1));
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
      frame.received[slots[i] - 1] += fading[u][i] * symbols[u][i];
    }
  }
  const double per_component = std::sqrt(sigma2 / 2.0);
  for (auto& y : frame.received) {
    const double re = rng.normal();
    const double im = rng.normal();
    y += std::complex<double>(per_component * re, per_component * im);
  }
  return frame;
}

}  // namespace scram
