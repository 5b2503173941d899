#ifndef SCRAM_CHANNEL_HPP
#define SCRAM_CHANNEL_HPP

#include <complex>
#include <vector>

#include "scram/access.hpp"
#include "scram/rng.hpp"

namespace scram {

// One SA frame as seen by the receiver: per-symbol real positive fading
// magnitudes (known at the receiver), per-slot complex received values
// (idle slots carry pure noise), and the complex noise variance N0.
struct FrameRealization {
  std::vector<std::vector<double>> fading;     // [user][symbol]
  std::vector<std::complex<double>> received;  // [slot], 0-based
  double sigma2 = 0.0;
};

// sigma^2 = N0 = 1 / (rate * 10^(ebn0_db/10)) at unit symbol energy.
double ebn0_to_sigma2(double ebn0_db, double rate);

// i.i.d. Rayleigh magnitudes with E[h^2] = 1, strictly positive.
std::vector<double> draw_fading(Rng& rng, int count);

// Superimposes the faded BPSK symbols per the slot map and adds circular
// complex Gaussian noise of total variance sigma2 to every slot.
FrameRealization transmit(const SlotAssignment& assignment,
                          const std::vector<std::vector<double>>& symbols,
                          const std::vector<std::vector<double>>& fading, double sigma2,
                          Rng& rng);

}  // namespace scram

#endif
