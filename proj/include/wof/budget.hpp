#pragma once

namespace wof {

/// Which costs are charged against the displacement (or permutation) gain.
enum class CostMode {
  local_oscillator,  // gain - LO energy
  feedforward,       // gain - LO energy - theta_D * I
  erasure,           // gain - LO energy - theta_D * I_D
};

/// Ledger of one work-extraction scheme at a fixed operating point.
/// Energies in units of hbar*omega; information in nats.
struct WorkBudget {
  double nbar = 0.0;
  double gross_work = 0.0;         // displacement or permutation gain
  double lo_cost = 0.0;            // local-oscillator energy invested
  double feedforward_bound = 0.0;  // theta_D * I
  double erasure_heat = 0.0;       // theta_D * I_D

  double net_work(CostMode mode = CostMode::local_oscillator) const {
    const double base = gross_work - lo_cost;
    switch (mode) {
      case CostMode::feedforward:
        return base - feedforward_bound;
      case CostMode::erasure:
        return base - erasure_heat;
      case CostMode::local_oscillator:
        break;
    }
    return base;
  }

  double efficiency(CostMode mode = CostMode::local_oscillator) const {
    return nbar > 0.0 ? net_work(mode) / nbar : 0.0;
  }
};

}  // namespace wof
