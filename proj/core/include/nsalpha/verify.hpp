#pragma once

#include <string>
#include <vector>

#include "nsalpha/energy_ledger.hpp"
#include "nsalpha/snapshot.hpp"

namespace nsalpha {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant suite for a stored state: solenoidality, zero mean, reality,
/// truncation, and the ledger rows (energy inequality, monotone time,
/// consistency of the last row with the snapshot, decay when unforced).
std::vector<CheckResult> verify_run(const Snapshot& snapshot, const EnergyLedger& ledger);

}  // namespace nsalpha
