#pragma once

#include <vector>

#include "nsalpha/csv.hpp"

namespace nsalpha {

/// One row of the energy balance
///   ||u(t)||^2 + 2 nu int_0^t ||u||_{H^1 hom}^2 <= ||u0||^2 + 2 int_0^t <f, u>.
struct LedgerRow {
  double t = 0.0;
  double energy = 0.0;       // ||u(t)||^2
  double dissipation = 0.0;  // cumulative 2 nu int ||u||_{H^1 hom}^2
  double work = 0.0;         // cumulative 2 int <f, u>
  double slack = 0.0;        // ||u0||^2 + work - energy - dissipation
  double allowance = 0.0;    // tolerated negative slack at this row

  bool operator==(const LedgerRow&) const = default;
};

class EnergyLedger {
 public:
  static constexpr double kRelativeFloor = 1e-6;

  EnergyLedger() = default;
  /// Starts the ledger with the row (t0, ||u0||^2, 0, 0, 0).
  EnergyLedger(double t0, double initial_energy);

  const std::vector<LedgerRow>& rows() const { return rows_; }
  const LedgerRow& back() const { return rows_.back(); }
  bool empty() const { return rows_.empty(); }
  double initial_energy() const { return rows_.empty() ? 0.0 : rows_.front().energy; }

  /// Appends a row and throws InvariantViolation if slack < -allowance.
  void append(const LedgerRow& row);

  /// Largest |slack| over the rows; the equality drift of the discrete scheme.
  double equality_drift() const;

  static std::vector<std::string> columns();
  CsvTable to_csv() const;
  /// Rebuilds a ledger from its CSV form without re-checking rows.
  static EnergyLedger from_csv(const CsvTable& table);

 private:
  std::vector<LedgerRow> rows_;
};

}  // namespace nsalpha
