#include "nsalpha/energy_ledger.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsalpha/errors.hpp"

namespace nsalpha {

EnergyLedger::EnergyLedger(double t0, double initial_energy) {
  LedgerRow row;
  row.t = t0;
  row.energy = initial_energy;
  row.allowance = kRelativeFloor * initial_energy;
  rows_.push_back(row);
}

void EnergyLedger::append(const LedgerRow& row) {
  if (!rows_.empty() && !(row.t > rows_.back().t))
    throw std::invalid_argument("EnergyLedger::append: times must increase");
  if (!std::isfinite(row.energy) || row.slack < -row.allowance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy inequality violated at t=" << row.t << ": slack " << row.slack
        << " below -" << row.allowance;
    throw InvariantViolation(msg.str());
  }
  rows_.push_back(row);
}

double EnergyLedger::equality_drift() const {
  double worst = 0.0;
  for (const auto& r : rows_) worst = std::max(worst, std::abs(r.slack));
  return worst;
}

std::vector<std::string> EnergyLedger::columns() {
  return {"t", "energy", "dissipation", "work", "slack", "allowance"};
}

CsvTable EnergyLedger::to_csv() const {
  CsvTable table(columns());
  for (const auto& r : rows_)
    table.add_row({r.t, r.energy, r.dissipation, r.work, r.slack, r.allowance});
  return table;
}

EnergyLedger EnergyLedger::from_csv(const CsvTable& table) {
  if (table.columns() != columns())
    throw std::invalid_argument("EnergyLedger::from_csv: unexpected columns");
  EnergyLedger out;
  for (const auto& r : table.rows())
    out.rows_.push_back(LedgerRow{r[0], r[1], r[2], r[3], r[4], r[5]});
  return out;
}

}  // namespace nsalpha
