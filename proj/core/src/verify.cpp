#include "nsalpha/verify.hpp"

#include <cmath>
#include <sstream>

#include "nsalpha/csv.hpp"
#include "nsalpha/spectral_field.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace {

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> verify_run(const Snapshot& snapshot, const EnergyLedger& ledger) {
  std::vector<CheckResult> out;
  const SpectralField& u = snapshot.field;
  const TorusGrid& g = u.grid();
  const auto modes = g.modes();

  bool finite = true;
  double scale = 0.0;
  for (int d = 0; d < 3; ++d)
    for (const auto& c : u.component(d)) {
      finite = finite && std::isfinite(c.real()) && std::isfinite(c.imag());
      scale = std::max(scale, std::abs(c));
    }
  out.push_back(check("finite_coefficients", finite));

  const double div = divergence_residual(u);
  out.push_back(check("divergence_free", div <= SolenoidalField::kDivergenceTolerance,
                      "residual " + format_double(div)));

  double mean = 0.0;
  double asym = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (int d = 0; d < 3; ++d) {
      const Complex c = u.component(d)[i];
      if (modes[i].k2 == 0.0) mean = std::max(mean, std::abs(c));
      if (!modes[i].retained) outside = std::max(outside, std::abs(c));
      const int i3 = modes[i].z[2];
      if (i3 == 0 || i3 == g.n() / 2) {
        const std::size_t j = g.conjugate_index(i);
        asym = std::max(asym, std::abs(c - std::conj(u.component(d)[j])));
      }
    }
  }
  const double tol = 1e-12 * std::max(scale, 1e-300);
  out.push_back(check("zero_mean", mean == 0.0, "k=0 modulus " + format_double(mean)));
  out.push_back(check("real_field", asym <= tol, "conjugate mismatch " + format_double(asym)));
  out.push_back(check("dealiased", outside <= tol, "largest truncated mode " + format_double(outside)));

  const auto& rows = ledger.rows();
  if (rows.empty()) {
    out.push_back(check("ledger_present", false, "ledger has no rows"));
    return out;
  }
  bool times = true;
  bool inequality = true;
  double worst = 0.0;
  double worst_t = rows.front().t;
  bool unforced = true;
  bool decays = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.slack < -r.allowance) {
      inequality = false;
      if (r.slack + r.allowance < worst) {
        worst = r.slack + r.allowance;
        worst_t = r.t;
      }
    }
    unforced = unforced && r.work == 0.0;
    if (i > 0) {
      times = times && r.t > rows[i - 1].t;
      decays = decays && r.energy <= rows[i - 1].energy * (1.0 + 1e-10);
    }
  }
  out.push_back(check("ledger_time_increasing", times));
  out.push_back(check("energy_inequality", inequality,
                      inequality ? "all rows within allowance"
                                 : "excess " + format_double(-worst) + " at t=" + format_double(worst_t)));
  if (unforced) out.push_back(check("unforced_energy_nonincreasing", decays));

  const LedgerRow& last = rows.back();
  const double energy = std::pow(l2_norm(u), 2);
  if (std::abs(last.t - snapshot.header.t) <= 1e-12 * std::max(1.0, std::abs(last.t))) {
    const double rel = std::abs(energy - last.energy) / std::max(last.energy, 1e-300);
    out.push_back(check("ledger_matches_snapshot", rel <= 1e-10 || (energy == 0.0 && last.energy == 0.0),
                        "relative energy mismatch " + format_double(rel)));
  } else {
    out.push_back(check("ledger_matches_snapshot", false,
                        "snapshot t=" + format_double(snapshot.header.t) + " but ledger ends at t=" +
                            format_double(last.t)));
  }
  return out;
}

}  // namespace nsalpha
