#include "spdc/dispersion.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

OutOfValidityRange::OutOfValidityRange(double wavelength_um, double lo_um, double hi_um)
    : Error(fmt::format("wavelength {:.6g} um outside Sellmeier validity [{:.6g}, {:.6g}] um",
                        wavelength_um, lo_um, hi_um)),
      wavelength_um_(wavelength_um) {}

std::string to_string(Polarization p) {
  return p == Polarization::ordinary ? "ordinary" : "extraordinary";
}

std::string to_string(WaveRole r) {
  switch (r) {
    case WaveRole::pump: return "pump";
    case WaveRole::signal: return "signal";
    case WaveRole::idler: return "idler";
  }
  return "?";
}

Polarization parse_polarization(const std::string& s) {
  if (s == "o" || s == "ordinary") return Polarization::ordinary;
  if (s == "e" || s == "extraordinary") return Polarization::extraordinary;
  throw UnknownPolarizationAxis("unknown polarization '" + s + "'");
}

SellmeierFormula parse_formula_id(const std::string& id) {
  if (id == "pole_sum") return SellmeierFormula::pole_sum;
  if (id == "zernike") return SellmeierFormula::zernike;
  if (id == "pole_polynomial") return SellmeierFormula::pole_polynomial;
  if (id == "sellmeier") return SellmeierFormula::sellmeier;
  throw ConfigError("unknown Sellmeier formula_id '" + id + "'");
}

std::string to_string(SellmeierFormula f) {
  switch (f) {
    case SellmeierFormula::pole_sum: return "pole_sum";
    case SellmeierFormula::zernike: return "zernike";
    case SellmeierFormula::pole_polynomial: return "pole_polynomial";
    case SellmeierFormula::sellmeier: return "sellmeier";
  }
  return "?";
}

namespace {

bool coefficient_count_ok(SellmeierFormula f, std::size_t n) {
  switch (f) {
    case SellmeierFormula::zernike: return n == 5;
    case SellmeierFormula::pole_polynomial: return n >= 3;
    case SellmeierFormula::pole_sum:
    case SellmeierFormula::sellmeier: return n >= 3 && n % 2 == 1;  // A then (B, C) pairs
  }
  return false;
}

}  // namespace

SellmeierSet::SellmeierSet(SellmeierFormula formula, std::vector<double> coefficients, double lo_um,
                           double hi_um)
    : formula_(formula), coefficients_(std::move(coefficients)), lo_um_(lo_um), hi_um_(hi_um) {
  if (!coefficient_count_ok(formula_, coefficients_.size()))
    throw ConfigError(fmt::format("formula {} got {} coefficients", to_string(formula_),
                                  coefficients_.size()));
  if (!(lo_um_ > 0.0 && hi_um_ > lo_um_))
    throw ConfigError(fmt::format("invalid validity interval [{}, {}] um", lo_um_, hi_um_));
}

double SellmeierSet::index_squared_unchecked(double l) const {
  const auto& a = coefficients_;
  const double l2 = l * l;
  double n2 = a[0];
  switch (formula_) {
    case SellmeierFormula::pole_sum:
      for (std::size_t k = 1; k + 1 < a.size(); k += 2) n2 += a[k] / (l2 - a[k + 1]);
      break;
    case SellmeierFormula::zernike:
      n2 += a[1] / (l2 - a[2]) + a[3] * l2 / (l2 - a[4]);
      break;
    case SellmeierFormula::pole_polynomial: {
      n2 += a[1] / (l2 - a[2]);
      double p = l2;
      for (std::size_t j = 3; j < a.size(); ++j, p *= l2) n2 += a[j] * p;
      break;
    }
    case SellmeierFormula::sellmeier:
      for (std::size_t k = 1; k + 1 < a.size(); k += 2) n2 += a[k] * l2 / (l2 - a[k + 1]);
      break;
  }
  return n2;
}

double SellmeierSet::index(double wavelength_um) const {
  if (!contains(wavelength_um)) throw OutOfValidityRange(wavelength_um, lo_um_, hi_um_);
  const double n2 = index_squared_unchecked(wavelength_um);
  if (!(n2 > 1.0))
    throw Error(fmt::format("Sellmeier set yields n^2 = {} at {} um", n2, wavelength_um));
  return std::sqrt(n2);
}

CrystalModel CrystalModel::from_json(const nlohmann::json& doc) {
  CrystalModel m;
  try {
    m.name_ = doc.at("name").get<std::string>();
    m.source_ = doc.at("source").get<std::string>();
    m.uniaxial_ = doc.value("uniaxial", true);
    for (const auto& [axis_name, spec] : doc.at("axes").items()) {
      const auto validity = spec.at("validity_um").get<std::vector<double>>();
      if (validity.size() != 2) throw ConfigError("validity_um must be [lo, hi]");
      m.axes_.emplace(axis_name,
                      SellmeierSet(parse_formula_id(spec.at("formula_id").get<std::string>()),
                                   spec.at("coefficients").get<std::vector<double>>(),
                                   validity[0], validity[1]));
    }
    if (m.uniaxial_) {
      if (!m.axes_.count("o") || !m.axes_.count("e"))
        throw ConfigError("uniaxial crystal '" + m.name_ + "' needs axes 'o' and 'e'");
      m.polarization_axes_[Polarization::ordinary] = "o";
      m.polarization_axes_[Polarization::extraordinary] = "e";
    } else {
      for (const auto& [pol, axis_name] : doc.at("polarization_axes").items()) {
        const auto axis = axis_name.get<std::string>();
        if (!m.axes_.count(axis))
          throw ConfigError("polarization_axes references missing axis '" + axis + "'");
        m.polarization_axes_[parse_polarization(pol)] = axis;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("crystal document: ") + e.what());
  }
  m.document_ = doc;
  return m;
}

CrystalModel CrystalModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open crystal file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

const SellmeierSet& CrystalModel::axis(const std::string& axis_name) const {
  auto it = axes_.find(axis_name);
  if (it == axes_.end())
    throw UnknownPolarizationAxis("crystal '" + name_ + "' has no axis '" + axis_name + "'");
  return it->second;
}

const SellmeierSet& CrystalModel::axis_for(Polarization p) const {
  auto it = polarization_axes_.find(p);
  if (it == polarization_axes_.end())
    throw UnknownPolarizationAxis("crystal '" + name_ + "' has no axis for " + to_string(p) +
                                  " polarization");
  return axis(it->second);
}

double CrystalModel::lo_um(Polarization p) const {
  if (uniaxial_ && p == Polarization::extraordinary)
    return std::max(axis("o").lo_um(), axis("e").lo_um());
  return axis_for(p).lo_um();
}

double CrystalModel::hi_um(Polarization p) const {
  if (uniaxial_ && p == Polarization::extraordinary)
    return std::min(axis("o").hi_um(), axis("e").hi_um());
  return axis_for(p).hi_um();
}

double refractive_index(const CrystalModel& crystal, const WaveSpec& wave, double wavelength) {
  const double l_um = wavelength / units::um;
  if (!crystal.uniaxial() || wave.polarization == Polarization::ordinary)
    return crystal.axis_for(wave.polarization).index(l_um);

  const double no = crystal.axis("o").index(l_um);
  const double ne = crystal.axis("e").index(l_um);
  const double c = std::cos(wave.tuning_angle);
  const double s = std::sin(wave.tuning_angle);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double wavenumber(const CrystalModel& crystal, const WaveSpec& wave, double omega) {
  if (!(omega > 0.0)) throw Error("wavenumber: omega must be positive");
  return omega / units::c * refractive_index(crystal, wave, units::wavelength_from_omega(omega));
}

double inverse_group_velocity(const CrystalModel& crystal, const WaveSpec& wave, double omega,
                              double rel_step) {
  const double h = rel_step * omega;
  const double lo = units::omega_from_wavelength(crystal.hi_um(wave.polarization) * units::um);
  const double hi = units::omega_from_wavelength(crystal.lo_um(wave.polarization) * units::um);
  if (omega - 2.0 * h < lo || omega + 2.0 * h > hi)
    throw StencilOutOfRange(
        fmt::format("k' stencil around {:.6g} um leaves the validity range of '{}'",
                    units::wavelength_from_omega(omega) / units::um, crystal.name()));
  auto k = [&](double w) { return wavenumber(crystal, wave, w); };
  return (k(omega - 2 * h) - 8 * k(omega - h) + 8 * k(omega + h) - k(omega + 2 * h)) / (12 * h);
}

}  // namespace spdc
