#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spdc {

enum class Polarization { ordinary, extraordinary };
enum class WaveRole { pump, signal, idler };

std::string to_string(Polarization p);
std::string to_string(WaveRole r);
Polarization parse_polarization(const std::string& s);

struct WaveSpec {
  WaveRole role = WaveRole::pump;
  Polarization polarization = Polarization::extraordinary;
  double center_wavelength = 0.0;  // m
  double tuning_angle = 0.0;       // rad, angle to the optic axis; ignored for ordinary waves
};

// Closed-form dispersion variants, wavelength in micrometres:
//   pole_sum        n^2 = A + sum_k B_k / (l^2 - C_k)                 [A, B1, C1, B2, C2, ...]
//   zernike         n^2 = A + B / (l^2 - C) + D l^2 / (l^2 - E)       [A, B, C, D, E]
//   pole_polynomial n^2 = A + B / (l^2 - C) + sum_j D_j l^(2j)        [A, B, C, D1, D2, ...]
//   sellmeier       n^2 = A + sum_k B_k l^2 / (l^2 - C_k)             [A, B1, C1, ...]
enum class SellmeierFormula { pole_sum, zernike, pole_polynomial, sellmeier };

SellmeierFormula parse_formula_id(const std::string& id);
std::string to_string(SellmeierFormula f);

class SellmeierSet {
 public:
  SellmeierSet(SellmeierFormula formula, std::vector<double> coefficients, double lo_um,
               double hi_um);

  // Throws OutOfValidityRange outside [lo, hi].
  double index(double wavelength_um) const;
  double index_squared_unchecked(double wavelength_um) const;

  bool contains(double wavelength_um) const {
    return wavelength_um >= lo_um_ && wavelength_um <= hi_um_;
  }
  double lo_um() const { return lo_um_; }
  double hi_um() const { return hi_um_; }
  SellmeierFormula formula() const { return formula_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  SellmeierFormula formula_;
  std::vector<double> coefficients_;
  double lo_um_;
  double hi_um_;
};

// Immutable after construction. Uniaxial crystals carry "o" and "e" axes and
// angle-tune the extraordinary index; other crystals map each polarization to
// a named principal axis with no angle dependence.
class CrystalModel {
 public:
  static CrystalModel from_json(const nlohmann::json& doc);
  static CrystalModel load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  bool uniaxial() const { return uniaxial_; }
  const nlohmann::json& document() const { return document_; }

  const SellmeierSet& axis(const std::string& name) const;
  const SellmeierSet& axis_for(Polarization p) const;

  // Intersection of the validity intervals of the axes a wave can touch.
  double lo_um(Polarization p) const;
  double hi_um(Polarization p) const;

 private:
  std::string name_;
  std::string source_;
  bool uniaxial_ = true;
  std::map<std::string, SellmeierSet> axes_;
  std::map<Polarization, std::string> polarization_axes_;
  nlohmann::json document_;
};

// n for the given polarization; extraordinary waves in a uniaxial crystal get
// n_e(theta) = [cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2]^(-1/2).
double refractive_index(const CrystalModel& crystal, const WaveSpec& wave, double wavelength);

// k = (omega / c) n(omega), 1/m.
double wavenumber(const CrystalModel& crystal, const WaveSpec& wave, double omega);

// dk/domega in s/m via a 5-point central difference with step rel_step * omega.
double inverse_group_velocity(const CrystalModel& crystal, const WaveSpec& wave, double omega,
                              double rel_step = 1e-5);

}  // namespace spdc
