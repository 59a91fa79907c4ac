#pragma once

#include <string>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon::materials {

// Tabulated complex permittivity vs vacuum wavelength in nm.
struct PermittivityTable {
    std::vector<double> lambda_nm;
    std::vector<double> eps_re;
    std::vector<double> eps_im;
};

// CSV with header "lambda_nm,eps_re,eps_im", strictly increasing wavelengths.
PermittivityTable load_table(const std::string& path);

// Piecewise-linear interpolation of both parts; throws outside the table range.
complex_t permittivity_at(const PermittivityTable& table, double lambda0_nm);

// Either a constant epsilon or a table lookup.
class Material {
  public:
    static Material constant(complex_t eps);
    static Material tabulated(PermittivityTable table);
    static Material from_file(const std::string& path);

    complex_t permittivity(double lambda0_nm) const;

  private:
    Material() = default;
    bool is_constant_ = true;
    complex_t eps_{1.0, 0.0};
    PermittivityTable table_;
};

}  // namespace plasmon::materials
