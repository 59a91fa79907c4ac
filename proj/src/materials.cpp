#include "plasmon/materials.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plasmon::materials {

PermittivityTable load_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_table: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("load_table: empty file " + path);
    }
    // Tolerate whitespace and trailing CR in the header.
    std::string header;
    for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) header += c;
    }
    if (header != "lambda_nm,eps_re,eps_im") {
        throw std::runtime_error("load_table: bad header in " + path);
    }

    PermittivityTable t;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string f0, f1, f2;
        if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
            !std::getline(ss, f2, ',')) {
            throw std::runtime_error("load_table: parse failure at line " +
                                     std::to_string(lineno));
        }
        try {
            t.lambda_nm.push_back(std::stod(f0));
            t.eps_re.push_back(std::stod(f1));
            t.eps_im.push_back(std::stod(f2));
        } catch (const std::exception&) {
            throw std::runtime_error("load_table: parse failure at line " +
                                     std::to_string(lineno));
        }
    }
    if (t.lambda_nm.size() < 2) {
        throw std::runtime_error("load_table: need at least 2 rows");
    }
    for (size_t i = 1; i < t.lambda_nm.size(); ++i) {
        if (t.lambda_nm[i] <= t.lambda_nm[i - 1]) {
            throw std::runtime_error("load_table: wavelengths not strictly increasing");
        }
    }
    return t;
}

complex_t permittivity_at(const PermittivityTable& table, double lambda0_nm)
{
    const auto& x = table.lambda_nm;
    if (lambda0_nm < x.front() || lambda0_nm > x.back()) {
        throw std::out_of_range("permittivity_at: wavelength outside table range");
    }
    auto it = std::lower_bound(x.begin(), x.end(), lambda0_nm);
    size_t i = static_cast<size_t>(it - x.begin());
    if (i == 0) {
        return {table.eps_re[0], table.eps_im[0]};
    }
    if (x[i] == lambda0_nm) {
        return {table.eps_re[i], table.eps_im[i]};
    }
    const double w = (lambda0_nm - x[i - 1]) / (x[i] - x[i - 1]);
    return {table.eps_re[i - 1] + w * (table.eps_re[i] - table.eps_re[i - 1]),
            table.eps_im[i - 1] + w * (table.eps_im[i] - table.eps_im[i - 1])};
}

Material Material::constant(complex_t eps)
{
    Material m;
    m.is_constant_ = true;
    m.eps_ = eps;
    return m;
}

Material Material::tabulated(PermittivityTable table)
{
    Material m;
    m.is_constant_ = false;
    m.table_ = std::move(table);
    return m;
}

Material Material::from_file(const std::string& path)
{
    return tabulated(load_table(path));
}

complex_t Material::permittivity(double lambda0_nm) const
{
    return is_constant_ ? eps_ : permittivity_at(table_, lambda0_nm);
}

}  // namespace plasmon::materials
