#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "temple/lagrange.hpp"
#include "temple/scalar_oracle.hpp"

namespace temple::io {

/// `x_center,eta,v,p,q`, one row per cell, 17 significant digits.
void write_cells_csv(std::ostream& out, const CellField& field);

/// Long format `t,x_node,gamma`.
void write_gamma_csv(std::ostream& out, const GammaField& gamma);
/// Only the rows whose time matches one of `times` (to 1e-12).
void write_gamma_csv(std::ostream& out, const GammaField& gamma, std::span<const double> times);

/// `y,rho`.
void write_profile_csv(std::ostream& out, std::span<const double> ys, std::span<const double> rho);
void write_profile_csv(std::ostream& out, const ScalarField& field);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& content);

}  // namespace temple::io
