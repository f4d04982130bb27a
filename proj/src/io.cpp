#include "temple/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace temple::io {

namespace {

struct Precision {
  explicit Precision(std::ostream& out) : out_(out), old_(out.precision(17)) {}
  ~Precision() { out_.precision(old_); }
  Precision(const Precision&) = delete;
  Precision& operator=(const Precision&) = delete;

private:
  std::ostream& out_;
  std::streamsize old_;
};

}  // namespace

void write_cells_csv(std::ostream& out, const CellField& field) {
  Precision guard(out);
  out << "x_center,eta,v,p,q\n";
  for (int j = 0; j < field.grid.n_cells; ++j) {
    const State& w = field.states[static_cast<std::size_t>(j)];
    out << field.grid.center(j) << ',' << w.eta << ',' << w.v << ',' << w.p() << ',' << w.q() << '\n';
  }
}

void write_gamma_csv(std::ostream& out, const GammaField& gamma) {
  Precision guard(out);
  out << "t,x_node,gamma\n";
  for (std::size_t n = 0; n < gamma.times.size(); ++n) {
    for (std::size_t j = 0; j < gamma.nodes.size(); ++j) {
      out << gamma.times[n] << ',' << gamma.nodes[j] << ',' << gamma.rows[n][j] << '\n';
    }
  }
}

void write_gamma_csv(std::ostream& out, const GammaField& gamma, std::span<const double> times) {
  Precision guard(out);
  out << "t,x_node,gamma\n";
  for (std::size_t n = 0; n < gamma.times.size(); ++n) {
    const bool keep = std::any_of(times.begin(), times.end(),
                                  [&](double t) { return std::abs(t - gamma.times[n]) <= 1e-12; });
    if (!keep) continue;
    for (std::size_t j = 0; j < gamma.nodes.size(); ++j) {
      out << gamma.times[n] << ',' << gamma.nodes[j] << ',' << gamma.rows[n][j] << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, std::span<const double> ys, std::span<const double> rho) {
  if (ys.size() != rho.size()) throw std::invalid_argument("profile size mismatch");
  Precision guard(out);
  out << "y,rho\n";
  for (std::size_t i = 0; i < ys.size(); ++i) out << ys[i] << ',' << rho[i] << '\n';
}

void write_profile_csv(std::ostream& out, const ScalarField& field) {
  Precision guard(out);
  out << "y,rho\n";
  for (int j = 0; j < field.grid.n_cells; ++j) {
    out << field.grid.center(j) << ',' << field.values[static_cast<std::size_t>(j)] << '\n';
  }
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace temple::io
