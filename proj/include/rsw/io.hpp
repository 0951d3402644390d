#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "rsw/evolve.hpp"
#include "rsw/fields.hpp"
#include "rsw/medium.hpp"

namespace rsw {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary container layout is documented in docs/formats.md.
enum class ContainerKind : std::uint32_t { medium = 1, state = 2 };

struct MediumFile {
  Grid3 grid;
  UnitMode units = UnitMode::natural;
  std::vector<double> eps, mu;

  MediumSpec spec() const { return MediumSpec::sampled(grid, eps, mu, units); }
};

struct StateFile {
  explicit StateFile(const Grid3& g) : grid(g), data(g) {}
  Grid3 grid;
  UnitMode units = UnitMode::natural;
  Representation rep = Representation::psi;
  double t = 0.0;
  StateField8 data;
};

void write_medium_file(const std::filesystem::path& path, const MediumFile& m);
MediumFile read_medium_file(const std::filesystem::path& path);

void write_state_file(const std::filesystem::path& path, const StateFile& s);
StateFile read_state_file(const std::filesystem::path& path);

// The em representation is stored as (Ex, Ey, Ez, 0, Bx, By, Bz, 0).
StateField8 pack_em(const EMState& em);
EMState unpack_em(const StateField8& s, double t);

// Rows x,z,component,re,im for every sample with the given y index.
void write_csv_slice(std::ostream& os, const StateField8& s, std::size_t y_index);
void write_dispersion_csv(std::ostream& os, const std::vector<DispersionRow>& rows);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace rsw
