#include "rsw/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>

namespace rsw {

namespace {

constexpr std::array<char, 4> magic{'R', 'S', 'W', '8'};
constexpr std::uint32_t format_version = 1;
constexpr std::size_t header_bytes = 80;

// Little-endian packing regardless of host order.
template <class T>
void put(std::vector<unsigned char>& out, T value) {
  std::array<unsigned char, sizeof(T)> b;
  std::memcpy(b.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  out.insert(out.end(), b.begin(), b.end());
}

template <class T>
T get(const unsigned char* in) {
  std::array<unsigned char, sizeof(T)> b;
  std::memcpy(b.data(), in, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T value;
  std::memcpy(&value, b.data(), sizeof(T));
  return value;
}

struct Header {
  ContainerKind kind;
  UnitMode units;
  std::array<std::size_t, 3> n;
  std::array<double, 3> L;
  std::uint32_t rep;
  std::uint32_t components;
  double t;
};

void put_header(std::vector<unsigned char>& out, const Header& h) {
  out.insert(out.end(), magic.begin(), magic.end());
  put<std::uint32_t>(out, format_version);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.kind));
  put<std::uint32_t>(out, h.units == UnitMode::si ? 1u : 0u);
  for (auto v : h.n) put<std::uint64_t>(out, v);
  for (auto v : h.L) put<double>(out, v);
  put<std::uint32_t>(out, h.rep);
  put<std::uint32_t>(out, h.components);
  put<double>(out, h.t);
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Header parse_header(const std::vector<unsigned char>& b, ContainerKind expect, const std::filesystem::path& path) {
  if (b.size() < header_bytes || std::memcmp(b.data(), magic.data(), 4) != 0)
    throw IoError(path.string() + ": not an RSW8 container");
  const unsigned char* p = b.data();
  if (get<std::uint32_t>(p + 4) != format_version) throw IoError(path.string() + ": unsupported version");
  Header h{};
  h.kind = static_cast<ContainerKind>(get<std::uint32_t>(p + 8));
  if (h.kind != expect) throw IoError(path.string() + ": wrong container kind");
  const auto units = get<std::uint32_t>(p + 12);
  if (units > 1) throw IoError(path.string() + ": bad unit mode");
  h.units = units == 1 ? UnitMode::si : UnitMode::natural;
  for (std::size_t i = 0; i < 3; ++i) {
    h.n[i] = get<std::uint64_t>(p + 16 + 8 * i);
    h.L[i] = get<double>(p + 40 + 8 * i);
  }
  h.rep = get<std::uint32_t>(p + 64);
  h.components = get<std::uint32_t>(p + 68);
  h.t = get<double>(p + 72);
  return h;
}

Grid3 grid_from(const Header& h, const std::filesystem::path& path) {
  try {
    return Grid3(h.n, h.L);
  } catch (const PreconditionError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

void write_medium_file(const std::filesystem::path& path, const MediumFile& m) {
  const std::size_t n = m.grid.size();
  if (m.eps.size() != n || m.mu.size() != n) throw IoError("medium file: sample count mismatch");
  std::vector<unsigned char> out;
  out.reserve(header_bytes + 16 * n);
  put_header(out, {ContainerKind::medium, m.units, m.grid.shape(), m.grid.lengths(), 0, 2, 0.0});
  for (double v : m.eps) put<double>(out, v);
  for (double v : m.mu) put<double>(out, v);
  spill(path, out);
}

MediumFile read_medium_file(const std::filesystem::path& path) {
  const auto b = slurp(path);
  const Header h = parse_header(b, ContainerKind::medium, path);
  MediumFile m{grid_from(h, path), h.units, {}, {}};
  const std::size_t n = m.grid.size();
  if (h.components != 2 || b.size() != header_bytes + 16 * n) throw IoError(path.string() + ": truncated medium data");
  const unsigned char* p = b.data() + header_bytes;
  m.eps.resize(n);
  m.mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.eps[i] = get<double>(p + 8 * i);
  for (std::size_t i = 0; i < n; ++i) m.mu[i] = get<double>(p + 8 * (n + i));
  return m;
}

void write_state_file(const std::filesystem::path& path, const StateFile& s) {
  const std::size_t n = s.grid.size();
  std::vector<unsigned char> out;
  out.reserve(header_bytes + 8 * 16 * n);
  put_header(out, {ContainerKind::state, s.units, s.grid.shape(), s.grid.lengths(), static_cast<std::uint32_t>(s.rep),
                   8, s.t});
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t p = 0; p < n; ++p) {
      put<double>(out, s.data[c][p].real());
      put<double>(out, s.data[c][p].imag());
    }
  spill(path, out);
}

StateFile read_state_file(const std::filesystem::path& path) {
  const auto b = slurp(path);
  const Header h = parse_header(b, ContainerKind::state, path);
  if (h.rep > 3) throw IoError(path.string() + ": bad representation tag");
  StateFile s(grid_from(h, path));
  s.units = h.units;
  s.rep = static_cast<Representation>(h.rep);
  s.t = h.t;
  const std::size_t n = s.grid.size();
  if (h.components != 8 || b.size() != header_bytes + 8 * 16 * n) throw IoError(path.string() + ": truncated state data");
  const unsigned char* p = b.data() + header_bytes;
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t at = 16 * (c * n + q);
      s.data[c][q] = cplx(get<double>(p + at), get<double>(p + at + 8));
    }
  return s;
}

StateField8 pack_em(const EMState& em) {
  StateField8 s(em.E.grid());
  for (std::size_t a = 0; a < 3; ++a) {
    s[a] = em.E[a];
    s[4 + a] = em.B[a];
  }
  return s;
}

EMState unpack_em(const StateField8& s, double t) {
  EMState em(s.grid());
  em.t = t;
  for (std::size_t a = 0; a < 3; ++a) {
    em.E[a] = s[a];
    em.B[a] = s[4 + a];
  }
  return em;
}

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), r.ptr);
}

void write_csv_slice(std::ostream& os, const StateField8& s, std::size_t y_index) {
  const Grid3& g = s.grid();
  if (y_index >= g.n(Axis::y)) throw PreconditionError("csv slice: y index out of range");
  os << "x,z,component,re,im\n";
  for (std::size_t k = 0; k < g.n(Axis::z); ++k)
    for (std::size_t i = 0; i < g.n(Axis::x); ++i) {
      const std::size_t p = g.index(i, y_index, k);
      const auto r = g.position(p);
      for (std::size_t c = 0; c < 8; ++c)
        os << format_double(r[0]) << ',' << format_double(r[2]) << ',' << c << ',' << format_double(s[c][p].real())
           << ',' << format_double(s[c][p].imag()) << '\n';
    }
}

void write_dispersion_csv(std::ostream& os, const std::vector<DispersionRow>& rows) {
  os << "kx,ky,kz,omega_measured,omega_theory,rel_err\n";
  for (const auto& r : rows)
    os << format_double(r.k[0]) << ',' << format_double(r.k[1]) << ',' << format_double(r.k[2]) << ','
       << format_double(r.omega_measured) << ',' << format_double(r.omega_theory) << ',' << format_double(r.rel_err)
       << '\n';
}

}  // namespace rsw
