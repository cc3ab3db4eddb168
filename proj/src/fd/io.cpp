/*
 * Copyright (c) 2026 The conelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fd/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "common/error.hpp"

namespace conelab::fd {

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

namespace {

constexpr char kMagic[5] = {'C', 'N', 'L', 'B', '1'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw IoError("truncated lattice dump");
  return v;
}

}  // namespace

void write_csv(const ScalarField& field, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  const Grid& g = field.grid();
  const int n = g.dim();
  for (int a = 0; a < n; ++a) os << 'x' << a + 1 << ',';
  os << "value\n";
  os << std::setprecision(17);
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!g.is_active(p)) continue;
    const Point x = g.position(p);
    for (int a = 0; a < n; ++a) os << x[a] << ',';
    os << field[p] << '\n';
  }
  if (!os) throw IoError("write failed: " + path);
}

ScalarField read_csv(const GridPtr& grid, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  const int n = grid->dim();
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": empty file");
  {
    std::ostringstream want;
    for (int a = 0; a < n; ++a) want << 'x' << a + 1 << ',';
    want << "value";
    if (line != want.str()) throw IoError(path + ": header must be '" + want.str() + "'");
  }
  ScalarField out(grid);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<int, kMaxGridDim> idx{0, 0, 0};
    std::string cell;
    for (int a = 0; a < n; ++a) {
      if (!std::getline(ls, cell, ',')) throw IoError(path + ":" + std::to_string(lineno) + ": missing column");
      const double x = std::stod(cell);
      const double t = (x - grid->origin()[a]) / grid->h();
      idx[a] = static_cast<int>(std::lround(t));
      if (std::abs(t - idx[a]) > 1e-6) throw IoError(path + ":" + std::to_string(lineno) + ": point off the lattice");
    }
    if (!std::getline(ls, cell)) throw IoError(path + ":" + std::to_string(lineno) + ": missing value");
    out[grid->linear({idx.data(), static_cast<std::size_t>(n)})] = std::stod(cell);
  }
  return out;
}

void write_binary(const ScalarField& field, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  const Grid& g = field.grid();
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
  for (int d : g.dims()) put<std::uint32_t>(os, static_cast<std::uint32_t>(d));
  for (double o : g.origin()) put<double>(os, o);
  put<double>(os, g.h());
  for (std::size_t p = 0; p < g.size(); ++p)
    put<double>(os, g.is_active(p) ? field[p] : std::numeric_limits<double>::quiet_NaN());
  if (!os) throw IoError("write failed: " + path);
}

LatticeDump read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  char magic[5];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw IoError(path + ": not a CNLB1 dump");
  LatticeDump d;
  const auto n = get<std::uint32_t>(is);
  if (n < 1 || n > 8) throw IoError(path + ": implausible dimension");
  std::size_t total = 1;
  for (std::uint32_t a = 0; a < n; ++a) {
    d.dims.push_back(get<std::uint32_t>(is));
    total *= d.dims.back();
  }
  for (std::uint32_t a = 0; a < n; ++a) d.origin.push_back(get<double>(is));
  d.h = get<double>(is);
  d.values.resize(total);
  is.read(reinterpret_cast<char*>(d.values.data()), static_cast<std::streamsize>(total * sizeof(double)));
  if (!is) throw IoError(path + ": truncated lattice dump");
  return d;
}

ScalarField field_from_dump(const GridPtr& grid, const LatticeDump& dump) {
  const int n = grid->dim();
  bool same = static_cast<int>(dump.dims.size()) == n && std::abs(dump.h - grid->h()) <= 1e-15 * grid->h();
  for (int a = 0; same && a < n; ++a) {
    same = static_cast<int>(dump.dims[a]) == grid->dims()[a] &&
           std::abs(dump.origin[a] - grid->origin()[a]) <= 1e-12 * std::max(1.0, std::abs(grid->origin()[a]));
  }
  if (!same) throw IoError("lattice dump geometry does not match the grid");
  return ScalarField(grid, dump.values);
}

}  // namespace conelab::fd
