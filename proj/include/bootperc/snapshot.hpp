// Text snapshots of configurations.
//
//   BPGRID d L1 ... Ld closed|torus
//   n0 n1 n2 ...
//
// The run lengths alternate healthy/infected over the cells in layout order,
// starting with a (possibly empty) healthy run.
#pragma once

#include "bootperc/engine.hpp"

#include <iosfwd>
#include <string>

namespace bootperc {

void write_snapshot(std::ostream& out, const Configuration& config);
Configuration read_snapshot(std::istream& in);

std::string snapshot_to_string(const Configuration& config);
Configuration snapshot_from_string(const std::string& text);

void save_snapshot(const std::string& path, const Configuration& config);
Configuration load_snapshot(const std::string& path);

} // namespace bootperc
