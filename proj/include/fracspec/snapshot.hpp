// FPFLD1 field snapshots.
//
// Layout: one ASCII header line "FPFLD1 <d> <n_1> ... <n_d> <grid|mode>\n"
// followed by N pairs of little-endian IEEE-754 doubles (re, im) in the
// canonical ordering of the representation. Round trips are bit-exact.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "fracspec/grid.hpp"

namespace fracspec {

using Snapshot = std::variant<GridField, ModeField>;

void write_snapshot(std::ostream& os, const GridField& field);
void write_snapshot(std::ostream& os, const ModeField& field);
Snapshot read_snapshot(std::istream& is);

void write_snapshot(const std::filesystem::path& path, const GridField& field);
void write_snapshot(const std::filesystem::path& path, const ModeField& field);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace fracspec
