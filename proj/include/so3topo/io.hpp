#pragma once

// File formats shared with the command-line tool.
//
//   path JSON  {"basepoint": [w,x,y,z] (optional), "samples": [[w,x,y,z], ...]}
//   grid CSV   header "s,t,w,x,y,z", one node per line, row-major
//   chart CSV  torus "i,lambda,alpha,phi,disk_x,disk_y"; ball "i,vx,vy,vz"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "so3topo/homotopy.hpp"

namespace so3 {

struct PathDocument {
  RotationPath path;
  std::optional<UnitQuaterniond> basepoint;

  /// The document as a loop; the basepoint defaults to the identity.
  Loop to_loop(const Tolerances& tol = Tolerances::defaults()) const;
};

/// Throws InvalidInput on malformed JSON or schema violations.
PathDocument parse_path_json(std::string_view text);
PathDocument read_path_json(const std::filesystem::path& file);

std::string to_path_json(const RotationPath& path,
                         const std::optional<UnitQuaterniond>& basepoint = std::nullopt);
std::string to_path_json(const Loop& loop);

void write_grid_csv(std::ostream& out, const HomotopyGrid& grid);
/// Throws InvalidInput unless the rows form a complete rectangular grid.
HomotopyGrid read_grid_csv(std::istream& in,
                           const RotationMatrixd& basepoint = RotationMatrixd::identity());

/// Writes one line per sample. Throws SouthPoleSingular naming the first
/// sample outside the torus chart.
void write_torus_chart_csv(std::ostream& out, const RotationPath& path,
                           const Tolerances& tol = Tolerances::defaults());
void write_ball_chart_csv(std::ostream& out, const RotationPath& path,
                          const Tolerances& tol = Tolerances::defaults());

}  // namespace so3
