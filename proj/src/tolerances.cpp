#include "so3topo/tolerances.hpp"

#include <array>

namespace so3 {
namespace {

struct Entry {
  const char* name;
  double Tolerances::*field;
};

constexpr std::array<Entry, 23> kEntries{{
    {"unit_norm", &Tolerances::unit_norm},
    {"orthogonality", &Tolerances::orthogonality},
    {"axis_norm", &Tolerances::axis_norm},
    {"canonical_tie", &Tolerances::canonical_tie},
    {"loop_closure", &Tolerances::loop_closure},
    {"south_pole_margin", &Tolerances::south_pole_margin},
    {"chart_singular_alpha", &Tolerances::chart_singular_alpha},
    {"boundary_epsilon", &Tolerances::boundary_epsilon},
    {"boundary_stability", &Tolerances::boundary_stability},
    {"boundary_match", &Tolerances::boundary_match},
    {"lift_max_step", &Tolerances::lift_max_step},
    {"class_chord", &Tolerances::class_chord},
    {"parity_max_step", &Tolerances::parity_max_step},
    {"jump_threshold", &Tolerances::jump_threshold},
    {"random_loop_step", &Tolerances::random_loop_step},
    {"contract_step", &Tolerances::contract_step},
    {"grid_step", &Tolerances::grid_step},
    {"pole_min_distance", &Tolerances::pole_min_distance},
    {"pole_attempts", &Tolerances::pole_attempts},
    {"grid_fidelity", &Tolerances::grid_fidelity},
    {"grid_pin", &Tolerances::grid_pin},
    {"belt_step", &Tolerances::belt_step},
    {"belt_closed", &Tolerances::belt_closed},
}};

}  // namespace

bool Tolerances::set(std::string_view name, double value) {
  if (!(value > 0.0)) return false;
  for (const auto& e : kEntries) {
    if (name == e.name) {
      this->*(e.field) = value;
      return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(kEntries.size());
  for (const auto& e : kEntries) out.emplace_back(e.name, this->*(e.field));
  return out;
}

}  // namespace so3
