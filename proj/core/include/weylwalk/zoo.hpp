#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "weylwalk/walk.hpp"

namespace weylwalk::zoo {

/// S|r><r| + S^dagger|l><l|.
WalkSpec massless_1d(LatticeScale scale = {});
/// exp(-i m dt sigma_x) (S|r><r| + S^dagger|l><l|).
WalkSpec massive_1d(double mass, LatticeScale scale = {});
/// T_x T_y T_z with T_b = S_b|up_b><up_b| + S_b^dagger|down_b><down_b|.
WalkSpec bb_weyl_3d(LatticeScale scale = {});
/// The same product with up/down swapped (sigma_b -> -sigma_b).
WalkSpec bb_weyl_3d_left(LatticeScale scale = {});
/// T_x T_y T_z with T_b = exp(-i a P_b J_b), spin-1.
WalkSpec spin1_3d(LatticeScale scale = {});
/// exp(-i m dt beta) (right BCC walk (+) left BCC walk); beta swaps the blocks.
WalkSpec dirac_3d(double mass, LatticeScale scale = {});

/// (J_i)_{jk} = -i epsilon_{ijk}.
Matrix spin1_generator(int axis);

struct ZooEntry {
  std::string name;
  std::string summary;
  bool massive = false;
  std::function<WalkSpec(double mass, LatticeScale)> build;
};

std::span<const ZooEntry> entries();
/// Throws std::out_of_range for an unknown name.
const ZooEntry& find(std::string_view name);

}  // namespace weylwalk::zoo
