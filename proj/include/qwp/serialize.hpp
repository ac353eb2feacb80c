#pragma once

#include <string>
#include <variant>

#include "qwp/qwp1d.hpp"
#include "qwp/qwp2d.hpp"
#include "qwp/wp1d.hpp"

namespace qwp {

// On-disk container, see docs/forest-format.md for the byte layout.
using ForestVariant = std::variant<Wp1dForest, Qwp1dForest, Wp2dForest, DualTreeForest2D>;

enum class ForestKind : std::uint8_t {
  wp1d = 0,
  qwp1d = 1,
  wp2d = 2,
  qwp2d = 3,
};

ForestKind forest_kind(const ForestVariant& forest);

void save_forest(const std::string& path, const ForestVariant& forest);
ForestVariant load_forest(const std::string& path);

}  // namespace qwp
