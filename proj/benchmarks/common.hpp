#pragma once

#include <vector>

#include "dagdiff/config.hpp"
#include "dagdiff/generator.hpp"

namespace bench {

// A handful of laid-out pairs shared by the suites.
inline const std::vector<dagdiff::DagPair>& pairs(dagdiff::DensityClass c) {
  static const auto make = [](dagdiff::DensityClass cls) {
    dagdiff::PipelineConfig cfg;
    cfg.gen.density_class = cls;
    cfg.gen.n_pairs = 16;
    cfg.gen.seed = 99;
    return dagdiff::sample_dataset(cfg.gen, cfg.layout);
  };
  static const auto tree = make(dagdiff::DensityClass::TreeLike);
  static const auto sparse = make(dagdiff::DensityClass::Sparse);
  return c == dagdiff::DensityClass::TreeLike ? tree : sparse;
}

}  // namespace bench
