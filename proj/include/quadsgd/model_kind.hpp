#pragma once

#include <string>

#include "quadsgd/errors.hpp"

namespace quadsgd {

// The two learners under comparison: quadratically parameterized regression
// (predicts <x, v^2> and trains v) and plain linear regression (predicts
// <x, w> and trains w against the same responses).
enum class ModelKind { quadratic, linear };

inline const char* to_string(ModelKind kind) {
  return kind == ModelKind::quadratic ? "quadratic" : "linear";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "quadratic") return ModelKind::quadratic;
  if (s == "linear") return ModelKind::linear;
  throw ConfigError("unknown model kind '" + s + "'");
}

}  // namespace quadsgd
