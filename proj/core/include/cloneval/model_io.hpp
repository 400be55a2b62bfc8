#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cloneval/model.hpp"

namespace cloneval {

inline constexpr std::string_view kModelFormatVersion = "cloneval-model/1";

// Self-describing JSON document with kind, version and feature fingerprint.
// Doubles are written in shortest round-trip form so a reloaded model
// predicts bit-identically.
std::string serialize_model(const Model& model);

// Throws Error(kVersionMismatch), Error(kFeatureOrderMismatch) or
// Error(kMalformedDocument).
Model deserialize_model(std::string_view document);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace cloneval
