// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sil {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance record written next to every output artifact
/// ("<output>.manifest.json"): the command line, a config snapshot,
/// content digests of the inputs, the tool version, and the seed.
struct RunManifest {
  std::string command;
  std::string config;  // JSON snapshot of the effective configuration
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
};

/// Hex digest of a file's bytes. Throws if the file cannot be read.
std::string file_digest(const std::string& path);

std::string serialize_manifest(const RunManifest& manifest);

/// Builds the manifest (digesting `inputs`) and writes it alongside
/// `output_path`.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::string& config, const std::vector<std::string>& inputs,
                    std::uint64_t seed);

/// Re-digests the manifest's inputs; returns the paths whose digests
/// no longer match.
std::vector<std::string> verify_manifest(const RunManifest& manifest);

RunManifest load_manifest(const std::string& path);

}  // namespace sil
