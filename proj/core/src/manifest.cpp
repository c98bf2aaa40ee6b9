// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sil/features.hpp"

namespace sil {

using nlohmann::json;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input for digest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::ostringstream hex;
  hex << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(buf.str());
  return hex.str();
}

std::string serialize_manifest(const RunManifest& manifest) {
  json rec;
  rec["command"] = manifest.command;
  rec["config"] = manifest.config.empty() ? json::object() : json::parse(manifest.config);
  rec["inputs"] = manifest.input_digests;
  rec["tool_version"] = manifest.tool_version;
  rec["seed"] = manifest.seed;
  return rec.dump(2) + "\n";
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const std::string& config, const std::vector<std::string>& inputs,
                    std::uint64_t seed) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config = config;
  manifest.seed = seed;
  for (const auto& input : inputs) {
    manifest.input_digests[input] = file_digest(input);
  }
  std::ofstream out(output_path + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest for: " + output_path);
  out << serialize_manifest(manifest);
}

std::vector<std::string> verify_manifest(const RunManifest& manifest) {
  std::vector<std::string> stale;
  for (const auto& [path, digest] : manifest.input_digests) {
    if (file_digest(path) != digest) stale.push_back(path);
  }
  return stale;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  json rec = json::parse(in);
  RunManifest manifest;
  manifest.command = rec.value("command", "");
  manifest.config = rec.contains("config") ? rec["config"].dump() : "";
  const json inputs = rec.value("inputs", json::object());
  for (const auto& [key, value] : inputs.items()) {
    manifest.input_digests[key] = value.get<std::string>();
  }
  manifest.tool_version = rec.value("tool_version", "");
  manifest.seed = rec.value("seed", std::uint64_t{0});
  return manifest;
}

}  // namespace sil
