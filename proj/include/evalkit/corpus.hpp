/// @file corpus.hpp
/// @brief Line-delimited ingestion and persistence of instances and verdicts.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evalkit/types.hpp"

namespace evalkit::corpus {

/// Loads one-instance-per-line records, validating every invariant.
/// Errors carry the offending line number. Blank lines are skipped.
std::vector<EvalInstance> load_instances(const std::filesystem::path& path);

/// Parses instances from an in-memory string (same rules as load_instances).
std::vector<EvalInstance> parse_instances(const std::string& text,
                                          const std::string& origin = "<memory>");

/// Writes verdicts one record per line plus an adjacent manifest file
/// (path + ".manifest"). Every verdict id must come from `known_ids`.
void persist_verdicts(const std::vector<Verdict>& verdicts,
                      const RunManifest& manifest,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& known_ids);

std::vector<Verdict> load_verdicts(const std::filesystem::path& path);

void persist_instances(const std::vector<EvalInstance>& instances,
                       const std::filesystem::path& path);

RunManifest load_manifest(const std::filesystem::path& path);

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string content_digest(const std::filesystem::path& path);
std::string content_digest_of(const std::string& bytes);

}  // namespace evalkit::corpus
