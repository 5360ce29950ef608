#pragma once

#include <filesystem>
#include <string>

#include "spsw/codebook.hpp"
#include "spsw/fakegen.hpp"

namespace spsw {

// The extraction side's secret state: parameters, user -> watermark mapping,
// and the fake tuples. fake_tuples.groups may be empty while the codebook
// has been assigned but fakes not yet generated.
struct WatermarkMetadata {
  SchemeParams params;
  Codebook codebook;
  FakeTupleSet fake_tuples;

  bool operator==(const WatermarkMetadata&) const = default;
};

// Enforces the cross-field invariants: codebook size and watermark lengths
// match params, and fake_tuples (when generated) has watermark_bits groups
// of group_size tuples under a consistent schema.
void validate_metadata(const WatermarkMetadata& meta);

std::string metadata_to_json(const WatermarkMetadata& meta);
WatermarkMetadata metadata_from_json(const std::string& text);

void save_metadata(const WatermarkMetadata& meta,
                   const std::filesystem::path& path);
WatermarkMetadata load_metadata(const std::filesystem::path& path);

}  // namespace spsw
