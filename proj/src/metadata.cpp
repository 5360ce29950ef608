#include "spsw/metadata.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spsw/error.hpp"

namespace spsw {

using nlohmann::json;

void validate_metadata(const WatermarkMetadata& meta) {
  validate_params(meta.params);
  if (meta.codebook.size() != meta.params.user_count)
    throw ValidationError("codebook size does not match user_count");
  for (const auto& entry : meta.codebook.entries())
    if (entry.watermark.length() != meta.params.watermark_bits)
      throw ValidationError("codebook watermark length does not match params");

  if (meta.fake_tuples.groups.empty()) return;  // fakes not generated yet

  if (meta.fake_tuples.group_count() != meta.params.watermark_bits)
    throw ValidationError("fake tuple group count does not match params");
  for (const auto& group : meta.fake_tuples.groups)
    if (group.size() != meta.params.group_size)
      throw ValidationError("fake tuple group size does not match params");
  validate_fake_tuples(meta.fake_tuples, nullptr);
  for (std::size_t idx : meta.fake_tuples.match_subset)
    if (idx >= meta.fake_tuples.schema.arity())
      throw ValidationError("match subset index out of schema range");
}

std::string metadata_to_json(const WatermarkMetadata& meta) {
  json doc;
  doc["params"] = {{"n_u", meta.params.user_count},
                   {"L", meta.params.watermark_bits},
                   {"x", meta.params.group_size},
                   {"seed", meta.params.seed}};
  doc["codebook"] = json::array();
  for (const auto& entry : meta.codebook.entries())
    doc["codebook"].push_back(
        {{"user", entry.user_id}, {"watermark", entry.watermark.to_string()}});
  doc["schema"] = meta.fake_tuples.schema.attribute_names();
  doc["match_subset"] = meta.fake_tuples.match_subset;
  doc["fake_tuples"] = meta.fake_tuples.groups;
  return doc.dump(2) + "\n";
}

WatermarkMetadata metadata_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed metadata JSON: ") + e.what());
  }

  WatermarkMetadata meta;
  try {
    const auto& params = doc.at("params");
    meta.params.user_count = params.at("n_u").get<std::size_t>();
    meta.params.watermark_bits = params.at("L").get<std::size_t>();
    meta.params.group_size = params.at("x").get<std::size_t>();
    meta.params.seed = params.at("seed").get<std::uint64_t>();

    std::vector<CodebookEntry> entries;
    for (const auto& item : doc.at("codebook"))
      entries.push_back(
          {item.at("user").get<std::string>(),
           WatermarkSequence::from_string(
               item.at("watermark").get<std::string>())});
    meta.codebook = Codebook(std::move(entries));

    if (doc.contains("schema") && !doc["schema"].empty())
      meta.fake_tuples.schema =
          Schema(doc["schema"].get<std::vector<std::string>>());
    if (doc.contains("match_subset"))
      meta.fake_tuples.match_subset =
          doc["match_subset"].get<std::vector<std::size_t>>();
    if (doc.contains("fake_tuples"))
      meta.fake_tuples.groups =
          doc["fake_tuples"].get<std::vector<std::vector<Tuple>>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("metadata JSON has wrong shape: ") +
                          e.what());
  }

  validate_metadata(meta);
  return meta;
}

void save_metadata(const WatermarkMetadata& meta,
                   const std::filesystem::path& path) {
  validate_metadata(meta);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << metadata_to_json(meta);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

WatermarkMetadata load_metadata(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return metadata_from_json(buf.str());
}

}  // namespace spsw
