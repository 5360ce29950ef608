#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spsw/analytics.hpp"
#include "spsw/attacks.hpp"
#include "spsw/baseline.hpp"
#include "spsw/codebook.hpp"
#include "spsw/csv.hpp"
#include "spsw/error.hpp"
#include "spsw/experiments.hpp"
#include "spsw/fakegen.hpp"
#include "spsw/metadata.hpp"
#include "spsw/rng.hpp"
#include "spsw/sample_data.hpp"
#include "spsw/watermark.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::uint64_t kDefaultBaseSeed = 20240501;
constexpr std::size_t kDefaultSampleRows = 10000;

double round9(double v) {
  return static_cast<double>(std::llround(v * 1e9)) / 1e9;
}

std::vector<std::string> split(const std::string& text, char delim) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == delim) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw spsw::ValidationError("cannot parse number: '" + text + "'");
  }
}

std::uint64_t parse_count(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw spsw::ValidationError("cannot parse integer: '" + text + "'");
  }
}

// "0.5", "0.1,0.2", or "start:end:step" ranges, comma-combinable.
std::vector<double> parse_ratio_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& piece : split(text, ',')) {
    if (piece.find(':') == std::string::npos) {
      values.push_back(round9(parse_double(piece)));
      continue;
    }
    const std::vector<std::string> parts = split(piece, ':');
    if (parts.size() != 3)
      throw spsw::ValidationError("range must be start:end:step, got '" +
                                  piece + "'");
    const double start = parse_double(parts[0]);
    const double end = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (step <= 0.0) throw spsw::ValidationError("range step must be > 0");
    for (double v = start; v <= end + step * 0.5; v += step)
      values.push_back(round9(v));
  }
  if (values.empty()) throw spsw::ValidationError("empty value list");
  return values;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> values;
  for (const std::string& piece : split(text, ',')) {
    if (piece.find(':') == std::string::npos) {
      values.push_back(static_cast<std::size_t>(parse_count(piece)));
      continue;
    }
    const std::vector<std::string> parts = split(piece, ':');
    if (parts.size() != 3)
      throw spsw::ValidationError("range must be start:end:step, got '" +
                                  piece + "'");
    const std::uint64_t start = parse_count(parts[0]);
    const std::uint64_t end = parse_count(parts[1]);
    const std::uint64_t step = parse_count(parts[2]);
    if (step == 0) throw spsw::ValidationError("range step must be > 0");
    for (std::uint64_t v = start; v <= end; v += step)
      values.push_back(static_cast<std::size_t>(v));
  }
  if (values.empty()) throw spsw::ValidationError("empty value list");
  return values;
}

std::vector<std::string> make_user_ids(std::size_t n_u) {
  std::vector<std::string> ids;
  ids.reserve(n_u);
  for (std::size_t i = 0; i < n_u; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "user-%04zu", i);
    ids.emplace_back(buf);
  }
  return ids;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw spsw::IoError("cannot open for writing: " + path.string());
  out << text;
  out.flush();
  if (!out) throw spsw::IoError("write failed: " + path.string());
}

std::optional<std::size_t> resolve_column(const spsw::Schema& schema,
                                          const std::string& name,
                                          bool required) {
  if (name.empty()) return std::nullopt;
  const std::optional<std::size_t> idx = schema.index_of(name);
  if (!idx && required)
    throw spsw::ValidationError("no such column: '" + name + "'");
  return idx;
}

// Grid assembly order: built-in defaults, then the JSON config file, then
// explicit flags. pk_explicit distinguishes "left at the soft default (use
// column 'id' when present)" from a deliberate choice.
struct GridOptions {
  std::string config_path;
  std::string x_list;
  std::string p_list;
  std::string n_u_list;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::string pk_name = "id";

  CLI::App* sub = nullptr;

  void attach(CLI::App* cmd) {
    sub = cmd;
    cmd->add_option("--config", config_path,
                    "Grid config JSON (x_values, p_values, n_u_values, "
                    "trials, base_seed, pk_column)");
    cmd->add_option("--x", x_list, "Group sizes, e.g. 5 or 1:10:1");
    cmd->add_option("--p", p_list, "Deletion ratios, e.g. 0.1:0.9:0.1");
    cmd->add_option("--n-u", n_u_list, "User counts, e.g. 50 or 10:100:10");
    cmd->add_option("--trials", trials, "Trials per grid point");
    cmd->add_option("--base-seed", base_seed, "Base seed for trial seeds");
    cmd->add_option("--pk", pk_name,
                    "Primary-key column name; pass '' for none");
  }

  spsw::ExperimentGrid resolve(const spsw::Schema& schema) const {
    spsw::ExperimentGrid grid;
    grid.x_values = {5};
    grid.p_values = parse_ratio_list("0.1:0.9:0.1");
    grid.n_u_values = {50};
    grid.trials = 50;
    grid.base_seed = kDefaultBaseSeed;
    std::string pk = pk_name;
    bool pk_set = sub->count("--pk") > 0;

    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in)
        throw spsw::IoError("cannot open for reading: " + config_path);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw spsw::ValidationError(std::string("malformed grid config: ") +
                                    e.what());
      }
      try {
        if (doc.contains("x_values"))
          grid.x_values = doc["x_values"].get<std::vector<std::size_t>>();
        if (doc.contains("p_values"))
          grid.p_values = doc["p_values"].get<std::vector<double>>();
        if (doc.contains("n_u_values"))
          grid.n_u_values = doc["n_u_values"].get<std::vector<std::size_t>>();
        if (doc.contains("trials"))
          grid.trials = doc["trials"].get<std::size_t>();
        if (doc.contains("base_seed"))
          grid.base_seed = doc["base_seed"].get<std::uint64_t>();
        if (doc.contains("pk_column") && sub->count("--pk") == 0) {
          pk = doc["pk_column"].is_null()
                   ? std::string()
                   : doc["pk_column"].get<std::string>();
          pk_set = true;
        }
      } catch (const nlohmann::json::exception& e) {
        throw spsw::ValidationError(std::string("grid config has wrong "
                                                "shape: ") +
                                    e.what());
      }
      for (double& p : grid.p_values) p = round9(p);
    }

    if (sub->count("--x") > 0) grid.x_values = parse_count_list(x_list);
    if (sub->count("--p") > 0) grid.p_values = parse_ratio_list(p_list);
    if (sub->count("--n-u") > 0) grid.n_u_values = parse_count_list(n_u_list);
    if (sub->count("--trials") > 0) grid.trials = trials;
    if (sub->count("--base-seed") > 0) grid.base_seed = base_seed;

    grid.pk_column = resolve_column(schema, pk, /*required=*/pk_set);
    return grid;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spsw: traceable database fingerprints via sparse-priority fake "
      "tuples"};
  app.require_subcommand(1);

  // ---- sample ----
  struct {
    std::size_t n = kDefaultSampleRows;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
  } sample;
  {
    CLI::App* cmd =
        app.add_subcommand("sample", "Generate the synthetic demo table");
    cmd->add_option("--n", sample.n, "Rows to generate");
    cmd->add_option("--seed", sample.seed, "Generator seed");
    cmd->add_option("--out", sample.out, "Output CSV path")->required();
    cmd->callback([&] {
      spsw::save_table(spsw::make_sample_table(sample.n, sample.seed),
                       sample.out);
      std::cout << "wrote " << sample.out << " (" << sample.n << " rows)\n";
    });
  }

  // ---- assign ----
  struct {
    std::size_t users = 50;
    std::string ids;
    std::size_t x = 5;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
  } assign;
  {
    CLI::App* cmd = app.add_subcommand(
        "assign", "Assign sparsest-first watermark sequences to users");
    cmd->add_option("--users", assign.users, "Number of users");
    cmd->add_option("--ids", assign.ids,
                    "Comma-separated user ids (overrides --users)");
    cmd->add_option("--x", assign.x, "Fake tuples per group");
    cmd->add_option("--seed", assign.seed, "Default seed stored in metadata");
    cmd->add_option("--out", assign.out, "Metadata JSON path")->required();
    cmd->callback([&] {
      const std::vector<std::string> user_ids =
          assign.ids.empty() ? make_user_ids(assign.users)
                             : split(assign.ids, ',');
      spsw::WatermarkMetadata meta;
      meta.params.user_count = user_ids.size();
      meta.params.watermark_bits = spsw::watermark_length(user_ids.size());
      meta.params.group_size = assign.x;
      meta.params.seed = assign.seed;
      meta.codebook =
          spsw::assign_codebook(user_ids, meta.params.watermark_bits);
      spsw::save_metadata(meta, assign.out);
      std::cout << "assigned " << user_ids.size() << " users, "
                << meta.params.watermark_bits << "-bit watermarks -> "
                << assign.out << "\n";
    });
  }

  // ---- genfake ----
  struct {
    std::string db;
    std::string meta;
    std::string out;
    std::string generator = "mimic";
    std::string endpoint;
    int timeout_ms = 5000;
    int max_retries = 64;
    std::string pk;
    std::uint64_t seed = 0;
  } genfake;
  {
    CLI::App* cmd = app.add_subcommand(
        "genfake", "Generate fake tuples into the metadata file");
    cmd->add_option("--db", genfake.db, "Source table CSV")->required();
    cmd->add_option("--meta", genfake.meta, "Metadata JSON path")->required();
    cmd->add_option("--out", genfake.out,
                    "Output metadata path (default: --meta, in place)");
    cmd->add_option("--generator", genfake.generator,
                    "Fake-tuple source: mimic | external")
        ->check(CLI::IsMember({"mimic", "external"}));
    cmd->add_option("--endpoint", genfake.endpoint,
                    "External generator URL (external only)");
    cmd->add_option("--timeout-ms", genfake.timeout_ms,
                    "External request timeout");
    cmd->add_option("--max-retries", genfake.max_retries,
                    "Uniqueness resampling budget factor");
    cmd->add_option("--pk", genfake.pk,
                    "Primary-key column name (fresh ids, excluded from "
                    "matching)");
    cmd->add_option("--seed", genfake.seed,
                    "Generator seed (default: seed stored in metadata)");
    cmd->callback([&, cmd] {
      spsw::WatermarkMetadata meta = spsw::load_metadata(genfake.meta);
      const spsw::Table table = spsw::load_table(genfake.db);
      spsw::GeneratorSpec spec;
      if (genfake.generator == "external") {
        if (genfake.endpoint.empty())
          throw spsw::ValidationError(
              "--endpoint is required for the external generator");
        spec.kind = spsw::GeneratorSpec::Kind::external_service;
        spec.endpoint = genfake.endpoint;
      } else {
        spec.kind = spsw::GeneratorSpec::Kind::statistical_mimic;
      }
      spec.timeout_ms = genfake.timeout_ms;
      spec.max_retries = genfake.max_retries;
      spec.seed = cmd->count("--seed") > 0 ? genfake.seed : meta.params.seed;
      spec.pk_column =
          resolve_column(table.schema(), genfake.pk, /*required=*/true);
      meta.fake_tuples =
          spsw::generate_fake_tuples(table, meta.params.watermark_bits,
                                     meta.params.group_size, spec);
      const std::string out = genfake.out.empty() ? genfake.meta : genfake.out;
      spsw::save_metadata(meta, out);
      std::cout << "generated " << meta.fake_tuples.total()
                << " fake tuples (" << meta.params.watermark_bits
                << " groups of " << meta.params.group_size << ") -> " << out
                << "\n";
    });
  }

  // ---- embed ----
  struct {
    std::string db;
    std::string meta;
    std::string user;
    std::string out;
    std::uint64_t seed = 0;
  } embed;
  {
    CLI::App* cmd = app.add_subcommand(
        "embed", "Embed one user's watermark into a table copy");
    cmd->add_option("--db", embed.db, "Source table CSV")->required();
    cmd->add_option("--meta", embed.meta, "Metadata JSON path")->required();
    cmd->add_option("--user", embed.user, "Recipient user id")->required();
    cmd->add_option("--out", embed.out, "Watermarked CSV path")->required();
    cmd->add_option("--seed", embed.seed,
                    "Placement seed (default: seed stored in metadata)");
    cmd->callback([&, cmd] {
      const spsw::WatermarkMetadata meta = spsw::load_metadata(embed.meta);
      const spsw::Table table = spsw::load_table(embed.db);
      if (meta.fake_tuples.groups.empty())
        throw spsw::ValidationError(
            "metadata has no fake tuples; run genfake first");
      const std::optional<std::size_t> idx =
          meta.codebook.find_user(embed.user);
      if (!idx)
        throw spsw::ValidationError("unknown user: '" + embed.user + "'");
      const std::uint64_t seed =
          cmd->count("--seed") > 0 ? embed.seed : meta.params.seed;
      const spsw::WatermarkSequence& w = meta.codebook.entry(*idx).watermark;
      // Same per-user derivation as bulk distribution, so one user's copy
      // can be regenerated independently.
      const spsw::Table marked =
          spsw::embed(table, w, meta.fake_tuples, spsw::mix_seed({seed, *idx}));
      spsw::save_table(marked, embed.out);
      std::cout << "embedded " << w.to_string() << " for " << embed.user
                << " (" << marked.n() - table.n() << " insertions) -> "
                << embed.out << "\n";
    });
  }

  // ---- extract ----
  struct {
    std::string db;
    std::string meta;
  } extract;
  {
    CLI::App* cmd = app.add_subcommand(
        "extract", "Extract the watermark from a leaked table and identify "
                   "suspects");
    cmd->add_option("--db", extract.db, "Leaked table CSV")->required();
    cmd->add_option("--meta", extract.meta, "Metadata JSON path")->required();
    cmd->callback([&] {
      const spsw::WatermarkMetadata meta = spsw::load_metadata(extract.meta);
      const spsw::Table table = spsw::load_table(extract.db);
      if (meta.fake_tuples.groups.empty())
        throw spsw::ValidationError(
            "metadata has no fake tuples; run genfake first");
      const spsw::WatermarkSequence extracted =
          spsw::extract(table, meta.fake_tuples);
      const spsw::ExtractionResult result =
          spsw::identify(extracted, meta.codebook);
      nlohmann::json doc;
      doc["extracted"] = result.extracted.to_string();
      doc["exact_match"] = result.exact_match
                               ? nlohmann::json(*result.exact_match)
                               : nlohmann::json(nullptr);
      nlohmann::json suspects = nlohmann::json::array();
      for (const spsw::Suspect& s : result.suspects)
        suspects.push_back(
            {{"user", s.user_id}, {"distance", s.distance}});
      doc["suspects"] = std::move(suspects);
      std::cout << doc.dump(2) << "\n";
    });
  }

  // ---- attack ----
  struct {
    std::string db;
    double p = 0.0;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
  } attack;
  {
    CLI::App* cmd = app.add_subcommand(
        "attack", "Randomly delete a fraction of a table's rows");
    cmd->add_option("--db", attack.db, "Input table CSV")->required();
    cmd->add_option("--p", attack.p, "Deletion ratio in [0,1]")->required();
    cmd->add_option("--seed", attack.seed, "Attack seed");
    cmd->add_option("--out", attack.out, "Attacked CSV path")->required();
    cmd->callback([&] {
      const spsw::Table table = spsw::load_table(attack.db);
      const spsw::Table attacked =
          spsw::delete_random(table, spsw::AttackSpec{attack.p, attack.seed});
      spsw::save_table(attacked, attack.out);
      std::cout << "deleted " << table.n() - attacked.n() << " of "
                << table.n() << " rows -> " << attack.out << "\n";
    });
  }

  // ---- theory ----
  struct {
    std::size_t n = kDefaultSampleRows;
    std::size_t x = 5;
    std::size_t n_u = 50;
    std::size_t length = 0;
    std::string p = "0.1:0.9:0.1";
    std::string out;
  } theory;
  {
    CLI::App* cmd = app.add_subcommand(
        "theory", "Evaluate the closed-form robustness/transparency table");
    cmd->add_option("--n", theory.n, "Table size");
    cmd->add_option("--x", theory.x, "Fake tuples per group");
    cmd->add_option("--n-u", theory.n_u, "User count");
    cmd->add_option("--L", theory.length,
                    "Watermark bits (default: ceil(log2 n_u))");
    cmd->add_option("--p", theory.p, "Deletion ratios, e.g. 0.1:0.9:0.1");
    cmd->add_option("--out", theory.out, "Output CSV path (default: stdout)");
    cmd->callback([&, cmd] {
      const std::size_t length = cmd->count("--L") > 0
                                     ? theory.length
                                     : spsw::watermark_length(theory.n_u);
      std::vector<spsw::TheoryPoint> points;
      for (double p : parse_ratio_list(theory.p))
        points.push_back(spsw::evaluate_theory_point(theory.n, p, theory.x,
                                                     length, theory.n_u));
      const std::string csv = spsw::theory_csv(points);
      if (theory.out.empty()) {
        std::cout << csv;
      } else {
        write_text_file(theory.out, csv);
        std::cout << points.size() << " theory points -> " << theory.out
                  << "\n";
      }
    });
  }

  // ---- experiment ----
  struct {
    std::string db;
    std::string out;
    std::string plot;
    GridOptions grid;
  } robustness;
  struct {
    std::string n_u_list = "10:100:10";
    std::size_t x = 5;
    std::string out;
  } transparency;
  struct {
    std::string db;
    std::string out;
    std::string plot;
    GridOptions grid;
  } comparison;
  {
    CLI::App* cmd = app.add_subcommand(
        "experiment", "Seeded Monte Carlo experiment grids");
    cmd->require_subcommand(1);

    CLI::App* rob = cmd->add_subcommand(
        "robustness", "Embed/attack/extract trials across a grid");
    rob->add_option("--db", robustness.db,
                    "Source table CSV (default: built-in sample)");
    rob->add_option("--out", robustness.out, "Trial records CSV")->required();
    rob->add_option("--plot-data", robustness.plot,
                    "Aggregated series CSV (mean rates per grid point)");
    robustness.grid.attach(rob);
    rob->callback([&] {
      const spsw::Table table =
          robustness.db.empty()
              ? spsw::make_sample_table(kDefaultSampleRows, kDefaultSeed)
              : spsw::load_table(robustness.db);
      const spsw::ExperimentGrid grid =
          robustness.grid.resolve(table.schema());
      const std::vector<spsw::TrialRecord> records =
          spsw::run_robustness(table, grid);
      write_text_file(robustness.out, spsw::records_to_csv(records));
      if (!robustness.plot.empty())
        write_text_file(robustness.plot, spsw::plot_data_csv(records));
      std::cout << records.size() << " trial records -> " << robustness.out
                << "\n";
    });

    CLI::App* tra = cmd->add_subcommand(
        "transparency", "Measured insertions vs the worst-case bound");
    tra->add_option("--n-u", transparency.n_u_list, "User counts");
    tra->add_option("--x", transparency.x, "Fake tuples per group");
    tra->add_option("--out", transparency.out,
                    "Output CSV path (default: stdout)");
    tra->callback([&] {
      const std::vector<spsw::TransparencyPoint> points =
          spsw::run_transparency(parse_count_list(transparency.n_u_list),
                                 transparency.x);
      const std::string csv = spsw::transparency_to_csv(points);
      if (transparency.out.empty()) {
        std::cout << csv;
      } else {
        write_text_file(transparency.out, csv);
        std::cout << points.size() << " transparency points -> "
                  << transparency.out << "\n";
      }
    });

    CLI::App* comp = cmd->add_subcommand(
        "comparison", "Paired trials against the grouped baseline scheme");
    comp->add_option("--db", comparison.db,
                     "Source table CSV (default: built-in sample)");
    comp->add_option("--out", comparison.out, "Trial records CSV")
        ->required();
    comp->add_option("--plot-data", comparison.plot,
                     "Aggregated series CSV (mean rates per grid point)");
    comparison.grid.attach(comp);
    comp->callback([&] {
      const spsw::Table table =
          comparison.db.empty()
              ? spsw::make_sample_table(kDefaultSampleRows, kDefaultSeed)
              : spsw::load_table(comparison.db);
      const spsw::ExperimentGrid grid =
          comparison.grid.resolve(table.schema());
      const std::vector<spsw::TrialRecord> records =
          spsw::run_comparison(table, grid);
      write_text_file(comparison.out, spsw::records_to_csv(records));
      if (!comparison.plot.empty())
        write_text_file(comparison.plot, spsw::plot_data_csv(records));
      std::cout << records.size() << " trial records -> " << comparison.out
                << "\n";
    });
  }

  // ---- baseline-embed ----
  struct {
    std::string db;
    std::string watermark;
    std::size_t x = 5;
    std::string key = "baseline-key";
    std::uint64_t seed = kDefaultSeed;
    std::string pk;
    std::string out;
    std::string state;
  } bl_embed;
  {
    CLI::App* cmd = app.add_subcommand(
        "baseline-embed",
        "Embed a watermark with the grouped baseline scheme");
    cmd->add_option("--db", bl_embed.db, "Source table CSV")->required();
    cmd->add_option("--watermark", bl_embed.watermark,
                    "Bitstring to embed, e.g. 10110")
        ->required();
    cmd->add_option("--x", bl_embed.x, "Fake tuples per group");
    cmd->add_option("--key", bl_embed.key, "Classification secret");
    cmd->add_option("--seed", bl_embed.seed, "Generation seed");
    cmd->add_option("--pk", bl_embed.pk, "Primary-key column name");
    cmd->add_option("--out", bl_embed.out, "Watermarked CSV path")
        ->required();
    cmd->add_option("--state", bl_embed.state,
                    "Secret embedding-state JSON path")
        ->required();
    cmd->callback([&] {
      const spsw::Table table = spsw::load_table(bl_embed.db);
      const spsw::WatermarkSequence w =
          spsw::WatermarkSequence::from_string(bl_embed.watermark);
      spsw::BaselineParams params;
      params.length = w.length();
      params.group_size = bl_embed.x;
      params.key = bl_embed.key;
      const std::optional<std::size_t> pk =
          resolve_column(table.schema(), bl_embed.pk, /*required=*/true);
      const spsw::BaselineEmbedResult result =
          spsw::baseline_embed(table, w, params, bl_embed.seed, pk);
      spsw::save_table(result.table, bl_embed.out);
      spsw::save_baseline_state(result.state, bl_embed.state);
      std::cout << "embedded " << w.to_string() << " ("
                << result.table.n() - table.n() << " insertions) -> "
                << bl_embed.out << "\n";
    });
  }

  // ---- baseline-extract ----
  struct {
    std::string db;
    std::string state;
    std::string key = "baseline-key";
  } bl_extract;
  {
    CLI::App* cmd = app.add_subcommand(
        "baseline-extract",
        "Extract a baseline watermark from a leaked table");
    cmd->add_option("--db", bl_extract.db, "Leaked table CSV")->required();
    cmd->add_option("--state", bl_extract.state,
                    "Secret embedding-state JSON path")
        ->required();
    cmd->add_option("--key", bl_extract.key, "Classification secret");
    cmd->callback([&] {
      const spsw::Table table = spsw::load_table(bl_extract.db);
      const spsw::BaselineState state =
          spsw::load_baseline_state(bl_extract.state);
      spsw::BaselineParams params;
      params.length = state.groups.size();
      params.group_size =
          state.groups.empty() || state.groups[0].empty()
              ? 1
              : state.groups[0].size();
      params.key = bl_extract.key;
      const spsw::WatermarkSequence extracted =
          spsw::baseline_extract(table, state, params);
      nlohmann::json doc;
      doc["extracted"] = extracted.to_string();
      std::cout << doc.dump(2) << "\n";
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 64;
  } catch (const spsw::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 74;
  } catch (const spsw::TransportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 69;
  } catch (const spsw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
