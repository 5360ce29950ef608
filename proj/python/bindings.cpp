#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

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

namespace py = pybind11;

PYBIND11_MODULE(_spsw, m) {
  m.doc() = "Database fingerprinting via sparse-priority fake tuples";

  py::register_exception<spsw::Error>(m, "Error");

  // ---- store ----
  py::class_<spsw::Schema>(m, "Schema")
      .def(py::init<std::vector<std::string>>(), py::arg("attribute_names"))
      .def_property_readonly("attribute_names",
                             &spsw::Schema::attribute_names)
      .def("arity", &spsw::Schema::arity)
      .def("index_of", &spsw::Schema::index_of, py::arg("attribute"))
      .def(py::self == py::self);

  py::class_<spsw::Table>(m, "Table")
      .def(py::init<spsw::Schema>(), py::arg("schema"))
      .def(py::init<spsw::Schema, std::vector<spsw::Tuple>>(),
           py::arg("schema"), py::arg("rows"))
      .def_property_readonly("schema", &spsw::Table::schema)
      .def_property_readonly("rows", &spsw::Table::rows)
      .def("row", &spsw::Table::row, py::arg("i"))
      .def("append", &spsw::Table::append, py::arg("row"))
      .def("__len__", &spsw::Table::n)
      .def(py::self == py::self);

  m.def("default_match_subset", &spsw::default_match_subset,
        py::arg("schema"), py::arg("excluded") = std::nullopt);
  m.def(
      "canonical_key",
      [](const spsw::Tuple& tuple, const std::vector<std::size_t>& subset) {
        return spsw::canonical_key(tuple, subset).value;
      },
      py::arg("tuple"), py::arg("subset"));

  m.def("table_from_csv", &spsw::table_from_csv, py::arg("text"),
        py::arg("has_header"));
  m.def("table_to_csv", &spsw::table_to_csv, py::arg("table"));
  m.def("load_table", &spsw::load_table, py::arg("path"),
        py::arg("has_header") = true);
  m.def("save_table", &spsw::save_table, py::arg("table"), py::arg("path"));

  m.def("make_sample_table", &spsw::make_sample_table, py::arg("n"),
        py::arg("seed"));

  // ---- codebook ----
  py::class_<spsw::WatermarkSequence>(m, "WatermarkSequence")
      .def(py::init<std::size_t>(), py::arg("length"))
      .def_static("from_string", &spsw::WatermarkSequence::from_string,
                  py::arg("text"))
      .def_static("from_value", &spsw::WatermarkSequence::from_value,
                  py::arg("value"), py::arg("length"))
      .def("__len__", &spsw::WatermarkSequence::length)
      .def("bit", &spsw::WatermarkSequence::bit, py::arg("j"))
      .def("set_bit", &spsw::WatermarkSequence::set_bit, py::arg("j"),
           py::arg("value"))
      .def("popcount", &spsw::WatermarkSequence::popcount)
      .def("value", &spsw::WatermarkSequence::value)
      .def("hamming_distance", &spsw::WatermarkSequence::hamming_distance,
           py::arg("other"))
      .def("covers", &spsw::WatermarkSequence::covers, py::arg("other"))
      .def("__str__", &spsw::WatermarkSequence::to_string)
      .def("__repr__",
           [](const spsw::WatermarkSequence& w) {
             return "WatermarkSequence('" + w.to_string() + "')";
           })
      .def(py::self == py::self);

  py::class_<spsw::CodebookEntry>(m, "CodebookEntry")
      .def(py::init<>())
      .def_readwrite("user_id", &spsw::CodebookEntry::user_id)
      .def_readwrite("watermark", &spsw::CodebookEntry::watermark)
      .def(py::self == py::self);

  py::class_<spsw::Codebook>(m, "Codebook")
      .def(py::init<std::vector<spsw::CodebookEntry>>(), py::arg("entries"))
      .def("__len__", &spsw::Codebook::size)
      .def_property_readonly("entries", &spsw::Codebook::entries)
      .def("entry", &spsw::Codebook::entry, py::arg("i"))
      .def("find_user", &spsw::Codebook::find_user, py::arg("user_id"))
      .def("find_watermark", &spsw::Codebook::find_watermark, py::arg("w"))
      .def(py::self == py::self);

  m.def("watermark_length", &spsw::watermark_length, py::arg("user_count"));
  m.def("sparse_prefix", &spsw::sparse_prefix, py::arg("length"),
        py::arg("count"));
  m.def("sparse_order", &spsw::sparse_order, py::arg("length"));
  m.def("assign_codebook", &spsw::assign_codebook, py::arg("user_ids"),
        py::arg("length"));

  // ---- fake tuples ----
  py::class_<spsw::FakeTupleSet>(m, "FakeTupleSet")
      .def(py::init<>())
      .def_readwrite("schema", &spsw::FakeTupleSet::schema)
      .def_readwrite("match_subset", &spsw::FakeTupleSet::match_subset)
      .def_readwrite("groups", &spsw::FakeTupleSet::groups)
      .def("group_count", &spsw::FakeTupleSet::group_count)
      .def("group_size", &spsw::FakeTupleSet::group_size)
      .def("total", &spsw::FakeTupleSet::total)
      .def(py::self == py::self);

  m.def(
      "generate_fake_tuples",
      [](const spsw::Table& table, std::size_t group_count,
         std::size_t group_size, std::uint64_t seed,
         std::optional<std::size_t> pk_column,
         const std::optional<std::string>& endpoint, int timeout_ms,
         int max_retries) {
        spsw::GeneratorSpec spec;
        spec.seed = seed;
        spec.pk_column = pk_column;
        if (endpoint) {
          spec.kind = spsw::GeneratorSpec::Kind::external_service;
          spec.endpoint = *endpoint;
        }
        spec.timeout_ms = timeout_ms;
        spec.max_retries = max_retries;
        return spsw::generate_fake_tuples(table, group_count, group_size,
                                          spec);
      },
      py::arg("table"), py::arg("group_count"), py::arg("group_size"),
      py::kw_only(), py::arg("seed") = 0,
      py::arg("pk_column") = std::nullopt,
      py::arg("endpoint") = std::nullopt, py::arg("timeout_ms") = 5000,
      py::arg("max_retries") = 64,
      py::call_guard<py::gil_scoped_release>());

  // ---- metadata ----
  py::class_<spsw::SchemeParams>(m, "SchemeParams")
      .def(py::init<>())
      .def_readwrite("user_count", &spsw::SchemeParams::user_count)
      .def_readwrite("watermark_bits", &spsw::SchemeParams::watermark_bits)
      .def_readwrite("group_size", &spsw::SchemeParams::group_size)
      .def_readwrite("seed", &spsw::SchemeParams::seed)
      .def(py::self == py::self);

  py::class_<spsw::WatermarkMetadata>(m, "WatermarkMetadata")
      .def(py::init<>())
      .def_readwrite("params", &spsw::WatermarkMetadata::params)
      .def_readwrite("codebook", &spsw::WatermarkMetadata::codebook)
      .def_readwrite("fake_tuples", &spsw::WatermarkMetadata::fake_tuples)
      .def(py::self == py::self);

  m.def("validate_metadata", &spsw::validate_metadata, py::arg("meta"));
  m.def("metadata_to_json", &spsw::metadata_to_json, py::arg("meta"));
  m.def("metadata_from_json", &spsw::metadata_from_json, py::arg("text"));
  m.def("save_metadata", &spsw::save_metadata, py::arg("meta"),
        py::arg("path"));
  m.def("load_metadata", &spsw::load_metadata, py::arg("path"));

  // ---- watermark ----
  py::class_<spsw::Suspect>(m, "Suspect")
      .def_readonly("user_id", &spsw::Suspect::user_id)
      .def_readonly("distance", &spsw::Suspect::distance)
      .def("__repr__",
           [](const spsw::Suspect& s) {
             return "Suspect('" + s.user_id +
                    "', distance=" + std::to_string(s.distance) + ")";
           })
      .def(py::self == py::self);

  py::class_<spsw::ExtractionResult>(m, "ExtractionResult")
      .def_readonly("extracted", &spsw::ExtractionResult::extracted)
      .def_readonly("exact_match", &spsw::ExtractionResult::exact_match)
      .def_readonly("suspects", &spsw::ExtractionResult::suspects);

  m.def("embed", &spsw::embed, py::arg("table"), py::arg("watermark"),
        py::arg("fakes"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("embed_all", &spsw::embed_all, py::arg("table"), py::arg("codebook"),
        py::arg("fakes"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "extract",
      [](const spsw::Table& table, const spsw::FakeTupleSet& fakes) {
        return spsw::extract(table, fakes);
      },
      py::arg("table"), py::arg("fakes"),
      py::call_guard<py::gil_scoped_release>());
  m.def("identify", &spsw::identify, py::arg("extracted"),
        py::arg("codebook"));

  // ---- attacks ----
  m.def("deletion_count", &spsw::deletion_count, py::arg("n"),
        py::arg("ratio"));
  m.def(
      "delete_random",
      [](const spsw::Table& table, double p, std::uint64_t seed) {
        return spsw::delete_random(table, spsw::AttackSpec{p, seed});
      },
      py::arg("table"), py::arg("p"), py::arg("seed"),
      py::call_guard<py::gil_scoped_release>());
  m.def("complete_deletion_rate_mc", &spsw::complete_deletion_rate_mc,
        py::arg("n"), py::arg("x"), py::arg("d"), py::arg("trials"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("complete_deletion_rate_exact", &spsw::complete_deletion_rate_exact,
        py::arg("n"), py::arg("x"), py::arg("d"),
        py::call_guard<py::gil_scoped_release>());

  // ---- analytics ----
  m.def("binomial_coefficient", &spsw::binomial_coefficient, py::arg("n"),
        py::arg("k"));
  m.def("complete_deletion_probability",
        &spsw::complete_deletion_probability, py::arg("n"), py::arg("p"),
        py::arg("x"));
  m.def("complete_deletion_bound", &spsw::complete_deletion_bound,
        py::arg("p"), py::arg("x"));
  m.def("bit_survival_probability", &spsw::bit_survival_probability,
        py::arg("one_bit"), py::arg("p_cd"));
  m.def("watermark_survival_probability",
        &spsw::watermark_survival_probability, py::arg("p_cd"), py::arg("k"),
        py::arg("length"));
  m.def("ones_count_probability", &spsw::ones_count_probability,
        py::arg("length"), py::arg("k"));
  m.def("exact_extraction_rate_uniform", &spsw::exact_extraction_rate_uniform,
        py::arg("p_cd"), py::arg("length"));
  m.def("exact_extraction_rate_uniform_sum",
        &spsw::exact_extraction_rate_uniform_sum, py::arg("p_cd"),
        py::arg("length"));
  m.def("exact_extraction_rate_baseline",
        &spsw::exact_extraction_rate_baseline, py::arg("p_cd"),
        py::arg("length"));
  m.def("exact_extraction_rate_sparse", &spsw::exact_extraction_rate_sparse,
        py::arg("user_count"), py::arg("length"), py::arg("p_cd"));
  m.def("insertion_bound", &spsw::insertion_bound, py::arg("group_size"),
        py::arg("user_count"));
  m.def("expected_insertions", &spsw::expected_insertions,
        py::arg("codebook"), py::arg("group_size"));

  py::class_<spsw::TheoryPoint>(m, "TheoryPoint")
      .def_readonly("n", &spsw::TheoryPoint::n)
      .def_readonly("p", &spsw::TheoryPoint::p)
      .def_readonly("x", &spsw::TheoryPoint::x)
      .def_readonly("length", &spsw::TheoryPoint::length)
      .def_readonly("user_count", &spsw::TheoryPoint::user_count)
      .def_readonly("p_cd_exact", &spsw::TheoryPoint::p_cd_exact)
      .def_readonly("p_cd_approx", &spsw::TheoryPoint::p_cd_approx)
      .def_readonly("p1", &spsw::TheoryPoint::p1)
      .def_readonly("ep", &spsw::TheoryPoint::ep)
      .def_readonly("ep_baseline", &spsw::TheoryPoint::ep_baseline)
      .def_readonly("ep_sparse", &spsw::TheoryPoint::ep_sparse)
      .def_readonly("ni_bound", &spsw::TheoryPoint::ni_bound);

  m.def("evaluate_theory_point", &spsw::evaluate_theory_point, py::arg("n"),
        py::arg("p"), py::arg("x"), py::arg("length"), py::arg("user_count"));
  m.def("theory_csv", &spsw::theory_csv, py::arg("points"));

  // ---- baseline ----
  py::class_<spsw::BaselineParams>(m, "BaselineParams")
      .def(py::init<>())
      .def_readwrite("length", &spsw::BaselineParams::length)
      .def_readwrite("group_size", &spsw::BaselineParams::group_size)
      .def_readwrite("key", &spsw::BaselineParams::key);

  py::class_<spsw::TupleClass>(m, "TupleClass")
      .def_readonly("group", &spsw::TupleClass::group)
      .def_readonly("one", &spsw::TupleClass::one)
      .def(py::self == py::self);

  py::class_<spsw::BaselineState>(m, "BaselineState")
      .def(py::init<>())
      .def_readwrite("schema", &spsw::BaselineState::schema)
      .def_readwrite("match_subset", &spsw::BaselineState::match_subset)
      .def_readwrite("groups", &spsw::BaselineState::groups)
      .def(py::self == py::self);

  py::class_<spsw::BaselineEmbedResult>(m, "BaselineEmbedResult")
      .def_readonly("table", &spsw::BaselineEmbedResult::table)
      .def_readonly("state", &spsw::BaselineEmbedResult::state);

  m.def("classify", &spsw::classify, py::arg("tuple"), py::arg("params"),
        py::arg("match_subset"));
  m.def("baseline_embed", &spsw::baseline_embed, py::arg("table"),
        py::arg("w"), py::arg("params"), py::arg("seed"),
        py::arg("pk_column") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());
  m.def("baseline_extract", &spsw::baseline_extract, py::arg("table"),
        py::arg("state"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("baseline_wiped_groups", &spsw::baseline_wiped_groups,
        py::arg("table"), py::arg("state"));
  m.def("baseline_state_to_json", &spsw::baseline_state_to_json,
        py::arg("state"));
  m.def("baseline_state_from_json", &spsw::baseline_state_from_json,
        py::arg("text"));
  m.def("save_baseline_state", &spsw::save_baseline_state, py::arg("state"),
        py::arg("path"));
  m.def("load_baseline_state", &spsw::load_baseline_state, py::arg("path"));

  // ---- experiments ----
  py::class_<spsw::TrialRecord>(m, "TrialRecord")
      .def_readonly("scheme", &spsw::TrialRecord::scheme)
      .def_readonly("n", &spsw::TrialRecord::n)
      .def_readonly("n_u", &spsw::TrialRecord::n_u)
      .def_readonly("x", &spsw::TrialRecord::x)
      .def_readonly("p", &spsw::TrialRecord::p)
      .def_readonly("trial", &spsw::TrialRecord::trial)
      .def_readonly("seed", &spsw::TrialRecord::seed)
      .def_readonly("exact_match", &spsw::TrialRecord::exact_match)
      .def_readonly("bit_accuracy", &spsw::TrialRecord::bit_accuracy)
      .def_readonly("suspect_rank", &spsw::TrialRecord::suspect_rank)
      .def_readonly("embedded_ones", &spsw::TrialRecord::embedded_ones)
      .def_readonly("extracted_ones", &spsw::TrialRecord::extracted_ones)
      .def_readonly("wiped_groups", &spsw::TrialRecord::wiped_groups);

  py::class_<spsw::ExperimentGrid>(m, "ExperimentGrid")
      .def(py::init<>())
      .def_readwrite("x_values", &spsw::ExperimentGrid::x_values)
      .def_readwrite("p_values", &spsw::ExperimentGrid::p_values)
      .def_readwrite("n_u_values", &spsw::ExperimentGrid::n_u_values)
      .def_readwrite("trials", &spsw::ExperimentGrid::trials)
      .def_readwrite("base_seed", &spsw::ExperimentGrid::base_seed)
      .def_readwrite("pk_column", &spsw::ExperimentGrid::pk_column);

  py::class_<spsw::TransparencyPoint>(m, "TransparencyPoint")
      .def_readonly("n_u", &spsw::TransparencyPoint::n_u)
      .def_readonly("x", &spsw::TransparencyPoint::x)
      .def_readonly("length", &spsw::TransparencyPoint::length)
      .def_readonly("measured_ni", &spsw::TransparencyPoint::measured_ni)
      .def_readonly("ni_bound", &spsw::TransparencyPoint::ni_bound);

  m.def("trial_seed", &spsw::trial_seed, py::arg("base_seed"), py::arg("n_u"),
        py::arg("x"), py::arg("p"), py::arg("trial"));
  m.def("run_robustness", &spsw::run_robustness, py::arg("table"),
        py::arg("grid"), py::call_guard<py::gil_scoped_release>());
  m.def("run_transparency", &spsw::run_transparency, py::arg("n_u_values"),
        py::arg("x"));
  m.def("run_comparison", &spsw::run_comparison, py::arg("table"),
        py::arg("grid"), py::call_guard<py::gil_scoped_release>());
  m.def("records_to_csv", &spsw::records_to_csv, py::arg("records"));
  m.def("plot_data_csv", &spsw::plot_data_csv, py::arg("records"));
  m.def("transparency_to_csv", &spsw::transparency_to_csv, py::arg("points"));

  // ---- rng ----
  m.def("mix_seed", [](const std::vector<std::uint64_t>& parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t p : parts) h = spsw::splitmix64(h ^ p);
    return h;
  });
  m.def(
      "hash64",
      [](const std::string& data, std::uint64_t seed) {
        return spsw::hash64(data, seed);
      },
      py::arg("data"), py::arg("seed") = 0);
}
