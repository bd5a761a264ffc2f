#include "statpipe/pipeline_file.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace statpipe {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
  throw ParseError(path + ": " + what);
}

const json &require_key(const json &obj, const std::string &path, const std::string &key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double require_number(const json &obj, const std::string &path, const std::string &key) {
  const json &v = require_key(obj, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string element_path(const std::string &base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

GateInstance parse_gate(const json &j, const std::string &path) {
  GateInstance g;
  g.p = require_number(j, path, "p");
  g.q = require_number(j, path, "q");
  g.area_coefficient = require_number(j, path, "area_coefficient");
  g.x = require_number(j, path, "x");
  g.min_size = require_number(j, path, "L");
  g.max_size = require_number(j, path, "U");
  try {
    g.validate();
  } catch (const std::invalid_argument &e) {
    fail(path, e.what());
  }
  return g;
}

StageModel parse_stage(const json &j, const std::string &path) {
  StageModel s;
  s.position = require_number(j, path, "position");
  s.latch_overhead = require_number(j, path, "latch_overhead");
  const json &gates = require_key(j, path, "gates");
  if (!gates.is_array() || gates.empty())
    fail(path + ".gates", "expected a non-empty array");
  for (std::size_t i = 0; i < gates.size(); ++i)
    s.gates.push_back(parse_gate(gates[i], element_path(path + ".gates", i)));
  try {
    s.validate();
  } catch (const std::invalid_argument &e) {
    fail(path, e.what());
  }
  return s;
}

}  // namespace

PipelineModel parse_pipeline(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  const json &version = require_key(doc, "document", "schema_version");
  if (!version.is_string() || version.get<std::string>() != "1")
    fail("schema_version", "unsupported value (expected \"1\")");

  PipelineModel m;
  const json &variation = require_key(doc, "document", "variation");
  m.variation.inter_die_fraction = require_number(variation, "variation", "inter_die_fraction");
  m.variation.systematic_fraction =
      require_number(variation, "variation", "systematic_fraction");
  m.variation.random_fraction = require_number(variation, "variation", "random_fraction");
  m.variation.total_sigma_ratio = require_number(variation, "variation", "total_sigma_ratio");
  m.variation.spatial_corr_length =
      require_number(variation, "variation", "spatial_corr_length");
  try {
    m.variation.validate();
  } catch (const std::invalid_argument &e) {
    fail("variation", e.what());
  }

  const json &stages = require_key(doc, "document", "stages");
  if (!stages.is_array() || stages.empty()) fail("stages", "expected a non-empty array");
  for (std::size_t i = 0; i < stages.size(); ++i)
    m.stages.push_back(parse_stage(stages[i], element_path("stages", i)));

  if (const auto it = doc.find("correlation_matrix"); it != doc.end()) {
    const json &corr = *it;
    if (!corr.is_array()) fail("correlation_matrix", "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      const std::string row_path = element_path("correlation_matrix", i);
      if (!corr[i].is_array()) fail(row_path, "expected an array");
      std::vector<double> row;
      for (std::size_t j = 0; j < corr[i].size(); ++j) {
        if (!corr[i][j].is_number()) fail(element_path(row_path, j), "expected a number");
        row.push_back(corr[i][j].get<double>());
      }
      rows.push_back(std::move(row));
    }
    try {
      m.correlation_override = CorrelationMatrix::from_rows(rows);
    } catch (const std::invalid_argument &e) {
      fail("correlation_matrix", e.what());
    }
  }

  try {
    m.validate();
  } catch (const std::invalid_argument &e) {
    fail("document", e.what());
  }
  return m;
}

PipelineModel load_pipeline_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pipeline(buf.str());
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_pipeline(const PipelineModel &m) {
  ordered_json doc;
  doc["schema_version"] = "1";
  doc["variation"] = {{"inter_die_fraction", m.variation.inter_die_fraction},
                      {"systematic_fraction", m.variation.systematic_fraction},
                      {"random_fraction", m.variation.random_fraction},
                      {"total_sigma_ratio", m.variation.total_sigma_ratio},
                      {"spatial_corr_length", m.variation.spatial_corr_length}};
  doc["stages"] = ordered_json::array();
  for (const StageModel &s : m.stages) {
    ordered_json stage;
    stage["position"] = s.position;
    stage["latch_overhead"] = s.latch_overhead;
    stage["gates"] = ordered_json::array();
    for (const GateInstance &g : s.gates)
      stage["gates"].push_back({{"p", g.p},
                                {"q", g.q},
                                {"area_coefficient", g.area_coefficient},
                                {"x", g.x},
                                {"L", g.min_size},
                                {"U", g.max_size}});
    doc["stages"].push_back(std::move(stage));
  }
  if (m.correlation_override) {
    ordered_json corr = ordered_json::array();
    const CorrelationMatrix &c = *m.correlation_override;
    for (std::size_t i = 0; i < c.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < c.size(); ++j) row.push_back(c(i, j));
      corr.push_back(std::move(row));
    }
    doc["correlation_matrix"] = std::move(corr);
  }
  return doc.dump(2) + "\n";
}

void save_pipeline_file(const PipelineModel &m, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << serialize_pipeline(m);
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace statpipe
