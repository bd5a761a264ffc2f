// JSON pipeline description files: parse, validate, serialize.
#pragma once

#include <stdexcept>
#include <string>

#include "statpipe/variation.hpp"

namespace statpipe {

// Parse or validation failure; the message names the offending field path
// (e.g. "stages[2].gates[0].q").
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts schema_version "1" documents:
// {
//   "schema_version": "1",
//   "variation": { "inter_die_fraction": .., "systematic_fraction": ..,
//                  "random_fraction": .., "total_sigma_ratio": ..,
//                  "spatial_corr_length": .. },
//   "stages": [ { "position": .., "latch_overhead": ..,
//                 "gates": [ { "p": .., "q": .., "area_coefficient": ..,
//                              "x": .., "L": .., "U": .. } ] } ],
//   "correlation_matrix": [[..]]   // optional explicit override
// }
PipelineModel parse_pipeline(const std::string &text);

PipelineModel load_pipeline_file(const std::string &path);

// Round-trip stable: parse(serialize_pipeline(m)) reproduces m exactly.
std::string serialize_pipeline(const PipelineModel &m);

void save_pipeline_file(const PipelineModel &m, const std::string &path);

}  // namespace statpipe
