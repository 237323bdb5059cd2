#pragma once
#include <string>

#include "gencop/pipeline.hpp"
#include "gencop/selector.hpp"

namespace gencop {

// two-column curve files, strictly grid-ordered; round-trips exactly
void write_curve_csv(const std::string& path, const Curve& c,
                     const std::string& value_name = "value");
Curve read_curve_csv(const std::string& path);

std::string pipeline_to_json(const PipelineResult& r);
std::string selection_to_json(const SelectionReport& r);
std::string selection_table(const SelectionReport& r);  // fixed-column text summary

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gencop
