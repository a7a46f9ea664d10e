#ifndef HMF_CONFIG_HPP
#define HMF_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "hmf/qexp.hpp"

namespace hmf::config {

using nlohmann::json;

// "a" or "a/b", also plain JSON integers
intmat::Rat parse_rat(const json& j);
std::string rat_to_string(const intmat::Rat& r);
int64_t parse_int(const json& j);
intmat::Vec parse_vec(const json& j);
json vec_to_json(const intmat::Vec& v);

shape::ShapePtr load_shape(const json& j);
gf::ContextPtr load_field(const json& j);
expo::ModelPtr load_model(const json& j, shape::ShapePtr s,
                          gf::ContextPtr field);

struct LoadedModel {
  shape::ShapePtr shape;
  gf::ContextPtr field;
  expo::ModelPtr model;
};

// {"shape": ..., "field": ..., "model": ...}
LoadedModel load_combined(const json& j);

qexp::QExpansion load_qexp(const json& j, const LoadedModel& lm);
json save_qexp(const qexp::QExpansion& f);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace hmf::config

#endif
