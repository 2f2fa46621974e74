#pragma once

#include <string>

#include <json.hpp>

#include "cycletwist/cycle.hpp"
#include "cycletwist/graded_model.hpp"
#include "cycletwist/hom.hpp"
#include "cycletwist/kclass.hpp"
#include "cycletwist/reduce.hpp"
#include "cycletwist/sl2.hpp"
#include "cycletwist/string_sheaf.hpp"
#include "cycletwist/surface.hpp"
#include "cycletwist/twist.hpp"

namespace cycletwist::io {

using nlohmann::json;

// parse failures throw SchemaError

CycleConfig parse_cycle(const json& j);
StringSheaf parse_sheaf(const json& j, const CycleConfig& cycle);
// accepts a model array, a single atom object, or a bare sheaf (shift 0)
GradedModel parse_model(const json& j, const CycleConfig& cycle);
KClass parse_kclass(const json& j, const CycleConfig& cycle);
// sheaf object or {"mult": [...], "euler": e}
KClass parse_class_like(const json& j, const CycleConfig& cycle);
TwistGen parse_gen(const json& j, const CycleConfig& cycle);
TwistWord parse_word(const json& j, const CycleConfig& cycle);
SL2Matrix parse_matrix(const json& j);
SurfaceConfig parse_surface_config(const json& j);

json encode_cycle(const CycleConfig& cycle);
json encode_sheaf(const StringSheaf& s);
json encode_model(const GradedModel& m);
json encode_kclass(const KClass& k);
json encode_gen(const TwistGen& g);
json encode_word(const TwistWord& w);
json encode_homdims(const HomDims& d);
json encode_matrix(const SL2Matrix& m);
json encode_sl2_word(const SL2Word& w);
json encode_normal_form(const NormalForm& nf);
json encode_trace(const ReductionTrace& t);
json encode_pair_reduction(const PairReduction& p);
json encode_report(const AuteqReport& r);
json encode_diagnostics(const std::vector<Diagnostic>& d);

// strict parse of a JSON text (SchemaError on syntax errors)
json parse_text(const std::string& text);

}  // namespace cycletwist::io
