#pragma once

#include <string>

#include "json.hpp"
#include "loewner/classify.hpp"
#include "loewner/funexpr.hpp"
#include "loewner/matcalc.hpp"
#include "loewner/measure_types.hpp"
#include "loewner/processes.hpp"

namespace loewner {

using Json = nlohmann::ordered_json;

/// Parses JSON text; ParseError reports the byte offset.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const Interval& i);
Interval interval_from_json(const Json& j);

Json to_json(const FunctionExpr& f);
FunctionExpr function_from_json(const Json& j);

// Measure JSON: {"type", "a", "b", "c", "x0", "atoms_plus", "atoms_minus", "interval"}.
// OM representations list all atoms; those right of the interval go to
// atoms_plus.
Json to_json(const OMRep& rep);
Json to_json(const OCRep& rep);
Json to_json(const SOCRep& rep);
OMRep om_rep_from_json(const Json& j);
OCRep oc_rep_from_json(const Json& j);
SOCRep soc_rep_from_json(const Json& j);

/// Row-major array of rows of [re, im] pairs.
Json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);
Json to_json(const HermitianMatrix& h);
HermitianMatrix hermitian_from_json(const Json& j);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json to_json(const Classification& c);

Json to_json(const CertifyConfig& cfg);
/// Applies the keys present in `j` on top of `base`.
CertifyConfig config_from_json(const Json& j, CertifyConfig base = {});

Json to_json(const Stage& s);
Json to_json(const PipelineRun& run);

}  // namespace loewner
