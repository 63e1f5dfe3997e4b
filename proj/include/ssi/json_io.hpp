#pragma once

#include <json.hpp>

#include "ssi/interp.hpp"

namespace ssi {

using Json = nlohmann::ordered_json;

// Norm descriptors: {"kind":"weighted_lp","p":2.0,"weights":[...]}, "p":"inf"
// for p = ∞.
Json to_json(const NormedSpace& s);
NormedSpace normed_space_from_json(const Json& j);

Json to_json(const Couple& c);
Couple couple_from_json(const Json& j);

// Tagged structure descriptors mirroring the variant list.
Json to_json(const SeqStructSpec& s);
SeqStructSpec struct_from_json(const Json& j);

// {"dim":n,"entries":[{"k":-1,"re":[...],"im":[...]}, ...]}
Json to_json(const SparseSeq& s);
SparseSeq seq_from_json(const Json& j);

Json to_json(const SolverConfig& c);
SolverConfig solver_from_json(const Json& j);

// Problem files, schema v1. Unknown fields are rejected to catch typos.
Json to_json(const InterpProblem& p);
InterpProblem problem_from_json(const Json& j);

CVec cvec_from_json(const Json& j);
Json cvec_to_json(const CVec& v);

Json solution_to_json(const InterpSolution& s);

}  // namespace ssi
