/*
 * Copyright 2026 The stpbn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "stpbn/bcn.hpp"
#include "stpbn/bn.hpp"
#include "stpbn/dual.hpp"
#include "stpbn/logical_matrix.hpp"
#include "stpbn/structure_vector.hpp"

namespace stpbn {

using Json = nlohmann::ordered_json;

/// {"rows":m,"cols":n,"delta":[i1,...,in]}, 1-based as in δ_m[i1,...,in].
Json to_json(const LogicalMatrix& m);
LogicalMatrix matrix_from_json(const Json& j);

/// {"k":k,"n":n,"digits":[...]}
Json to_json(const StructureVector& v);
StructureVector vector_from_json(const Json& j);

Json to_json(const AttractorReport& r);
Json to_json(const CanonicalForm& c);
Json to_json(const DualOrbit& o);
Json to_json(const DualAttractorReport& r);
Json to_json(const BnRealization& r);
Json to_json(const CisResult& r);
Json to_json(const BcnRealization& r);

/// δ_4[2,3,2,4]
std::string format_delta(const LogicalMatrix& m);
/// (1,0,1,1)
std::string format_digits(const StructureVector& v);

/// Inline matrix "rows:cols:i1,i2,...".
LogicalMatrix parse_delta_string(std::string_view text);
/// Digit string such as "1010" or "1,0,1,0", length a power of k.
StructureVector parse_digits(std::string_view text, unsigned k);

/// One node per state labelled δ_N^j, one edge per column.
std::string state_graph_dot(const LogicalMatrix& m);
/// Dual transition graph; nodes labelled by structure-vector tuples.
std::string dual_graph_dot(const LogicalMatrix& dual, unsigned k, unsigned n);

}  // namespace stpbn
