#pragma once

#include "qcs/classset.hpp"

#include <json.hpp>

namespace qcs {

using json = nlohmann::json;

json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j);
json lattice_to_json(const ZLat& L);
ZLat lattice_from_json(const json& j, int dim);

json field_to_json(const Field& F);
Field field_from_json(const json& j);  // verifies all invariants
FieldPtr load_field(const std::string& path);

// Factored ideal from a string of items "q[@i][^e]" joined by '*' or ',', where q is a prime norm and i
// selects among the primes of that norm (sorted). A bare integer is split into prime norms, taking the
// first primes of each norm.
Factored parse_factored(const Field& F, const std::string& s);
std::string factored_to_string(const Field& F, const Factored& a);
Int factored_norm(const Factored& a);

// Algebra {"a", "b", "ram", "ram_inf"}; order {"algebra", "order"}; right ideal adds "ideal".
json algebra_to_json(const QuatAlgebra& A);
QuatPtr algebra_from_json(FieldPtr F, const json& j);
json order_to_json(const Order& O);
OrderPtr order_from_json(FieldPtr F, const json& j);
json ideal_to_json(const RightIdeal& I);
RightIdeal ideal_from_json(FieldPtr F, const json& j);
json read_json(const std::string& path);

json class_set_to_json(const ClassSetResult& R, const std::string& emit);
std::string class_set_to_csv(const ClassSetResult& R);

void write_text(const std::string& path, const std::string& text);

}  // namespace qcs
