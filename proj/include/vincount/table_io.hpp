#pragma once
//
// JSON serialization of representation tables. Keys are emitted in
// lexicographic order and masses as decimal strings, so equal tables
// serialize identically byte for byte.

#include <string>

#include "vincount/rep_table.hpp"

namespace vincount {

std::string rep_table_to_json(const RepTable<Count>& t);
std::string rep_table_to_json(const RepTable<Rational>& t);

RepTable<Count> rep_table_from_json_count(const std::string& text);
RepTable<Rational> rep_table_from_json_rational(const std::string& text);

}  // namespace vincount
