#include "vincount/table_io.hpp"

#include <json.hpp>

namespace vincount {

namespace {

using nlohmann::ordered_json;

template <class Scalar>
ordered_json table_json(const RepTable<Scalar>& t, const char* mode,
                        std::string (*mass_str)(const Scalar&)) {
  ordered_json j;
  j["k"] = t.degree();
  j["t"] = t.tuple_length();
  j["domain"] = std::vector<Int>(t.domain().elements().begin(), t.domain().elements().end());
  j["weight_mode"] = mode;
  ordered_json entries = ordered_json::array();
  for (const auto& [v, c] : t.sorted_entries()) {
    ordered_json e;
    e["v"] = v;
    e["mass"] = mass_str(c);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

template <class Scalar>
RepTable<Scalar> table_from_json(const std::string& text, const char* mode,
                                 Scalar (*mass_parse)(const std::string&)) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("weight_mode").get<std::string>() != mode)
    throw std::invalid_argument("rep table: unexpected weight mode " +
                                j.at("weight_mode").get<std::string>());
  const int k = j.at("k").get<int>();
  const int t = j.at("t").get<int>();
  IntSet domain(j.at("domain").get<std::vector<Int>>());
  RepTable<Scalar> out(k, t, domain);
  for (const auto& e : j.at("entries")) {
    PowerSumVector v = e.at("v").get<PowerSumVector>();
    if (v.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("rep table: key length must equal k");
    Scalar mass = mass_parse(e.at("mass").get<std::string>());
    if (mass <= 0) throw std::invalid_argument("rep table: masses must be positive");
    if (out.at(v) != 0) throw std::invalid_argument("rep table: duplicate key");
    out.add(std::move(v), mass);
  }
  return out;
}

std::string count_str(const Count& c) { return c.str(); }
std::string rational_str(const Rational& r) { return r.str(); }
Count count_parse(const std::string& s) { return Count(s); }
Rational rational_parse(const std::string& s) { return Rational(s); }

}  // namespace

std::string rep_table_to_json(const RepTable<Count>& t) {
  return table_json<Count>(t, "count", count_str).dump(2);
}

std::string rep_table_to_json(const RepTable<Rational>& t) {
  return table_json<Rational>(t, "rational", rational_str).dump(2);
}

RepTable<Count> rep_table_from_json_count(const std::string& text) {
  return table_from_json<Count>(text, "count", count_parse);
}

RepTable<Rational> rep_table_from_json_rational(const std::string& text) {
  return table_from_json<Rational>(text, "rational", rational_parse);
}

}  // namespace vincount
