#include "vmf/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

using nlohmann::json;

json laurent_array(const LaurentPoly& p, int k) {
  json arr = json::array();
  for (int j = -k; j <= k; ++j) arr.push_back(p[j]);
  return arr;
}

json rational_json(const RationalTF& tf) {
  const int k = std::max(tf.num.half_order(), tf.den.half_order());
  return json{{"k", k}, {"num", laurent_array(tf.num, k)}, {"den", laurent_array(tf.den, k)}};
}

std::vector<double> doubles(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_array())
    throw ValidationError(std::string("coefficient file lacks array '") + field + "'");
  std::vector<double> out;
  for (const auto& v : j.at(field)) {
    if (!v.is_number()) throw ValidationError(std::string("non-numeric entry in '") + field + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

Parity parse_parity(const json& j) {
  if (!j.contains("parity")) return Parity::symmetric;
  const auto s = j.at("parity").get<std::string>();
  if (s == "sym") return Parity::symmetric;
  if (s == "anti") return Parity::antisymmetric;
  throw ValidationError("parity must be \"sym\" or \"anti\", got \"" + s + "\"");
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

LaurentPoly laurent_field(const json& j, const char* field) {
  auto v = doubles(j, field);
  if (v.size() % 2 == 0) throw ValidationError(std::string("'") + field + "' needs 2K+1 entries");
  return LaurentPoly(std::move(v));
}

}  // namespace

std::string to_json(const LaurentPoly& p) {
  return json{{"k", p.half_order()}, {"coeffs", p.coeffs()}}.dump();
}

std::string to_json(const RationalTF& tf) { return rational_json(tf).dump(); }

std::string to_json(const ThreePartIIR& f) {
  json j{{"kind", "iir"},
         {"b_plus", f.b_plus},
         {"a_plus", f.a_plus},
         {"b_zero", f.b_zero},
         {"parity", to_string(f.parity)}};
  return j.dump();
}

std::string to_json(const FirKernel& k) {
  json j = rational_json(k.to_rational());
  j["kind"] = "fir";
  j["taps"] = k.taps;
  j["parity"] = to_string(k.parity);
  j["d"] = k.derivative_order;
  return j.dump();
}

std::string to_json(const Filter1D& f) {
  return std::visit([](const auto& v) { return to_json(v); }, f);
}

LaurentPoly laurent_from_json(const std::string& text) {
  const json j = parse(text);
  return laurent_field(j, "coeffs");
}

RationalTF rational_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("b_plus")) return std::get<ThreePartIIR>(filter_from_json(text)).to_rational();
  if (j.contains("taps")) return std::get<FirKernel>(filter_from_json(text)).to_rational();
  return {laurent_field(j, "num"), laurent_field(j, "den")};
}

Filter1D filter_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw ValidationError("coefficient file must hold a JSON object");
  if (j.contains("b_plus")) {
    ThreePartIIR f;
    f.b_plus = doubles(j, "b_plus");
    f.a_plus = doubles(j, "a_plus");
    if (f.b_plus.size() != f.a_plus.size()) throw ValidationError("b_plus and a_plus must have equal length");
    if (!j.contains("b_zero") || !j.at("b_zero").is_number()) throw ValidationError("coefficient file lacks 'b_zero'");
    f.b_zero = j.at("b_zero").get<double>();
    f.parity = parse_parity(j);
    if (f.parity == Parity::antisymmetric && f.b_zero != 0.0)
      throw ValidationError("antisymmetric filter must have b_zero = 0");
    return f;
  }
  if (j.contains("taps")) {
    const int d = j.contains("d") ? j.at("d").get<int>() : 0;
    return FirKernel(doubles(j, "taps"), parse_parity(j), d);
  }
  const RationalTF tf{laurent_field(j, "num"), laurent_field(j, "den")};
  const LaurentPoly den = tf.den.trimmed();
  const Parity parity = tf.num.is_antisymmetric(1e-12) ? Parity::antisymmetric : Parity::symmetric;
  if (den.half_order() == 0) {
    if (den[0] == 0.0) throw ValidationError("denominator is zero");
    const LaurentPoly num = tf.num * (1.0 / den[0]);
    std::vector<double> taps(num.coeffs().rbegin(), num.coeffs().rend());
    return FirKernel(std::move(taps), parity, 0);
  }
  return three_part_decompose(tf, parity);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace vmf
