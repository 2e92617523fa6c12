#include "hbs/json_io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace hbs {

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

std::string format_double(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "non-finite number in output");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}
JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}
JsonValue JsonValue::number(double d) {
  JsonValue v;
  v.kind_ = Kind::Number;
  v.num_ = d;
  return v;
}
JsonValue JsonValue::integer(long long i) {
  JsonValue v;
  v.kind_ = Kind::Integer;
  v.int_ = i;
  return v;
}
JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}
JsonValue JsonValue::string(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.str_ = std::move(s);
  return v;
}

JsonValue JsonValue::complex(cx z) {
  JsonValue v = array();
  v.push(number(z.real()));
  v.push(number(z.imag()));
  return v;
}

JsonValue JsonValue::complex_list(const std::vector<cx>& list) {
  JsonValue v = array();
  for (const auto& z : list) v.push(complex(z));
  return v;
}

JsonValue JsonValue::poly(const Poly& p) {
  JsonValue v = object();
  v.set("coeffs", complex_list(p.coeffs()));
  return v;
}

JsonValue JsonValue::analytic(const AnalyticFn& f) {
  JsonValue v = object();
  // Trailing exact zeros carry no information; trimming keeps outputs stable
  // across grid sizes for polynomial data.
  std::vector<cx> t = f.taylor;
  while (!t.empty() && t.back() == cx(0.0)) t.pop_back();
  v.set("taylor", complex_list(t));
  v.set("tailMass", number(f.tail_mass));
  return v;
}

JsonValue JsonValue::spec(const FunctionSpec& s) {
  JsonValue v = object();
  switch (s.type) {
    case FunctionSpec::Type::Rational:
      v.set("type", string("rational"));
      v.set("num", poly(s.rational.num));
      v.set("den", poly(s.rational.den));
      break;
    case FunctionSpec::Type::Taylor:
      v.set("type", string("taylor"));
      v.set("coeffs", complex_list(s.taylor));
      break;
    case FunctionSpec::Type::Samples:
      v.set("type", string("samples"));
      v.set("n", integer(s.samples_n));
      v.set("values", complex_list(s.samples));
      break;
  }
  return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

void JsonValue::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null:
      out += "null";
      break;
    case Kind::Number:
      out += format_double(num_);
      break;
    case Kind::Integer:
      out += std::to_string(int_);
      break;
    case Kind::Bool:
      out += bool_ ? "true" : "false";
      break;
    case Kind::String: {
      out += '"';
      for (char c : str_) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          case '\r': out += "\\r"; break;
          default:
            if (static_cast<unsigned char>(c) < 0x20) {
              char buf[8];
              std::snprintf(buf, sizeof(buf), "\\u%04x", c);
              out += buf;
            } else {
              out += c;
            }
        }
      }
      out += '"';
      break;
    }
    case Kind::Object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : members_) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += k;
        out += "\":";
        v.write(out);
      }
      out += '}';
      break;
    }
    case Kind::Array: {
      out += '[';
      bool first = true;
      for (const auto& v : items_) {
        if (!first) out += ',';
        first = false;
        v.write(out);
      }
      out += ']';
      break;
    }
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ParsedJson {
  nlohmann::json data;
};

JsonDoc::JsonDoc() = default;
JsonDoc::~JsonDoc() = default;
JsonDoc::JsonDoc(JsonDoc&&) noexcept = default;
JsonDoc& JsonDoc::operator=(JsonDoc&&) noexcept = default;

JsonDoc JsonDoc::parse(const std::string& text) {
  JsonDoc doc;
  doc.root_ = std::make_shared<ParsedJson>();
  try {
    doc.root_->data = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  doc.node_ = &doc.root_->data;
  return doc;
}

namespace {
const nlohmann::json& node_of(const void* p) { return *static_cast<const nlohmann::json*>(p); }
}  // namespace

bool JsonDoc::has(const std::string& key) const {
  const auto& n = node_of(node_);
  return n.is_object() && n.contains(key);
}

JsonDoc JsonDoc::at(const std::string& key) const {
  const auto& n = node_of(node_);
  if (!n.is_object() || !n.contains(key))
    fail(ErrorKind::InvalidInput, "missing field \"" + key + "\"");
  JsonDoc doc;
  doc.root_ = root_;
  doc.node_ = &n.at(key);
  return doc;
}

double JsonDoc::as_number() const {
  const auto& n = node_of(node_);
  if (!n.is_number()) fail(ErrorKind::InvalidInput, "expected a number");
  return n.get<double>();
}

long long JsonDoc::as_integer() const {
  const auto& n = node_of(node_);
  if (!n.is_number_integer()) fail(ErrorKind::InvalidInput, "expected an integer");
  return n.get<long long>();
}

bool JsonDoc::as_bool() const {
  const auto& n = node_of(node_);
  if (!n.is_boolean()) fail(ErrorKind::InvalidInput, "expected a boolean");
  return n.get<bool>();
}

std::string JsonDoc::as_string() const {
  const auto& n = node_of(node_);
  if (!n.is_string()) fail(ErrorKind::InvalidInput, "expected a string");
  return n.get<std::string>();
}

cx JsonDoc::as_complex() const {
  const auto& n = node_of(node_);
  if (!n.is_array() || n.size() != 2 || !n[0].is_number() || !n[1].is_number())
    fail(ErrorKind::InvalidInput, "complex numbers are [re, im] arrays");
  return cx(n[0].get<double>(), n[1].get<double>());
}

std::vector<cx> JsonDoc::as_complex_list() const {
  const auto& n = node_of(node_);
  if (!n.is_array()) fail(ErrorKind::InvalidInput, "expected an array of [re, im] pairs");
  std::vector<cx> out;
  out.reserve(n.size());
  for (const auto& item : n) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
      fail(ErrorKind::InvalidInput, "complex numbers are [re, im] arrays");
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

Poly JsonDoc::as_poly() const {
  return Poly(at("coeffs").as_complex_list());
}

RationalFn JsonDoc::as_rational() const {
  FunctionSpec s = as_spec();
  if (s.type != FunctionSpec::Type::Rational)
    fail(ErrorKind::InvalidInput, "expected a rational function-spec");
  return s.rational;
}

FunctionSpec JsonDoc::as_spec() const {
  std::string type = at("type").as_string();
  if (type == "rational") {
    return FunctionSpec::make_rational(at("num").as_poly(), at("den").as_poly());
  }
  if (type == "taylor") {
    return FunctionSpec::make_taylor(at("coeffs").as_complex_list());
  }
  if (type == "samples") {
    int n = static_cast<int>(at("n").as_integer());
    return FunctionSpec::make_samples(n, at("values").as_complex_list());
  }
  fail(ErrorKind::InvalidInput, "unknown function-spec type \"" + type + "\"");
}

}  // namespace hbs
