#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hbs/boundary.hpp"

namespace hbs {

/**
 * Minimal JSON document builder with deterministic output: keys keep
 * insertion order and every floating-point number is printed with 17
 * significant digits (round-trip exact, locale-independent).
 */
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue object();
  static JsonValue array();
  static JsonValue number(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool v);
  static JsonValue string(std::string v);
  static JsonValue complex(cx v);  // [re, im]
  static JsonValue complex_list(const std::vector<cx>& v);
  static JsonValue poly(const Poly& p);          // {"coeffs": [[re,im],...]}
  static JsonValue analytic(const AnalyticFn& f);  // {"taylor": ..., "tailMass": ...}
  static JsonValue spec(const FunctionSpec& s);

  JsonValue& set(const std::string& key, JsonValue v);
  JsonValue& push(JsonValue v);

  std::string dump() const;

 private:
  enum class Kind { Null, Object, Array, Number, Integer, Bool, String };
  Kind kind_;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> items_;
  void write(std::string& out) const;
};

/// Format one double with 17 significant digits (shared with JsonValue).
std::string format_double(double v);

// Parsing (raw JSON text -> domain types).  All failures surface as
// Error(InvalidInput, ...).
struct ParsedJson;
class JsonDoc {
 public:
  static JsonDoc parse(const std::string& text);
  ~JsonDoc();
  JsonDoc(JsonDoc&&) noexcept;
  JsonDoc& operator=(JsonDoc&&) noexcept;

  bool has(const std::string& key) const;
  JsonDoc at(const std::string& key) const;
  double as_number() const;
  long long as_integer() const;
  bool as_bool() const;
  std::string as_string() const;
  cx as_complex() const;
  Poly as_poly() const;
  FunctionSpec as_spec() const;
  RationalFn as_rational() const;
  std::vector<cx> as_complex_list() const;

 private:
  JsonDoc();
  std::shared_ptr<ParsedJson> root_;
  const void* node_ = nullptr;
};

}  // namespace hbs
